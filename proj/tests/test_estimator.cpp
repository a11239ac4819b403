#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "sawlab/errors.hpp"
#include "sawlab/estimator.hpp"
#include "sawlab/families.hpp"
#include "support.hpp"

using namespace sawlab;

namespace {

std::vector<SawCountSeries> series_per_rep(const GraphRule& rule, int n) {
  std::vector<SawCountSeries> out;
  for (const auto& v : rule.orbit_reps()) out.push_back(count_saws(rule, v, n));
  return out;
}

GrowthEstimate grow(const std::string& family, int n, EstimateMethod m = EstimateMethod::RatioExtrapolation) {
  const auto rule = parse_family(family);
  return estimate_growth(*rule, series_per_rep(*rule, n), m);
}

// Same graphs, exact values computed here from their defining formulas.
double golden() { return (1.0 + std::sqrt(5.0)) / 2.0; }
double honeycomb() { return std::sqrt(2.0 + std::sqrt(2.0)); }

}  // namespace

TEST(ExactTargets, KnownConstants) {
  EXPECT_NEAR(exact_target(make_ladder()->spec())->mu_exact, golden(), 1e-12);
  EXPECT_NEAR(exact_target(make_hexagonal()->spec())->mu_exact, honeycomb(), 1e-12);
  for (int d = 2; d <= 6; ++d) EXPECT_NEAR(exact_target(make_loop(d)->spec())->mu_exact, std::sqrt(d - 1.0), 1e-12);
  EXPECT_NEAR(exact_target(make_tree(5)->spec())->mu_exact, 4.0, 1e-12);
  EXPECT_FALSE(exact_target(make_decorated_line3()->spec()).has_value() &&
               exact_target(make_decorated_line3()->spec())->mu_exact > 1.0);
}

TEST(Fekete, EnvelopeIsNonIncreasingAndAboveExact) {
  for (const std::string name : {"ladder", "hex", "loop:3", "loop:5", "tree:3"}) {
    SCOPED_TRACE(name);
    const auto rule = parse_family(name);
    const auto g = fekete_bounds(*rule, series_per_rep(*rule, name == "tree:3" ? 12 : 20));
    const double mu = exact_target(rule->spec())->mu_exact;
    for (std::size_t n = 2; n < g.fekete_upper.size(); ++n) {
      EXPECT_LE(g.fekete_upper[n], g.fekete_upper[n - 1]);
      EXPECT_LE(g.fekete_upper[n], g.fekete_raw[n]);
    }
    for (std::size_t n = 1; n < g.fekete_upper.size(); ++n) EXPECT_GE(g.fekete_upper[n], mu - 1e-12);
  }
}

TEST(Fekete, SupCountsDominateExactPowers) {
  for (const std::string name : {"ladder", "hex", "loop:4", "tree:4"}) {
    SCOPED_TRACE(name);
    const auto rule = parse_family(name);
    const int n_max = name == "tree:4" ? 10 : 20;
    const auto g = fekete_bounds(*rule, series_per_rep(*rule, n_max));
    const double mu = exact_target(rule->spec())->mu_exact;
    for (int n = 1; n <= n_max; ++n) {
      const Count floor_pow(static_cast<unsigned long long>(std::floor(std::pow(mu, n) * (1 - 1e-12))));
      EXPECT_GE(g.sup_counts[n], floor_pow) << "n=" << n;
    }
  }
}

TEST(Fekete, SupIsTakenOverRepresentatives) {
  const auto rule = make_decorated_line3();
  const auto per = series_per_rep(*rule, 12);
  const auto g = fekete_bounds(*rule, per);
  for (int n = 0; n <= 12; ++n) {
    Count best = 0;
    for (const auto& s : per) best = std::max(best, s.counts[n]);
    EXPECT_EQ(g.sup_counts[n], best);
  }
}

TEST(Fekete, RejectsMismatchedInput) {
  const auto rule = make_decorated_line3();
  auto per = series_per_rep(*rule, 10);
  per.pop_back();
  EXPECT_THROW(fekete_bounds(*rule, per), PreconditionError);
  const auto ladder = make_ladder();
  EXPECT_THROW(fekete_bounds(*ladder, series_per_rep(*ladder, 1)), PreconditionError);
}

TEST(Estimate, LoopGraphsHitSqrtDeltaMinusOne) {
  for (int d = 2; d <= 6; ++d) {
    const auto g = grow("loop:" + std::to_string(d), 30);
    ASSERT_TRUE(g.mu_hat());
    EXPECT_NEAR(*g.mu_hat(), std::sqrt(d - 1.0), 1e-3) << d;
  }
}

TEST(Estimate, LadderAtThirty) {
  const auto g = grow("ladder", 30);
  EXPECT_NEAR(*g.mu_hat(), golden(), 5e-3);
  EXPECT_FALSE(g.methods_disagree);
  ASSERT_TRUE(g.cross_check);
  EXPECT_EQ(g.cross_check->method, EstimateMethod::LogFit);
}

TEST(Estimate, HexagonalAtTwenty) {
  const auto g = grow("hex", 20);
  EXPECT_NEAR(*g.mu_hat(), honeycomb(), 2e-2);
  EXPECT_GE(g.envelope(), honeycomb());
}

TEST(Estimate, DecoratedLinesGrowSubexponentially) {
  for (const std::string name : {"decor3", "decor4"}) {
    const auto g = grow(name, 40);
    EXPECT_LE(*g.mu_hat(), 1.1) << name;
  }
}

TEST(Estimate, InterpolationDecreasesInSegmentLength) {
  for (int d : {3, 4}) {
    double prev = 1e9;
    for (int ell = 1; ell <= 3; ++ell) {
      const int n = ell == 1 ? 12 : 24;
      const auto g = grow("interp:" + std::to_string(d) + ":" + std::to_string(ell), n);
      const double mu = *g.mu_hat();
      EXPECT_LE(mu, prev + 1e-9) << d << ":" << ell;
      EXPECT_GE(mu, std::sqrt(d - 1.0) - 1e-2);
      EXPECT_LE(mu, d - 1.0 + 1e-9);
      EXPECT_NEAR(mu, std::pow(d - 1.0, ell / (2.0 * ell - 1.0)), 1e-2);
      prev = mu;
    }
  }
}

TEST(Estimate, LogFitAgreesOnLoopGraphs) {
  const auto g = grow("loop:4", 30, EstimateMethod::LogFit);
  EXPECT_EQ(g.fit->method, EstimateMethod::LogFit);
  EXPECT_NEAR(*g.mu_hat(), std::sqrt(3.0), 1e-2);
}

TEST(Estimate, RejectsShortOrTruncatedSeries) {
  const auto rule = make_ladder();
  const auto v = rule->orbit_reps().front();
  EXPECT_THROW(estimate_mu(count_saws(*rule, v, 6), EstimateMethod::RatioExtrapolation), PreconditionError);
  auto s = count_saws(*rule, v, 12);
  s.truncated = true;
  EXPECT_THROW(estimate_mu(s, EstimateMethod::LogFit), PreconditionError);
}

TEST(Estimate, MethodNames) {
  EXPECT_EQ(parse_method("ratio_extrapolation"), EstimateMethod::RatioExtrapolation);
  EXPECT_EQ(parse_method("log_fit"), EstimateMethod::LogFit);
  EXPECT_EQ(to_string(EstimateMethod::LogFit), "log_fit");
  EXPECT_THROW(parse_method("magic"), SpecError);
}

TEST(Estimate, RatiosAreExactQuotients) {
  const auto g = grow("hex", 12);
  for (const auto& r : g.ratios) {
    EXPECT_EQ(r.numerator, g.sup_counts[r.n]);
    EXPECT_NEAR(r.value, r.numerator.convert_to<double>() / r.denominator.convert_to<double>(), 1e-12);
  }
}

TEST(Bounds, LadderPassesEveryClause) {
  const auto rule = make_ladder();
  const auto rep = check_bounds(*rule, grow("ladder", 24));
  EXPECT_TRUE(rep.pass());
  for (const std::string c : {"lower_bound", "mu_hat_lower_bound", "upper_bound", "fekete_dominates", "strict_gap"}) {
    ASSERT_NE(rep.clause(c), nullptr) << c;
    EXPECT_TRUE(rep.clause(c)->applicable) << c;
    EXPECT_TRUE(rep.clause(c)->pass) << c;
  }
  // σ_4..σ_6 = 20, 36, 58 against 16, 32, 64
  EXPECT_EQ(rep.strict_gap_n, std::optional<int>(6));
}

TEST(Bounds, TreeHasNoStrictGap) {
  const auto rule = make_tree(3);
  const auto rep = check_bounds(*rule, grow("tree:3", 12));
  EXPECT_TRUE(rep.pass());
  EXPECT_FALSE(rep.clause("strict_gap")->applicable);
  EXPECT_FALSE(rep.strict_gap_n.has_value());
}

TEST(Bounds, DecoratedLineLowerBoundNotApplicable) {
  const auto rule = make_decorated_line3();
  const auto rep = check_bounds(*rule, grow("decor3", 30));
  EXPECT_FALSE(rep.clause("lower_bound")->applicable);
  EXPECT_FALSE(rep.clause("mu_hat_lower_bound")->applicable);
  EXPECT_TRUE(rep.pass());
}

TEST(Bounds, TamperedEstimateFailsUpperBound) {
  const auto rule = make_loop(3);
  auto g = grow("loop:3", 20);
  g.fit->mu = 2.5;
  const auto rep = check_bounds(*rule, g);
  EXPECT_FALSE(rep.pass());
  EXPECT_FALSE(rep.clause("upper_bound")->pass);
}

TEST(Convergence, LadderRailsAgree) {
  const auto rule = make_ladder();
  const auto r = convergence_check(count_saws(*rule, rule->parse_vertex("0,0"), 24),
                                   count_saws(*rule, rule->parse_vertex("3,1"), 24));
  EXPECT_EQ(r.difference, 0.0);
  EXPECT_TRUE(r.pass);
}

TEST(Convergence, LoopReflection) {
  const auto rule = make_loop(3);
  const auto r = convergence_check(count_saws(*rule, rule->parse_vertex("0"), 24),
                                   count_saws(*rule, rule->parse_vertex("1"), 24));
  EXPECT_EQ(r.difference, 0.0);
}

TEST(Convergence, DecoratedLineRoots) {
  const auto rule = make_decorated_line3();
  const auto line = rule->parse_vertex("0,0");
  const auto gadget = rule->parse_vertex("0,4");
  const auto r = convergence_check(count_saws(*rule, line, 30), count_saws(*rule, gadget, 30));
  EXPECT_EQ(r.n, 30);
  EXPECT_TRUE(r.pass);
  // Independent values from the explicit gadget graph.
  const auto g = oracle::decor3(34);
  const auto a = oracle::saw_counts(g, g.at({0, 0}), 30);
  const auto b = oracle::saw_counts(g, g.at({0, 4}), 30);
  const double want = std::abs(std::pow(static_cast<double>(a[30]), 1.0 / 30) - std::pow(static_cast<double>(b[30]), 1.0 / 30));
  EXPECT_NEAR(r.difference, want, 1e-9);
  EXPECT_LT(want, 0.1);
}

TEST(Convergence, NeedsTwentySteps) {
  const auto rule = make_ladder();
  const auto s = count_saws(*rule, rule->parse_vertex("0,0"), 12);
  EXPECT_THROW(convergence_check(s, s), PreconditionError);
}

TEST(NthRoot, ExactIntegers) {
  EXPECT_NEAR(nth_root(Count(1024), 10), 2.0, 1e-12);
  const Count huge = ipow(Count(3), 900);
  EXPECT_NEAR(nth_root(huge, 900), 3.0, 1e-9);
}
