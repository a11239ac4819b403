#include "sawlab/estimator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "sawlab/errors.hpp"

namespace sawlab {

namespace {

constexpr int kMinFitTerms = 8;
constexpr int kMaxPeriod = 6;

// Least squares for y ≈ X·c with up to three columns, via normal equations.
template <std::size_t K>
std::array<double, K> least_squares(const std::vector<std::array<double, K>>& rows,
                                    const std::vector<double>& y) {
  std::array<std::array<long double, K + 1>, K> m{};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < K; ++i) {
      for (std::size_t j = 0; j < K; ++j) m[i][j] += static_cast<long double>(rows[r][i]) * rows[r][j];
      m[i][K] += static_cast<long double>(rows[r][i]) * y[r];
    }
  }
  for (std::size_t col = 0; col < K; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < K; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
    std::swap(m[col], m[pivot]);
    if (m[col][col] == 0) throw PreconditionError("degenerate least-squares system");
    for (std::size_t r = 0; r < K; ++r) {
      if (r == col) continue;
      const long double f = m[r][col] / m[col][col];
      for (std::size_t j = col; j <= K; ++j) m[r][j] -= f * m[col][j];
    }
  }
  std::array<double, K> c{};
  for (std::size_t i = 0; i < K; ++i) c[i] = static_cast<double>(m[i][K] / m[i][i]);
  return c;
}

void require_fit_input(const SawCountSeries& s) {
  if (s.truncated)
    throw PreconditionError("series for " + s.family + " is truncated at n = " +
                            std::to_string(s.n_reached()) + "; a complete series is required");
  if (s.n_reached() + 1 < kMinFitTerms)
    throw PreconditionError("series too short: need n >= " + std::to_string(kMinFitTerms - 1) +
                            ", have n = " + std::to_string(s.n_reached()));
  for (const auto& c : s.counts)
    if (c <= 0) throw PreconditionError("series contains a zero count; growth fit undefined");
}

MuFit fit_ratio(const std::vector<long double>& logs) {
  const int n_hi = static_cast<int>(logs.size()) - 1;
  std::optional<MuFit> best;
  for (int p = 1; p <= kMaxPeriod; ++p) {
    const int n_lo = std::max(p, n_hi / 2);
    if (n_hi - n_lo + 1 < 3) break;
    std::vector<std::array<double, 2>> rows;
    std::vector<double> y;
    for (int n = n_lo; n <= n_hi; ++n) {
      rows.push_back({1.0, 1.0 / n});
      y.push_back(static_cast<double>(std::exp((logs[n] - logs[n - p]) / p)));
    }
    const auto c = least_squares(rows, y);
    double ss = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double d = y[i] - (c[0] + c[1] * rows[i][1]);
      ss += d * d;
    }
    MuFit fit{EstimateMethod::RatioExtrapolation, c[0], std::sqrt(ss / y.size()), n_lo, n_hi, p, 0.0};
    // Prefer the shortest period unless a longer one fits clearly better.
    if (!best || fit.residual < best->residual * (1 - 1e-6) - 1e-13) best = fit;
  }
  if (!best) throw PreconditionError("series too short for ratio extrapolation");
  return *best;
}

MuFit fit_log(const std::vector<long double>& logs) {
  const int n_hi = static_cast<int>(logs.size()) - 1;
  const int n_lo = std::max(1, n_hi / 2);
  std::vector<std::array<double, 3>> rows;
  std::vector<double> y;
  for (int n = n_lo; n <= n_hi; ++n) {
    rows.push_back({static_cast<double>(n), std::log(static_cast<double>(n)), 1.0});
    y.push_back(static_cast<double>(logs[n]));
  }
  const auto c = least_squares(rows, y);
  double ss = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = y[i] - (c[0] * rows[i][0] + c[1] * rows[i][1] + c[2]);
    ss += d * d;
  }
  return MuFit{EstimateMethod::LogFit, std::exp(c[0]), std::sqrt(ss / y.size()), n_lo, n_hi, 1, c[1]};
}

}  // namespace

std::string to_string(EstimateMethod method) {
  return method == EstimateMethod::LogFit ? "log_fit" : "ratio_extrapolation";
}

EstimateMethod parse_method(std::string_view text) {
  if (text == "ratio_extrapolation" || text == "ratio") return EstimateMethod::RatioExtrapolation;
  if (text == "log_fit" || text == "log") return EstimateMethod::LogFit;
  throw SpecError("unknown estimation method '" + std::string(text) +
                  "' (expected ratio_extrapolation | log_fit)");
}

double nth_root(const Count& value, int n) {
  if (n <= 0) throw PreconditionError("nth_root needs n >= 1");
  return static_cast<double>(std::exp(log_count(value) / n));
}

std::optional<ExactTarget> exact_target(const FamilySpec& family) {
  switch (family.kind) {
    case FamilyKind::Ladder:
      return ExactTarget{family, (std::sqrt(5.0) + 1.0) / 2.0, "(sqrt(5)+1)/2"};
    case FamilyKind::Hexagonal:
      return ExactTarget{family, std::sqrt(2.0 + std::numbers::sqrt2), "sqrt(2+sqrt(2))"};
    case FamilyKind::Loop:
      return ExactTarget{family, std::sqrt(family.degree - 1.0),
                         "sqrt(" + std::to_string(family.degree - 1) + ")"};
    case FamilyKind::Tree:
      return ExactTarget{family, family.degree - 1.0, std::to_string(family.degree - 1)};
    default:
      return std::nullopt;
  }
}

GrowthEstimate fekete_bounds(const GraphRule& rule, const std::vector<SawCountSeries>& per_rep) {
  const auto reps = rule.orbit_reps();
  if (per_rep.size() != reps.size())
    throw PreconditionError("expected one series per orbit representative (" +
                            std::to_string(reps.size()) + "), got " + std::to_string(per_rep.size()));
  int n_common = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& s = per_rep[i];
    if (s.root_kind != RootKind::Vertex || s.avoided_edge || s.extendable_lookahead)
      throw PreconditionError("fekete bounds need plain vertex-rooted counts");
    if (s.root != reps[i])
      throw PreconditionError("missing series for orbit representative " +
                              rule.format_vertex(reps[i]));
    n_common = std::min(n_common, s.n_reached());
  }
  if (n_common < 2) throw PreconditionError("fekete bounds need a common n_max >= 2");

  GrowthEstimate g;
  g.family = rule.name();
  g.n_max = n_common;
  g.sup_counts.resize(static_cast<std::size_t>(n_common) + 1);
  g.fekete_raw.assign(static_cast<std::size_t>(n_common) + 1, 0.0);
  g.fekete_upper.assign(static_cast<std::size_t>(n_common) + 1, 0.0);
  for (int n = 0; n <= n_common; ++n) {
    Count best = 0;
    for (const auto& s : per_rep) best = std::max(best, s.counts[static_cast<std::size_t>(n)]);
    g.sup_counts[static_cast<std::size_t>(n)] = best;
  }
  double envelope = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= n_common; ++n) {
    const double b = nth_root(g.sup_counts[static_cast<std::size_t>(n)], n);
    envelope = std::min(envelope, b);
    g.fekete_raw[static_cast<std::size_t>(n)] = b;
    g.fekete_upper[static_cast<std::size_t>(n)] = envelope;
  }
  g.fekete_raw[0] = g.fekete_upper[0] = g.fekete_upper[1];
  const auto& first = per_rep.front().counts;
  for (int n = 1; n <= n_common; ++n) {
    const auto& num = first[static_cast<std::size_t>(n)];
    const auto& den = first[static_cast<std::size_t>(n) - 1];
    const double value = den == 0 ? 0.0 : static_cast<double>(std::exp(log_count(num) - log_count(den)));
    g.ratios.push_back(Ratio{n, num, den, value});
  }
  return g;
}

MuFit estimate_mu(const SawCountSeries& series, EstimateMethod method) {
  require_fit_input(series);
  std::vector<long double> logs;
  logs.reserve(series.counts.size());
  for (const auto& c : series.counts) logs.push_back(log_count(c));
  return method == EstimateMethod::LogFit ? fit_log(logs) : fit_ratio(logs);
}

GrowthEstimate estimate_growth(const GraphRule& rule, const std::vector<SawCountSeries>& per_rep,
                               EstimateMethod primary) {
  GrowthEstimate g = fekete_bounds(rule, per_rep);
  const EstimateMethod other = primary == EstimateMethod::LogFit ? EstimateMethod::RatioExtrapolation
                                                                 : EstimateMethod::LogFit;
  g.fit = estimate_mu(per_rep.front(), primary);
  g.cross_check = estimate_mu(per_rep.front(), other);
  g.methods_disagree = std::fabs(g.fit->mu - g.cross_check->mu) > kMethodDisagreement;
  return g;
}

bool BoundReport::pass() const {
  return std::all_of(clauses.begin(), clauses.end(),
                     [](const BoundClause& c) { return !c.applicable || c.pass; });
}

const BoundClause* BoundReport::clause(std::string_view name) const {
  for (const auto& c : clauses)
    if (c.name == name) return &c;
  return nullptr;
}

BoundReport check_bounds(const GraphRule& rule, const GrowthEstimate& estimate, double tolerance) {
  BoundReport r;
  r.family = rule.name();
  const int delta = rule.max_degree();
  r.degree = delta;
  const Count base = delta - 1;
  const int n_max = estimate.n_max;
  const auto mu = estimate.mu_hat();
  const double sqrt_lower = std::sqrt(delta - 1.0);

  {
    // (sup σ_n)^{1/n} ≥ √(Δ−1)  ⟺  (sup σ_n)^2 ≥ (Δ−1)^n
    BoundClause c{"lower_bound", rule.lower_bound_applies(), true, ""};
    for (int n = 1; n <= n_max; ++n) {
      const Count& s = estimate.sup_counts[static_cast<std::size_t>(n)];
      if (s * s < ipow(base, static_cast<unsigned>(n))) {
        c.pass = false;
        c.detail = "fekete bound below sqrt(D-1) at n = " + std::to_string(n);
        break;
      }
    }
    if (c.pass) c.detail = "every fekete bound >= sqrt(D-1)";
    if (!c.applicable) c.detail = "no sqrt(D-1) lower bound for this family; " + c.detail;
    r.clauses.push_back(c);
  }
  {
    BoundClause c{"mu_hat_lower_bound", rule.lower_bound_applies() && mu.has_value(), true, ""};
    if (mu) {
      c.pass = *mu >= sqrt_lower - tolerance;
      c.detail = "mu_hat - sqrt(D-1) = " + std::to_string(*mu - sqrt_lower);
    } else {
      c.detail = "no estimate";
    }
    r.clauses.push_back(c);
  }
  {
    BoundClause c{"upper_bound", mu.has_value(), true, ""};
    if (mu) {
      c.pass = *mu <= delta - 1.0 + tolerance;
      c.detail = "mu_hat - (D-1) = " + std::to_string(*mu - (delta - 1.0));
    } else {
      c.detail = "no estimate";
    }
    r.clauses.push_back(c);
  }
  {
    BoundClause c{"fekete_dominates", mu.has_value(), true, ""};
    if (mu) {
      for (int n = 1; n <= n_max; ++n) {
        if (estimate.fekete_upper[static_cast<std::size_t>(n)] < *mu - tolerance) {
          c.pass = false;
          c.detail = "fekete envelope below mu_hat at n = " + std::to_string(n);
          break;
        }
      }
      if (c.pass) c.detail = "fekete envelope >= mu_hat - tolerance";
    } else {
      c.detail = "no estimate";
    }
    r.clauses.push_back(c);
  }
  {
    BoundClause c{"strict_gap", rule.has_cycle(), false, ""};
    for (int n = 1; n <= n_max; ++n) {
      if (estimate.sup_counts[static_cast<std::size_t>(n)] < ipow(base, static_cast<unsigned>(n))) {
        r.strict_gap_n = n;
        break;
      }
    }
    c.pass = r.strict_gap_n.has_value();
    if (!c.applicable)
      c.detail = "family has no cycle";
    else if (c.pass)
      c.detail = "sup sigma_n < (D-1)^n at n = " + std::to_string(*r.strict_gap_n);
    else
      c.detail = "no n <= " + std::to_string(n_max) + " with sup sigma_n < (D-1)^n";
    r.clauses.push_back(c);
  }
  return r;
}

ConvergenceReport convergence_check(const SawCountSeries& u, const SawCountSeries& v,
                                    double threshold) {
  const int n = std::min(u.n_reached(), v.n_reached());
  if (n < 20)
    throw PreconditionError("convergence check needs both series to n >= 20, have n = " +
                            std::to_string(n));
  ConvergenceReport r;
  r.root_u = u.root;
  r.root_v = v.root;
  r.n = n;
  r.root_u_value = nth_root(u.counts[static_cast<std::size_t>(n)], n);
  r.root_v_value = nth_root(v.counts[static_cast<std::size_t>(n)], n);
  r.difference = std::fabs(r.root_u_value - r.root_v_value);
  r.threshold = threshold;
  r.pass = r.difference < threshold;
  return r;
}

}  // namespace sawlab
