#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sawlab/count.hpp"
#include "sawlab/graph.hpp"
#include "sawlab/saw.hpp"

namespace sawlab {

enum class EstimateMethod : std::uint8_t { RatioExtrapolation, LogFit };

std::string to_string(EstimateMethod method);
// "ratio_extrapolation" | "log_fit"; throws SpecError otherwise.
EstimateMethod parse_method(std::string_view text);

struct Ratio {
  int n = 0;
  Count numerator;    // σ_n
  Count denominator;  // σ_{n-1}
  double value = 0.0;
};

struct MuFit {
  EstimateMethod method = EstimateMethod::RatioExtrapolation;
  double mu = 0.0;
  double residual = 0.0;  // RMS of the fit on the range used
  int n_lo = 0;
  int n_hi = 0;
  int period = 1;         // ratio method: step p in (σ_n / σ_{n-p})^{1/p}
  double gamma = 0.0;     // log fit: coefficient of log n
};

struct GrowthEstimate {
  std::string family;
  int n_max = 0;
  std::vector<Count> sup_counts;      // index n: max over orbit reps of σ_n
  std::vector<double> fekete_raw;     // index n ≥ 1: sup_counts[n]^{1/n}; [0] unused
  std::vector<double> fekete_upper;   // running minimum of fekete_raw
  std::vector<Ratio> ratios;          // from the first orbit representative
  std::optional<MuFit> fit;           // primary method
  std::optional<MuFit> cross_check;   // the other method
  bool methods_disagree = false;      // |Δμ| > kMethodDisagreement

  std::optional<double> mu_hat() const {
    return fit ? std::optional<double>(fit->mu) : std::nullopt;
  }
  double envelope() const { return fekete_upper.empty() ? 0.0 : fekete_upper.back(); }
};

inline constexpr double kMethodDisagreement = 1e-2;

struct ExactTarget {
  FamilySpec family;
  double mu_exact = 0.0;
  std::string closed_form;
};

// Known connective constants: ladder, hexagonal, loop graphs, trees.
std::optional<ExactTarget> exact_target(const FamilySpec& family);

// One series per orbit representative, in orbit_reps() order, all plain vertex
// counts. Throws PreconditionError when a representative is missing, when a
// series is of the wrong kind, or when the common length is below n = 2.
GrowthEstimate fekete_bounds(const GraphRule& rule, const std::vector<SawCountSeries>& per_rep);

// Throws PreconditionError for truncated series or fewer than 8 terms.
MuFit estimate_mu(const SawCountSeries& series, EstimateMethod method);

// fekete_bounds plus both fits on the first representative's series.
GrowthEstimate estimate_growth(const GraphRule& rule, const std::vector<SawCountSeries>& per_rep,
                               EstimateMethod primary = EstimateMethod::RatioExtrapolation);

struct BoundClause {
  std::string name;
  bool applicable = true;
  bool pass = true;
  std::string detail;
};

struct BoundReport {
  std::string family;
  int degree = 0;
  std::vector<BoundClause> clauses;
  std::optional<int> strict_gap_n;  // smallest n with sup σ_n < (Δ−1)^n

  bool pass() const;
  const BoundClause* clause(std::string_view name) const;
};

inline constexpr double kDefaultBoundTolerance = 1e-2;

// Clauses: lower_bound, mu_hat_lower_bound, upper_bound, fekete_dominates,
// strict_gap. Integer comparisons are exact; only the mu_hat clauses use the
// tolerance.
BoundReport check_bounds(const GraphRule& rule, const GrowthEstimate& estimate,
                         double tolerance = kDefaultBoundTolerance);

struct ConvergenceReport {
  VertexId root_u;
  VertexId root_v;
  int n = 0;
  double root_u_value = 0.0;  // σ_n(u)^{1/n}
  double root_v_value = 0.0;
  double difference = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

inline constexpr double kDefaultConvergenceThreshold = 0.1;

// Compares σ_n^{1/n} at the largest common n. Throws PreconditionError below n = 20.
ConvergenceReport convergence_check(const SawCountSeries& u, const SawCountSeries& v,
                                    double threshold = kDefaultConvergenceThreshold);

// σ^{1/n} through the logarithm of the exact integer.
double nth_root(const Count& value, int n);

}  // namespace sawlab
