#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sawlab/ball.hpp"
#include "sawlab/count.hpp"
#include "sawlab/estimator.hpp"
#include "sawlab/graph.hpp"
#include "sawlab/saw.hpp"

namespace sawlab {

// ---- branch lemma ---------------------------------------------------------

// B = α(Δ−2) + β with 0 ≤ β < Δ−2.
struct BranchDecomposition {
  int alpha = 0;
  int beta = 0;
};

BranchDecomposition decompose_branches(int delta, int branches);

// (β+1)(Δ−1)^α. Throws PreconditionError unless Δ ≥ 3 and B ≥ 0.
Count g_function(int delta, int branches);

struct GInductionFailure {
  int delta = 0;
  int branches = 0;
  int gamma = 0;  // 0 for the monotonicity / scaling invariants
  std::string check;
  Count lhs;
  Count rhs;
};

struct GInductionReport {
  int delta_max = 0;
  int branches_max = 0;
  std::uint64_t inequalities = 0;     // (γ+1)·g(B−γ) ≥ g(B)
  std::uint64_t case_identities = 0;  // closed forms for γ ≤ β and γ > β
  std::uint64_t invariants = 0;       // monotonicity and g(B+Δ−2) = (Δ−1)g(B)
  std::vector<GInductionFailure> failures;

  bool pass() const { return failures.empty(); }
};

GInductionReport verify_g_induction(int delta_max, int branches_max);

// ---- cutoff N -------------------------------------------------------------

struct CutoffPair {
  VertexId u;
  EdgeRef e;
  SawCountSeries series;  // σ_k(u, e)
};

struct CutoffResult {
  std::string family;
  int degree = 0;
  int search_bound = 0;
  std::optional<int> N;
  bool truncated = false;  // some series stopped short of the search bound
  std::vector<CutoffPair> pairs;

  // ((Δ−1)^N − 1)^{1/N}
  std::optional<double> bound() const;
};

// Smallest N ≤ search_bound with σ_N(u,e) ≤ (Δ−1)^N − 1 for every orbit
// representative u and every edge e at u. Throws PreconditionError for Δ < 3.
CutoffResult find_cutoff_N(const GraphRule& rule, int search_bound, const EnumOptions& options = {});

// ---- Menger ---------------------------------------------------------------

struct MengerPath {
  std::vector<VertexId> vertices;  // source ... last interior vertex, then the outside endpoint
  std::vector<EdgeRef> edges;      // final edge leaves the ball
  std::vector<int> ball_edges;     // indices into MengerResult::ball.edges
};

struct MengerResult {
  BallGraph ball;
  VertexId source;
  int flow_value = 0;
  std::vector<MengerPath> paths;
};

// Unit-capacity max flow from v to the boundary of B_n, decomposed into
// edge-disjoint self-avoiding paths. Deterministic.
MengerResult menger_disjoint_paths(const GraphRule& rule, const VertexId& v, int n);

// Empty string when the result is consistent.
std::string validate_menger(const GraphRule& rule, const MengerResult& result);

// ---- strictness -----------------------------------------------------------

enum class StrictnessStatus : std::uint8_t { Certified, NotApplicable, NotWitnessed, Violated };
std::string to_string(StrictnessStatus status);

struct StrictnessReport {
  std::string family;
  int degree = 0;
  StrictnessStatus status = StrictnessStatus::NotWitnessed;
  CutoffResult cutoff;
  std::optional<double> bound;
  std::optional<double> envelope;
  std::optional<double> mu_hat;
  bool envelope_ok = true;
  bool mu_hat_ok = true;
  std::string detail;
};

inline constexpr double kStrictnessTolerance = 1e-2;

// Families without a cycle are NotApplicable. Otherwise the cutoff N gives the
// bound ((Δ−1)^N − 1)^{1/N}; the estimate, when present, must not exceed it.
StrictnessReport mu_strictness_report(const GraphRule& rule, const std::optional<GrowthEstimate>& estimate,
                                      int search_bound, const EnumOptions& options = {},
                                      double tolerance = kStrictnessTolerance);

// ---- counting inequalities ------------------------------------------------

struct InequalityFailure {
  VertexId u;
  VertexId v;
  int n = 0;
  int m = 0;
  Count lhs;
  Count rhs;
};

struct InequalityReport {
  std::string family;
  std::string name;
  int n_max = 0;
  std::uint64_t checked = 0;
  bool truncated = false;
  std::vector<InequalityFailure> failures;

  bool pass() const { return failures.empty() && !truncated; }
};

// σ_n(u) ≤ σ_{n+1}(v) + Σ_{m=1}^{n−1} σ_m(v)σ_{n−m}(v) + σ_n(v) for every orbit
// representative v, every neighbour u of v, both orientations, 1 ≤ n ≤ n_max.
InequalityReport hammersley_suite(const GraphRule& rule, int n_max, const EnumOptions& options = {});

// σ_{m+n}(v) ≤ σ_m(v) · max_u σ_n(u) over orbit representatives, m + n ≤ total_max.
InequalityReport submultiplicativity_suite(const GraphRule& rule, int total_max, const EnumOptions& options = {});

// σ_n(v) ≤ Δ(Δ−1)^{n−1} at every orbit representative.
InequalityReport trivial_bound_suite(const GraphRule& rule, int n_max, const EnumOptions& options = {});

}  // namespace sawlab
