#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sawlab/graph.hpp"
#include "sawlab/saw.hpp"

namespace sawlab {

// A prefix π_w from v to w whose last edge is e, followed by e' leaving w.
struct TraversedTriple {
  SawPrefix prefix;
  EdgeRef e;
  EdgeRef e_prime;

  const VertexId& w() const { return prefix.end(); }
};

// Throws PreconditionError when the triple is malformed.
void validate_triple(const GraphRule& rule, const TraversedTriple& triple);

enum class Color : std::uint8_t { Blue, Red, Unknown };
std::string to_string(Color color);

struct ColorVerdict {
  DirectedEdge directed_edge;  // from = w
  Color color = Color::Unknown;
  int depth = 0;
  // Blue: D-step walk w, x_1, ..., x_D whose first edge is directed_edge.edge
  // and which meets the prefix only at w.
  std::optional<SawPrefix> witness;
  std::string note;  // set for Unknown
};

inline constexpr std::uint64_t kDefaultSearchBudget = 5'000'000;

// Depth-bounded colour of e_dd at the end of prefix. Red means no continuation
// of D steps starting with e_dd avoids the prefix. The verdict depends only on
// the prefix, so callers without a triple may use classify_at directly.
ColorVerdict classify_edge(const GraphRule& rule, const TraversedTriple& triple, const EdgeRef& e_dd,
                           int depth, std::uint64_t budget = kDefaultSearchBudget);
ColorVerdict classify_at(const GraphRule& rule, const SawPrefix& prefix, const EdgeRef& e_dd,
                         int depth, std::uint64_t budget = kDefaultSearchBudget);

// Independent re-check of a Blue witness.
bool validate_blue_witness(const GraphRule& rule, const SawPrefix& prefix, const ColorVerdict& verdict);

struct FPair {
  EdgeRef red_edge;   // e_j
  EdgeRef f;          // ⟨x_j, y_j⟩
  VertexId x;
  VertexId y;
  SawPrefix path;     // w → x_j, first edge e_j; a single vertex when f is e_j itself
};

struct FWitness {
  std::vector<FPair> pairs;
};

enum class SearchStatus : std::uint8_t { Found, NotFound, Indeterminate };

struct FWitnessResult {
  SearchStatus status = SearchStatus::NotFound;
  FWitness witness;                   // when Found
  std::vector<EdgeRef> unmatched;     // when NotFound
};

// Matches the red edges at w = prefix.end() to distinct edges f_j = ⟨x_j, y_j⟩
// with y_j on the prefix, y_j ≠ w, reached by a walk of at most P steps from w
// that starts with e_j and meets the prefix only at w. A red edge landing
// directly on the prefix may serve as its own f_j.
FWitnessResult find_f_witness(const GraphRule& rule, const SawPrefix& prefix,
                              const std::vector<EdgeRef>& red_edges, int path_bound,
                              std::uint64_t budget = kDefaultSearchBudget);
FWitnessResult find_f_witness(const GraphRule& rule, const TraversedTriple& triple,
                              const std::vector<EdgeRef>& red_edges, int path_bound,
                              std::uint64_t budget = kDefaultSearchBudget);

// Returns an empty string when the witness is valid, otherwise the reason.
std::string validate_f_witness(const GraphRule& rule, const SawPrefix& prefix,
                               const std::vector<EdgeRef>& red_edges, const FWitness& witness,
                               int path_bound);

struct PiOptions {
  int L = 8;
  int D = 12;
  int P = 12;
  unsigned threads = 1;
  std::uint64_t search_budget = kDefaultSearchBudget;  // per colour / witness search
};

enum class PiOutcome : std::uint8_t { CertifiedUpTo, Violation, Partial };
std::string to_string(PiOutcome outcome);

struct PiViolation {
  TraversedTriple triple;
  std::vector<EdgeRef> red_edges;
  std::vector<EdgeRef> unmatched;
};

struct PiCertificate {
  std::string family;
  VertexId vertex;
  int L = 0;
  int D = 0;
  int P = 0;
  PiOutcome outcome = PiOutcome::Partial;
  bool cubic = false;
  std::uint64_t prefixes_checked = 0;
  std::uint64_t triples_checked = 0;
  std::uint64_t red_edges_seen = 0;
  std::uint64_t unknown_verdicts = 0;
  std::uint64_t parallel_disagreements = 0;
  std::uint64_t validator_failures = 0;
  std::optional<PiViolation> violation;
};

// Walks every depth-D-extendable prefix of length 1..L−1 from v and checks
// the witness condition at its last vertex. Violation is only reported when
// every search involved ran to completion.
PiCertificate check_pi(const GraphRule& rule, const VertexId& v, const PiOptions& options = {});

struct AuditStep {
  int s = 0;
  int red = 0;
  int blue = 0;
};

struct AuditPrefix {
  SawPrefix prefix;
  std::vector<AuditStep> steps;
  int blue_total = 0;
  bool accounting_ok = true;  // red + blue = Δ − 2 at every step
  bool bound_ok = true;       // Σ b_s ≥ n(Δ − 2)
};

struct BlueCountAudit {
  std::string family;
  VertexId vertex;
  int n = 0;
  int D = 0;
  std::uint64_t prefixes_audited = 0;
  std::uint64_t prefixes_inconclusive = 0;
  std::uint64_t accounting_failures = 0;
  std::uint64_t bound_failures = 0;
  int min_blue_total = -1;
  std::optional<AuditPrefix> first_failure;

  bool pass() const { return accounting_failures == 0 && bound_failures == 0; }
};

// Every depth-D-extendable 2n-step prefix from v. Step 0 uses the first edge
// at v other than e_0 as its entering edge.
BlueCountAudit blue_count_audit(const GraphRule& rule, const VertexId& v, int n, int depth,
                                unsigned threads = 1,
                                std::uint64_t budget = kDefaultSearchBudget);

}  // namespace sawlab
