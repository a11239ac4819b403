#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sawlab/count.hpp"
#include "sawlab/graph.hpp"

namespace sawlab {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000'000ULL;

struct EnumOptions {
  unsigned threads = 1;                         // 0 = hardware concurrency
  std::uint64_t node_budget = kDefaultNodeBudget;  // expanded search-tree nodes per attempt
  int split_depth = 5;                          // prefix depth handed to workers
  std::size_t max_ball_vertices = 8'000'000;    // larger balls count as budget exhaustion
};

enum class RootKind : std::uint8_t { Vertex, MidEdge };

// Exact counts σ_0..σ_n. When the node budget runs out the series is cut back
// to the longest prefix that completed and `truncated` is set.
struct SawCountSeries {
  std::string family;
  RootKind root_kind = RootKind::Vertex;
  VertexId root;                       // vertex root
  std::optional<EdgeRef> root_edge;    // mid-edge root
  std::optional<EdgeRef> avoided_edge;
  std::optional<int> extendable_lookahead;
  int n_max = 0;                       // requested
  std::vector<Count> counts;
  bool truncated = false;
  std::uint64_t nodes = 0;             // search-tree nodes of the successful attempt

  int n_reached() const { return static_cast<int>(counts.size()) - 1; }
};

struct SawPrefix {
  std::vector<VertexId> vertices;  // v_0..v_k
  std::vector<EdgeRef> edges;      // e_0..e_{k-1}

  std::size_t length() const { return edges.size(); }
  const VertexId& end() const { return vertices.back(); }
};

// Alternating incidence, distinct vertices, edges taken from the rule.
bool is_self_avoiding(const GraphRule& rule, const SawPrefix& walk);

SawCountSeries count_saws(const GraphRule& rule, const VertexId& v, int n_max,
                          const EnumOptions& options = {});

// counts[k] = walks from the midpoint of e that visit exactly k vertices and
// never return to that midpoint.
SawCountSeries count_saws_midedge(const GraphRule& rule, const EdgeRef& e, int n_max,
                                  const EnumOptions& options = {});

// counts[k] = σ_k(u, e): walks from u that never traverse e. Throws
// PreconditionError unless e is incident to u.
SawCountSeries count_saws_avoiding(const GraphRule& rule, const VertexId& u, const EdgeRef& e,
                                   int n_max, const EnumOptions& options = {});

// counts[k] = k-step walks from v that admit a self-avoiding continuation of
// `lookahead` further steps. Upper bound on the number of extendable walks;
// non-increasing in the lookahead.
SawCountSeries count_extendable(const GraphRule& rule, const VertexId& v, int n_max, int lookahead,
                                const EnumOptions& options = {});

}  // namespace sawlab
