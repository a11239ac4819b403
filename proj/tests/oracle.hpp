#pragma once

// Brute-force reference implementations used to cross-check the library.
// Graphs are built here from their textbook descriptions as explicit finite
// edge lists, large enough that no walk in a test reaches the cut-off region.
// Nothing in this file uses the library's neighbour rules or enumerators.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

struct Graph {
  struct Half {
    int edge;
    int to;
  };
  std::vector<std::vector<Half>> adj;
  std::vector<std::pair<int, int>> edges;
  std::map<std::vector<long>, int> index;  // natural coordinates → vertex

  int vertex(const std::vector<long>& coords);  // creates on first use
  int at(const std::vector<long>& coords) const;
  void connect(int a, int b, int multiplicity = 1);
  int size() const { return static_cast<int>(adj.size()); }
};

// Z × {0,1}, x in [-w, w]; coords (x, y).
Graph ladder(int w);
// Honeycomb as a brick wall: (x, y) ~ (x±1, y), and (x, y) ~ (x, y+1) when
// x + y is even; |x|, |y| ≤ r.
Graph brick_wall(int r);
// Integers in [-w, w]; one edge {2k−1, 2k}, Δ−1 edges {2k, 2k+1}.
Graph loop(int delta, int w);
// Rooted Δ-regular tree truncated at the given depth; coords are the
// child-index word from the root.
Graph tree(int delta, int depth);
// Line x in [-w, w] with a gadget at every x; coords (x, k), k = 0 line
// vertex, then s, a, b, c, d for decor3 and a, b, c, d, e for decor4.
Graph decor3(int w);
Graph decor4(int w);
// Tree of the given branch depth with every edge a chain of 2ℓ−1 edges
// alternating single edge / Δ−1 parallel edges. Coords: word of branch
// choices; chain vertices append −p for position p along the chain leading
// to the branch vertex named by that word.
Graph interpolation(int delta, int ell, int depth);

std::vector<std::uint64_t> saw_counts(const Graph& g, int root, int n);
// Walks from root that never use the given edge id.
std::vector<std::uint64_t> saw_counts_avoiding(const Graph& g, int root, int edge, int n);
// counts[k]: walks from the midpoint of `edge` visiting k vertices.
std::vector<std::uint64_t> midedge_counts(const Graph& g, int edge, int n);
// k-step walks with a self-avoiding continuation of `lookahead` more steps.
std::vector<std::uint64_t> extendable_counts(const Graph& g, int root, int n, int lookahead);

// Whether some walk of exactly `steps` steps starting with the given edge
// from `from` avoids every vertex in `blocked` (which must contain `from`).
bool has_continuation(const Graph& g, const std::vector<int>& blocked, int from, int edge, int steps);

struct BallCounts {
  int interior_vertices = 0;
  int interior_edges = 0;
  int boundary_edges = 0;
};
BallCounts ball_counts(const Graph& g, int center, int radius);
// Max number of edge-disjoint paths from center to distance radius + 1.
int ball_max_flow(const Graph& g, int center, int radius);

// (β+1)(Δ−1)^α with B = α(Δ−2)+β, computed by repeated subtraction.
std::uint64_t g_value(int delta, int branches);

}  // namespace oracle
