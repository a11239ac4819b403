#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "sawlab/graph.hpp"

namespace sawlab {

// Finite ball B_n(center) with every vertex at distance > n identified into a
// single boundary vertex ∂B_n. Edge multiplicities are preserved.
struct BallGraph {
  static constexpr int kBoundary = -1;

  struct Edge {
    int a = 0;
    int b = 0;  // kBoundary for edges leaving the ball
    EdgeRef ref;
  };

  VertexId center;
  int radius = 0;
  std::vector<VertexId> vertices;  // BFS order, vertices[0] == center
  std::vector<int> distance;
  std::vector<Edge> edges;         // each undirected edge once

  std::size_t interior_edge_count() const;
  std::size_t boundary_edge_count() const;
  std::optional<int> index_of(const VertexId& v) const;

 private:
  friend BallGraph build_ball(const GraphRule&, const VertexId&, int);
  std::unordered_map<VertexId, int, VertexIdHash> index_;
};

// Requires n ≥ 1.
BallGraph build_ball(const GraphRule& rule, const VertexId& center, int n);

// Dense, multiplicity-compressed view of a ball used by the enumeration hot
// loops. Parallel edges to the same neighbor collapse into one arc with a
// multiplicity. Vertices on the outer sphere have no arcs.
class LocalGraph {
 public:
  struct Arc {
    std::int32_t to;
    std::uint32_t multiplicity;
  };

  // Thrown when the ball would exceed max_vertices; complete_radius is the
  // largest radius whose ball was fully discovered.
  struct TooLarge {
    int complete_radius;
  };

  LocalGraph(const GraphRule& rule, const VertexId& root, int radius,
             std::size_t max_vertices = static_cast<std::size_t>(-1));

  std::size_t size() const { return ids_.size(); }
  int radius() const { return radius_; }
  const VertexId& id(std::int32_t local) const { return ids_[static_cast<std::size_t>(local)]; }
  int distance(std::int32_t local) const { return dist_[static_cast<std::size_t>(local)]; }
  std::span<const Arc> arcs(std::int32_t local) const {
    const auto u = static_cast<std::size_t>(local);
    return {arcs_.data() + offsets_[u], arcs_.data() + offsets_[u + 1]};
  }
  std::optional<std::int32_t> index_of(const VertexId& v) const;
  // Largest multiplicity-weighted degree among interior vertices.
  int max_degree() const { return max_degree_; }

 private:
  int radius_;
  int max_degree_ = 0;
  std::vector<VertexId> ids_;
  std::vector<int> dist_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Arc> arcs_;
  std::unordered_map<VertexId, std::int32_t, VertexIdHash> index_;
};

}  // namespace sawlab
