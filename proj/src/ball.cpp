#include "sawlab/ball.hpp"

#include <limits>
#include <set>

#include "sawlab/errors.hpp"

namespace sawlab {

std::size_t BallGraph::interior_edge_count() const {
  std::size_t n = 0;
  for (const auto& e : edges) n += e.b != kBoundary;
  return n;
}

std::size_t BallGraph::boundary_edge_count() const { return edges.size() - interior_edge_count(); }

std::optional<int> BallGraph::index_of(const VertexId& v) const {
  const auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

BallGraph build_ball(const GraphRule& rule, const VertexId& center, int n) {
  if (n < 1) throw PreconditionError("ball radius must be at least 1");
  rule.validate(center);
  BallGraph ball;
  ball.center = center;
  ball.radius = n;
  ball.vertices.push_back(center);
  ball.distance.push_back(0);
  ball.index_.emplace(center, 0);

  std::vector<std::vector<Incidence>> adjacency;
  for (std::size_t head = 0; head < ball.vertices.size(); ++head) {
    adjacency.push_back(rule.neighbors(ball.vertices[head]));
    const int d = ball.distance[head];
    if (d == n) continue;
    for (const auto& inc : adjacency.back()) {
      if (ball.index_.contains(inc.to)) continue;
      ball.index_.emplace(inc.to, static_cast<int>(ball.vertices.size()));
      ball.vertices.push_back(inc.to);
      ball.distance.push_back(d + 1);
    }
  }

  for (std::size_t u = 0; u < ball.vertices.size(); ++u) {
    for (const auto& inc : adjacency[u]) {
      const auto it = ball.index_.find(inc.to);
      if (it == ball.index_.end()) {
        ball.edges.push_back({static_cast<int>(u), BallGraph::kBoundary, inc.edge});
      } else if (static_cast<std::size_t>(it->second) > u) {
        ball.edges.push_back({static_cast<int>(u), it->second, inc.edge});
      }
    }
  }
  return ball;
}

LocalGraph::LocalGraph(const GraphRule& rule, const VertexId& root, int radius, std::size_t max_vertices)
    : radius_(radius) {
  if (radius < 0) throw PreconditionError("negative radius");
  rule.validate(root);
  ids_.push_back(root);
  dist_.push_back(0);
  index_.emplace(root, 0);
  offsets_.push_back(0);
  for (std::size_t head = 0; head < ids_.size(); ++head) {
    const int d = dist_[head];
    if (d < radius) {
      int weighted = 0;
      const std::size_t first = arcs_.size();
      for (const auto& inc : rule.neighbors(ids_[head])) {
        ++weighted;
        auto it = index_.find(inc.to);
        if (it == index_.end()) {
          if (ids_.size() >= max_vertices ||
              ids_.size() >= static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
            throw TooLarge{d};
          }
          it = index_.emplace(inc.to, static_cast<std::int32_t>(ids_.size())).first;
          ids_.push_back(inc.to);
          dist_.push_back(d + 1);
        }
        bool merged = false;
        for (std::size_t k = first; k < arcs_.size(); ++k) {
          if (arcs_[k].to == it->second) {
            ++arcs_[k].multiplicity;
            merged = true;
            break;
          }
        }
        if (!merged) arcs_.push_back({it->second, 1});
      }
      max_degree_ = std::max(max_degree_, weighted);
    }
    offsets_.push_back(static_cast<std::uint32_t>(arcs_.size()));
  }
}

std::optional<std::int32_t> LocalGraph::index_of(const VertexId& v) const {
  const auto it = index_.find(v);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace sawlab
