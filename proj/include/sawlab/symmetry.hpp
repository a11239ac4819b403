#pragma once

#include <optional>
#include <string>

#include "sawlab/graph.hpp"

namespace sawlab {

struct SymmetryReport {
  bool pass = true;
  std::size_t vertices_checked = 0;
  std::string violation;               // empty on pass
  std::optional<VertexId> witness_vertex;
  std::optional<EdgeRef> witness_edge;
};

// Checks edge symmetry, declared degree and determinism of the neighbor
// generator on every vertex within sample_radius of each orbit representative.
SymmetryReport verify_symmetry(const GraphRule& rule, int sample_radius);

}  // namespace sawlab
