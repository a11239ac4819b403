#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace sawlab {

enum class FamilyKind : std::uint8_t {
  Ladder,
  Hexagonal,
  Loop,
  Tree,
  DecoratedLine3,
  DecoratedLine4,
  TreeLoopInterpolation,
  Custom,
};

enum class Transitivity : std::uint8_t { VertexTransitive, QuasiTransitive };

// Canonical vertex name. Each family fixes the meaning of the coordinates:
//   ladder      (x, rail)
//   hex         (q, r, sublattice)       axial honeycomb coordinates
//   loop        (x)
//   tree        (depth, index)           index enumerates the level left to right
//   decor3/4    (x, gadget-local index)  local 0 is the line vertex
//   interp      (depth, index, position) position 0 is the branch vertex
// Unused trailing coordinates are zero, so equality is identity.
struct VertexId {
  FamilyKind family = FamilyKind::Custom;
  std::array<std::int64_t, 3> coords{};

  friend auto operator<=>(const VertexId&, const VertexId&) = default;
  friend bool operator==(const VertexId&, const VertexId&) = default;
};

struct VertexIdHash {
  std::size_t operator()(const VertexId& v) const noexcept;
};

// Undirected edge. Endpoints are stored in increasing order; parallel edges
// between the same pair are told apart by parallel_index.
struct EdgeRef {
  VertexId lo;
  VertexId hi;
  std::uint32_t parallel_index = 0;

  static EdgeRef between(const VertexId& a, const VertexId& b, std::uint32_t parallel_index = 0);

  bool incident_to(const VertexId& v) const { return lo == v || hi == v; }
  const VertexId& other(const VertexId& v) const;
  bool parallel_to(const EdgeRef& e) const { return lo == e.lo && hi == e.hi; }

  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

struct DirectedEdge {
  VertexId from;
  EdgeRef edge;

  const VertexId& to() const { return edge.other(from); }
  friend auto operator<=>(const DirectedEdge&, const DirectedEdge&) = default;
  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

struct Incidence {
  EdgeRef edge;
  VertexId to;

  friend bool operator==(const Incidence&, const Incidence&) = default;
};

struct FamilySpec {
  FamilyKind kind = FamilyKind::Custom;
  int degree = 0;          // Δ
  int segment_length = 0;  // ℓ, interpolation family only

  std::string to_string() const;
};

// An infinite, locally finite, loopless multigraph given by a pure neighbor
// generator plus symmetry metadata.
class GraphRule {
 public:
  virtual ~GraphRule() = default;

  virtual FamilySpec spec() const = 0;
  std::string name() const { return spec().to_string(); }

  // Supremum degree Δ.
  virtual int max_degree() const = 0;
  // Declared degree of v's orbit.
  virtual int degree(const VertexId& v) const;

  // All incident edges with multiplicity, in a fixed order. Throws InvalidVertex
  // for ids that are not vertices of this graph.
  virtual std::vector<Incidence> neighbors(const VertexId& v) const = 0;

  // One vertex per orbit of the automorphism group.
  virtual std::vector<VertexId> orbit_reps() const = 0;
  virtual Transitivity transitivity() const = 0;
  virtual bool is_simple() const = 0;
  virtual bool has_cycle() const = 0;
  // Whether μ ≥ √(Δ−1) is known for this family (vertex-transitive and simple,
  // or satisfying the red/blue witness condition).
  virtual bool lower_bound_applies() const = 0;

  virtual void validate(const VertexId& v) const = 0;
  // Number of meaningful coordinates.
  virtual int arity() const = 0;

  std::string format_vertex(const VertexId& v) const;
  VertexId parse_vertex(std::string_view text) const;
  std::string format_edge(const EdgeRef& e) const;
  // "<vertex>/<vertex>[#k]"; the edge must exist.
  EdgeRef parse_edge(std::string_view text) const;

  bool is_regular() const;

 protected:
  virtual FamilyKind kind() const { return spec().kind; }
};

using RulePtr = std::shared_ptr<const GraphRule>;

}  // namespace sawlab
