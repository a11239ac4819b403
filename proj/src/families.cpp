#include "sawlab/families.hpp"

#include <charconv>
#include <limits>
#include <string>

#include "sawlab/errors.hpp"

namespace sawlab {
namespace {

VertexId vid(FamilyKind kind, std::int64_t a, std::int64_t b = 0, std::int64_t c = 0) {
  return VertexId{kind, {a, b, c}};
}

void require_family(const VertexId& v, FamilyKind kind, const std::string& name) {
  if (v.family != kind) throw InvalidVertex("vertex does not belong to family " + name);
}

void push_simple(std::vector<Incidence>& out, const VertexId& from, const VertexId& to) {
  out.push_back({EdgeRef::between(from, to, 0), to});
}

void push_bundle(std::vector<Incidence>& out, const VertexId& from, const VertexId& to, int count) {
  for (int k = 0; k < count; ++k) {
    out.push_back({EdgeRef::between(from, to, static_cast<std::uint32_t>(k)), to});
  }
}

class LadderRule final : public GraphRule {
 public:
  FamilySpec spec() const override { return {FamilyKind::Ladder, 3, 0}; }
  int max_degree() const override { return 3; }
  std::vector<Incidence> neighbors(const VertexId& v) const override {
    validate(v);
    const auto x = v.coords[0];
    const auto y = v.coords[1];
    std::vector<Incidence> out;
    out.reserve(3);
    push_simple(out, v, vid(FamilyKind::Ladder, x - 1, y));
    push_simple(out, v, vid(FamilyKind::Ladder, x + 1, y));
    push_simple(out, v, vid(FamilyKind::Ladder, x, 1 - y));
    return out;
  }
  std::vector<VertexId> orbit_reps() const override { return {vid(FamilyKind::Ladder, 0, 0)}; }
  Transitivity transitivity() const override { return Transitivity::VertexTransitive; }
  bool is_simple() const override { return true; }
  bool has_cycle() const override { return true; }
  bool lower_bound_applies() const override { return true; }
  void validate(const VertexId& v) const override {
    require_family(v, FamilyKind::Ladder, "ladder");
    if ((v.coords[1] != 0 && v.coords[1] != 1) || v.coords[2] != 0) {
      throw InvalidVertex("ladder vertex needs rail 0 or 1");
    }
  }
  int arity() const override { return 2; }
};

// A sites (s = 0) join B sites (q, r), (q−1, r), (q, r−1).
class HexRule final : public GraphRule {
 public:
  FamilySpec spec() const override { return {FamilyKind::Hexagonal, 3, 0}; }
  int max_degree() const override { return 3; }
  std::vector<Incidence> neighbors(const VertexId& v) const override {
    validate(v);
    const auto q = v.coords[0];
    const auto r = v.coords[1];
    std::vector<Incidence> out;
    out.reserve(3);
    if (v.coords[2] == 0) {
      push_simple(out, v, vid(FamilyKind::Hexagonal, q, r, 1));
      push_simple(out, v, vid(FamilyKind::Hexagonal, q - 1, r, 1));
      push_simple(out, v, vid(FamilyKind::Hexagonal, q, r - 1, 1));
    } else {
      push_simple(out, v, vid(FamilyKind::Hexagonal, q, r, 0));
      push_simple(out, v, vid(FamilyKind::Hexagonal, q + 1, r, 0));
      push_simple(out, v, vid(FamilyKind::Hexagonal, q, r + 1, 0));
    }
    return out;
  }
  std::vector<VertexId> orbit_reps() const override { return {vid(FamilyKind::Hexagonal, 0, 0, 0)}; }
  Transitivity transitivity() const override { return Transitivity::VertexTransitive; }
  bool is_simple() const override { return true; }
  bool has_cycle() const override { return true; }
  bool lower_bound_applies() const override { return true; }
  void validate(const VertexId& v) const override {
    require_family(v, FamilyKind::Hexagonal, "hex");
    if (v.coords[2] != 0 && v.coords[2] != 1) throw InvalidVertex("hex sublattice must be 0 or 1");
  }
  int arity() const override { return 3; }
};

class LoopRule final : public GraphRule {
 public:
  explicit LoopRule(int degree) : degree_(degree) {}
  FamilySpec spec() const override { return {FamilyKind::Loop, degree_, 0}; }
  int max_degree() const override { return degree_; }
  std::vector<Incidence> neighbors(const VertexId& v) const override {
    validate(v);
    const auto x = v.coords[0];
    std::vector<Incidence> out;
    out.reserve(static_cast<std::size_t>(degree_));
    if (x % 2 == 0) {
      push_simple(out, v, vid(FamilyKind::Loop, x - 1));
      push_bundle(out, v, vid(FamilyKind::Loop, x + 1), degree_ - 1);
    } else {
      push_bundle(out, v, vid(FamilyKind::Loop, x - 1), degree_ - 1);
      push_simple(out, v, vid(FamilyKind::Loop, x + 1));
    }
    return out;
  }
  // x ↦ 1 − x swaps the two residues, so one orbit.
  std::vector<VertexId> orbit_reps() const override { return {vid(FamilyKind::Loop, 0)}; }
  Transitivity transitivity() const override { return Transitivity::VertexTransitive; }
  bool is_simple() const override { return degree_ == 2; }
  bool has_cycle() const override { return degree_ >= 3; }
  bool lower_bound_applies() const override { return true; }
  void validate(const VertexId& v) const override {
    require_family(v, FamilyKind::Loop, "loop");
    if (v.coords[1] != 0 || v.coords[2] != 0) throw InvalidVertex("loop vertex has a single coordinate");
  }
  int arity() const override { return 1; }

 private:
  int degree_;
};

// Levels of T_Δ are numbered left to right; level d ≥ 1 has Δ(Δ−1)^{d−1} vertices.
class TreeIndex {
 public:
  explicit TreeIndex(int degree) : degree_(degree) {
    level_size_.push_back(1);
    std::int64_t size = degree;
    while (true) {
      level_size_.push_back(size);
      if (degree - 1 <= 1) {
        if (level_size_.size() > 4096) break;
      } else if (size > std::numeric_limits<std::int64_t>::max() / (degree - 1)) {
        break;
      }
      size *= (degree - 1);
    }
  }
  int max_depth() const { return static_cast<int>(level_size_.size()) - 2; }
  bool valid(std::int64_t depth, std::int64_t index) const {
    if (depth < 0 || depth > max_depth() + 1) return false;
    return index >= 0 && index < level_size_[static_cast<std::size_t>(depth)];
  }
  // Parent then children, in index order.
  std::vector<std::pair<std::int64_t, std::int64_t>> adjacent(std::int64_t depth, std::int64_t index) const {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    if (depth > max_depth()) {
      throw InvalidVertex("tree depth " + std::to_string(depth) + " exceeds representable range");
    }
    if (depth == 0) {
      for (int k = 0; k < degree_; ++k) out.emplace_back(1, k);
      return out;
    }
    const std::int64_t branching = degree_ - 1;
    out.emplace_back(depth - 1, depth == 1 ? 0 : index / branching);
    for (std::int64_t k = 0; k < branching; ++k) out.emplace_back(depth + 1, index * branching + k);
    return out;
  }
  std::pair<std::int64_t, std::int64_t> parent(std::int64_t depth, std::int64_t index) const {
    return {depth - 1, depth == 1 ? 0 : index / (degree_ - 1)};
  }

 private:
  int degree_;
  std::vector<std::int64_t> level_size_;
};

class TreeRule final : public GraphRule {
 public:
  explicit TreeRule(int degree) : degree_(degree), index_(degree) {}
  FamilySpec spec() const override { return {FamilyKind::Tree, degree_, 0}; }
  int max_degree() const override { return degree_; }
  std::vector<Incidence> neighbors(const VertexId& v) const override {
    validate(v);
    std::vector<Incidence> out;
    out.reserve(static_cast<std::size_t>(degree_));
    for (const auto& [d, i] : index_.adjacent(v.coords[0], v.coords[1])) {
      push_simple(out, v, vid(FamilyKind::Tree, d, i));
    }
    return out;
  }
  std::vector<VertexId> orbit_reps() const override { return {vid(FamilyKind::Tree, 0, 0)}; }
  Transitivity transitivity() const override { return Transitivity::VertexTransitive; }
  bool is_simple() const override { return true; }
  bool has_cycle() const override { return false; }
  bool lower_bound_applies() const override { return true; }
  void validate(const VertexId& v) const override {
    require_family(v, FamilyKind::Tree, "tree");
    if (!index_.valid(v.coords[0], v.coords[1]) || v.coords[2] != 0) {
      throw InvalidVertex("not a tree vertex (depth, index)");
    }
  }
  int arity() const override { return 2; }

 private:
  int degree_;
  TreeIndex index_;
};

// Gadget-local adjacency tables; index 0 is the line vertex.
constexpr int kDecor3Adj[6][3] = {
    {-1, -1, 1},  // line: left, right (handled separately), s
    {0, 2, 3},    // s
    {1, 4, 5},    // a
    {1, 4, 5},    // b
    {2, 3, 5},    // c
    {2, 3, 4},    // d
};
constexpr int kDecor4Adj[6][4] = {
    {-1, -1, 1, 2},  // line: left, right, a, b
    {0, 3, 4, 5},    // a
    {0, 3, 4, 5},    // b
    {1, 2, 4, 5},    // c
    {1, 2, 3, 5},    // d
    {1, 2, 3, 4},    // e
};

class DecoratedLineRule final : public GraphRule {
 public:
  explicit DecoratedLineRule(int degree)
      : degree_(degree), kind_(degree == 3 ? FamilyKind::DecoratedLine3 : FamilyKind::DecoratedLine4) {}
  FamilySpec spec() const override { return {kind_, degree_, 0}; }
  int max_degree() const override { return degree_; }
  std::vector<Incidence> neighbors(const VertexId& v) const override {
    validate(v);
    const auto x = v.coords[0];
    const auto local = static_cast<int>(v.coords[1]);
    std::vector<Incidence> out;
    out.reserve(static_cast<std::size_t>(degree_));
    for (int k = 0; k < degree_; ++k) {
      const int target = degree_ == 3 ? kDecor3Adj[local][k] : kDecor4Adj[local][k];
      if (target < 0) {
        push_simple(out, v, vid(kind_, k == 0 ? x - 1 : x + 1, 0));
      } else {
        push_simple(out, v, vid(kind_, x, target));
      }
    }
    return out;
  }
  std::vector<VertexId> orbit_reps() const override {
    if (degree_ == 3) return {vid(kind_, 0, 0), vid(kind_, 0, 1), vid(kind_, 0, 2), vid(kind_, 0, 4)};
    return {vid(kind_, 0, 0), vid(kind_, 0, 1), vid(kind_, 0, 3)};
  }
  Transitivity transitivity() const override { return Transitivity::QuasiTransitive; }
  bool is_simple() const override { return true; }
  bool has_cycle() const override { return true; }
  bool lower_bound_applies() const override { return false; }
  void validate(const VertexId& v) const override {
    require_family(v, kind_, spec().to_string());
    if (v.coords[1] < 0 || v.coords[1] > 5 || v.coords[2] != 0) {
      throw InvalidVertex("gadget-local index must be in [0, 5]");
    }
  }
  int arity() const override { return 2; }

 private:
  int degree_;
  FamilyKind kind_;
};

// Chain from parent(d, i) to (d, i): position 0 is the parent branch vertex,
// 1..2ℓ−2 are (d, i, p), 2ℓ−1 is (d, i, 0). Step k joins positions k and k+1;
// even steps are single edges, odd steps are bundles of Δ−1.
class InterpolationRule final : public GraphRule {
 public:
  InterpolationRule(int degree, int segment_length)
      : degree_(degree), ell_(segment_length), index_(degree) {}
  FamilySpec spec() const override { return {FamilyKind::TreeLoopInterpolation, degree_, ell_}; }
  int max_degree() const override { return degree_; }

  std::vector<Incidence> neighbors(const VertexId& v) const override {
    validate(v);
    std::vector<Incidence> out;
    out.reserve(static_cast<std::size_t>(degree_));
    const auto depth = v.coords[0];
    const auto index = v.coords[1];
    const auto pos = v.coords[2];
    if (pos == 0) {
      const auto adjacent = index_.adjacent(depth, index);
      for (std::size_t k = 0; k < adjacent.size(); ++k) {
        const auto& [d, i] = adjacent[k];
        const bool toward_parent = depth > 0 && k == 0;
        if (toward_parent) {
          push_simple(out, v, chain_vertex(depth, index, last_pos() - 1));
        } else {
          push_simple(out, v, chain_vertex(d, i, 1));
        }
      }
      return out;
    }
    push_step(out, v, chain_vertex(depth, index, pos - 1), pos - 1);
    push_step(out, v, chain_vertex(depth, index, pos + 1), pos);
    return out;
  }

  std::vector<VertexId> orbit_reps() const override {
    std::vector<VertexId> reps{vid(FamilyKind::TreeLoopInterpolation, 0, 0, 0)};
    // Chains are palindromic, so positions p and 2ℓ−1−p share an orbit.
    for (int p = 1; p <= ell_ - 1; ++p) reps.push_back(vid(FamilyKind::TreeLoopInterpolation, 1, 0, p));
    return reps;
  }
  Transitivity transitivity() const override {
    return ell_ == 1 ? Transitivity::VertexTransitive : Transitivity::QuasiTransitive;
  }
  bool is_simple() const override { return ell_ == 1 || degree_ == 2; }
  bool has_cycle() const override { return ell_ >= 2 && degree_ >= 3; }
  bool lower_bound_applies() const override { return true; }
  void validate(const VertexId& v) const override {
    require_family(v, FamilyKind::TreeLoopInterpolation, spec().to_string());
    if (!index_.valid(v.coords[0], v.coords[1])) throw InvalidVertex("bad tree coordinates in interp vertex");
    const auto pos = v.coords[2];
    if (pos < 0 || pos > last_pos() - 1) throw InvalidVertex("chain position out of range");
    if (pos > 0 && v.coords[0] == 0) throw InvalidVertex("the root carries no chain");
  }
  int arity() const override { return 3; }

 private:
  std::int64_t last_pos() const { return 2 * static_cast<std::int64_t>(ell_) - 1; }

  // Vertex at chain position p on the chain ending at tree vertex (d, i).
  VertexId chain_vertex(std::int64_t d, std::int64_t i, std::int64_t p) const {
    if (p == 0) {
      const auto [pd, pi] = index_.parent(d, i);
      return vid(FamilyKind::TreeLoopInterpolation, pd, pi, 0);
    }
    if (p == last_pos()) return vid(FamilyKind::TreeLoopInterpolation, d, i, 0);
    return vid(FamilyKind::TreeLoopInterpolation, d, i, p);
  }

  void push_step(std::vector<Incidence>& out, const VertexId& from, const VertexId& to, std::int64_t step) const {
    if (step % 2 == 0) {
      push_simple(out, from, to);
    } else {
      push_bundle(out, from, to, degree_ - 1);
    }
  }

  int degree_;
  int ell_;
  TreeIndex index_;
};

int parse_int(std::string_view token, std::string_view whole) {
  int value = 0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size() || token.empty()) {
    throw SpecError("bad family spec '" + std::string(whole) + "'; expected " + std::string(kFamilyGrammar));
  }
  return value;
}

void require_degree(int degree, std::string_view whole) {
  if (degree < 2 || degree > 64) {
    throw SpecError("degree must be in [2, 64] in '" + std::string(whole) + "'");
  }
}

}  // namespace

RulePtr make_ladder() { return std::make_shared<LadderRule>(); }
RulePtr make_hexagonal() { return std::make_shared<HexRule>(); }
RulePtr make_loop(int degree) {
  require_degree(degree, "loop:" + std::to_string(degree));
  return std::make_shared<LoopRule>(degree);
}
RulePtr make_tree(int degree) {
  require_degree(degree, "tree:" + std::to_string(degree));
  return std::make_shared<TreeRule>(degree);
}
RulePtr make_decorated_line3() { return std::make_shared<DecoratedLineRule>(3); }
RulePtr make_decorated_line4() { return std::make_shared<DecoratedLineRule>(4); }
RulePtr make_interpolation(int degree, int segment_length) {
  require_degree(degree, "interp");
  if (segment_length < 1 || segment_length > 1000) throw SpecError("segment length must be in [1, 1000]");
  return std::make_shared<InterpolationRule>(degree, segment_length);
}

RulePtr parse_family(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t colon = text.find(':', pos);
    parts.push_back(text.substr(pos, colon == std::string_view::npos ? std::string_view::npos : colon - pos));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  const auto bad = [&]() {
    return SpecError("unknown family '" + std::string(text) + "'; expected " + std::string(kFamilyGrammar));
  };
  const std::string_view head = parts[0];
  if (parts.size() == 1) {
    if (head == "ladder") return make_ladder();
    if (head == "hex") return make_hexagonal();
    if (head == "decor3") return make_decorated_line3();
    if (head == "decor4") return make_decorated_line4();
    throw bad();
  }
  if (parts.size() == 2 && (head == "loop" || head == "tree")) {
    const int degree = parse_int(parts[1], text);
    require_degree(degree, text);
    return head == "loop" ? make_loop(degree) : make_tree(degree);
  }
  if (parts.size() == 3 && head == "interp") {
    const int degree = parse_int(parts[1], text);
    const int ell = parse_int(parts[2], text);
    require_degree(degree, text);
    if (ell < 1 || ell > 1000) throw SpecError("segment length must be in [1, 1000] in '" + std::string(text) + "'");
    return make_interpolation(degree, ell);
  }
  throw bad();
}

}  // namespace sawlab
