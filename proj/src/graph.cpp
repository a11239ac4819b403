#include "sawlab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "sawlab/errors.hpp"

namespace sawlab {

std::size_t VertexIdHash::operator()(const VertexId& v) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint64_t>(v.family);
  for (std::int64_t c : v.coords) {
    h ^= static_cast<std::uint64_t>(c) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h *= 0xBF58476D1CE4E5B9ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 31));
}

EdgeRef EdgeRef::between(const VertexId& a, const VertexId& b, std::uint32_t parallel_index) {
  if (a == b) throw InvalidVertex("loop edges are not allowed");
  EdgeRef e;
  e.lo = std::min(a, b);
  e.hi = std::max(a, b);
  e.parallel_index = parallel_index;
  return e;
}

const VertexId& EdgeRef::other(const VertexId& v) const {
  if (v == lo) return hi;
  if (v == hi) return lo;
  throw PreconditionError("edge is not incident to the given vertex");
}

std::string FamilySpec::to_string() const {
  switch (kind) {
    case FamilyKind::Ladder: return "ladder";
    case FamilyKind::Hexagonal: return "hex";
    case FamilyKind::Loop: return "loop:" + std::to_string(degree);
    case FamilyKind::Tree: return "tree:" + std::to_string(degree);
    case FamilyKind::DecoratedLine3: return "decor3";
    case FamilyKind::DecoratedLine4: return "decor4";
    case FamilyKind::TreeLoopInterpolation:
      return "interp:" + std::to_string(degree) + ":" + std::to_string(segment_length);
    case FamilyKind::Custom: return "custom";
  }
  return "custom";
}

int GraphRule::degree(const VertexId& v) const {
  validate(v);
  return max_degree();
}

bool GraphRule::is_regular() const {
  const int delta = max_degree();
  for (const auto& rep : orbit_reps()) {
    if (degree(rep) != delta) return false;
  }
  return true;
}

std::string GraphRule::format_vertex(const VertexId& v) const {
  std::string out;
  for (int i = 0; i < arity(); ++i) {
    if (i) out += ',';
    out += std::to_string(v.coords[static_cast<std::size_t>(i)]);
  }
  return out;
}

VertexId GraphRule::parse_vertex(std::string_view text) const {
  VertexId v;
  v.family = kind();
  int i = 0;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view token =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    if (i >= arity()) throw SpecError("too many coordinates in vertex '" + std::string(text) + "'");
    std::int64_t value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || end != token.data() + token.size() || token.empty()) {
      throw SpecError("bad coordinate '" + std::string(token) + "' in vertex '" + std::string(text) + "'");
    }
    v.coords[static_cast<std::size_t>(i++)] = value;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (i != arity()) {
    throw SpecError("vertex '" + std::string(text) + "' needs " + std::to_string(arity()) +
                    " coordinates for " + name());
  }
  try {
    validate(v);
  } catch (const InvalidVertex& err) {
    throw SpecError(err.what());
  }
  return v;
}

std::string GraphRule::format_edge(const EdgeRef& e) const {
  return format_vertex(e.lo) + "/" + format_vertex(e.hi) + "#" + std::to_string(e.parallel_index);
}

EdgeRef GraphRule::parse_edge(std::string_view text) const {
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) throw SpecError("edge spec needs '<u>/<v>[#k]': " + std::string(text));
  std::string_view rest = text.substr(slash + 1);
  std::uint32_t index = 0;
  if (const std::size_t hash = rest.find('#'); hash != std::string_view::npos) {
    const std::string_view idx = rest.substr(hash + 1);
    const auto [end, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), index);
    if (ec != std::errc() || end != idx.data() + idx.size() || idx.empty()) {
      throw SpecError("bad parallel index in edge spec: " + std::string(text));
    }
    rest = rest.substr(0, hash);
  }
  const VertexId a = parse_vertex(text.substr(0, slash));
  const VertexId b = parse_vertex(rest);
  if (a == b) throw SpecError("edge endpoints coincide: " + std::string(text));
  const EdgeRef wanted = EdgeRef::between(a, b, index);
  for (const auto& inc : neighbors(a)) {
    if (inc.edge == wanted) return wanted;
  }
  throw SpecError("no such edge in " + name() + ": " + std::string(text));
}

}  // namespace sawlab
