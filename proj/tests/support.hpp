#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "sawlab/cli.hpp"
#include "sawlab/graph.hpp"
#include "sawlab/saw.hpp"

namespace testing_support {

inline std::vector<std::uint64_t> as_u64(const std::vector<sawlab::Count>& counts) {
  std::vector<std::uint64_t> out;
  out.reserve(counts.size());
  for (const auto& c : counts) out.push_back(c.convert_to<std::uint64_t>());
  return out;
}

// Child-index word of tree vertex (depth, index).
inline std::vector<long> tree_word(int delta, std::int64_t depth, std::int64_t index) {
  std::vector<long> word(static_cast<std::size_t>(depth));
  for (std::int64_t d = depth; d >= 2; --d) {
    word[static_cast<std::size_t>(d - 1)] = static_cast<long>(index % (delta - 1));
    index /= (delta - 1);
  }
  if (depth >= 1) word[0] = static_cast<long>(index);
  return word;
}

// Coordinates of the matching vertex in the oracle graph. Hexagonal ids have
// no direct counterpart and are rejected.
inline std::vector<long> oracle_coords(const sawlab::FamilySpec& spec, const sawlab::VertexId& v) {
  using sawlab::FamilyKind;
  const auto& c = v.coords;
  switch (spec.kind) {
    case FamilyKind::Ladder:
    case FamilyKind::DecoratedLine3:
    case FamilyKind::DecoratedLine4:
      return {static_cast<long>(c[0]), static_cast<long>(c[1])};
    case FamilyKind::Loop:
      return {static_cast<long>(c[0])};
    case FamilyKind::Tree:
      return tree_word(spec.degree, c[0], c[1]);
    case FamilyKind::TreeLoopInterpolation: {
      auto word = tree_word(spec.degree, c[0], c[1]);
      if (c[2] != 0) word.push_back(-static_cast<long>(c[2]));
      return word;
    }
    default:
      throw std::invalid_argument("no oracle coordinates for this family");
  }
}

// Oracle graph large enough that walks of n steps from the origin region
// never reach its edge.
inline oracle::Graph oracle_graph(const sawlab::FamilySpec& spec, int n) {
  using sawlab::FamilyKind;
  switch (spec.kind) {
    case FamilyKind::Ladder: return oracle::ladder(n + 2);
    case FamilyKind::Hexagonal: return oracle::brick_wall(n + 2);
    case FamilyKind::Loop: return oracle::loop(spec.degree, n + 2);
    case FamilyKind::Tree: return oracle::tree(spec.degree, n + 2);
    case FamilyKind::DecoratedLine3: return oracle::decor3(n + 2);
    case FamilyKind::DecoratedLine4: return oracle::decor4(n + 2);
    case FamilyKind::TreeLoopInterpolation:
      return oracle::interpolation(spec.degree, spec.segment_length, n / (2 * spec.segment_length - 1) + 3);
    default: throw std::invalid_argument("no oracle graph for this family");
  }
}

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

inline CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = sawlab::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace testing_support
