#include "sawlab/symmetry.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "sawlab/errors.hpp"

namespace sawlab {
namespace {

bool fail(SymmetryReport& report, std::string message, const VertexId& v,
          std::optional<EdgeRef> e = std::nullopt) {
  report.pass = false;
  report.violation = std::move(message);
  report.witness_vertex = v;
  report.witness_edge = e;
  return false;
}

bool check_vertex(const GraphRule& rule, const VertexId& v, SymmetryReport& report) {
  const auto first = rule.neighbors(v);
  const auto second = rule.neighbors(v);
  if (first != second) return fail(report, "neighbor generator is not deterministic", v);
  if (static_cast<int>(first.size()) != rule.degree(v)) {
    return fail(report,
                "degree " + std::to_string(first.size()) + " differs from declared " +
                    std::to_string(rule.degree(v)),
                v);
  }
  std::map<std::pair<VertexId, VertexId>, std::uint32_t> multiplicity;
  std::map<EdgeRef, int> seen;
  for (const auto& inc : first) {
    if (inc.to == v) return fail(report, "loop edge", v, inc.edge);
    if (!inc.edge.incident_to(v) || inc.edge.other(v) != inc.to) {
      return fail(report, "edge endpoints do not match the incidence", v, inc.edge);
    }
    if (++seen[inc.edge] > 1) return fail(report, "edge listed twice", v, inc.edge);
    ++multiplicity[{inc.edge.lo, inc.edge.hi}];
  }
  for (const auto& inc : first) {
    if (inc.edge.parallel_index >= multiplicity[{inc.edge.lo, inc.edge.hi}]) {
      return fail(report, "parallel index exceeds multiplicity", v, inc.edge);
    }
    const auto back = rule.neighbors(inc.to);
    const bool mirrored = std::any_of(back.begin(), back.end(), [&](const Incidence& b) {
      return b.edge == inc.edge && b.to == v;
    });
    if (!mirrored) return fail(report, "reverse incidence missing at " + rule.format_vertex(inc.to), v, inc.edge);
  }
  return true;
}

}  // namespace

SymmetryReport verify_symmetry(const GraphRule& rule, int sample_radius) {
  if (sample_radius < 1) throw PreconditionError("sample_radius must be at least 1");
  SymmetryReport report;
  std::unordered_set<VertexId, VertexIdHash> done;
  for (const auto& rep : rule.orbit_reps()) {
    std::vector<VertexId> frontier{rep};
    std::unordered_set<VertexId, VertexIdHash> reached{rep};
    for (int d = 0; d <= sample_radius && !frontier.empty(); ++d) {
      std::vector<VertexId> next;
      for (const auto& v : frontier) {
        if (done.insert(v).second) {
          ++report.vertices_checked;
          if (!check_vertex(rule, v, report)) return report;
        }
        if (d == sample_radius) continue;
        for (const auto& inc : rule.neighbors(v)) {
          if (reached.insert(inc.to).second) next.push_back(inc.to);
        }
      }
      frontier = std::move(next);
    }
  }
  return report;
}

}  // namespace sawlab
