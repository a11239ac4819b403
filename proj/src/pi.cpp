#include "sawlab/pi.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sawlab/detail/parallel.hpp"
#include "sawlab/errors.hpp"

namespace sawlab {

namespace {

struct BudgetHit {};

class Meter {
 public:
  explicit Meter(std::uint64_t limit) : limit_(limit) {}
  void tick() {
    if (++used_ > limit_) throw BudgetHit{};
  }

 private:
  std::uint64_t used_ = 0;
  std::uint64_t limit_;
};

bool contains(const std::vector<VertexId>& vs, const VertexId& v) {
  return std::find(vs.begin(), vs.end(), v) != vs.end();
}

void push_step(SawPrefix& walk, const Incidence& inc) {
  walk.vertices.push_back(inc.to);
  walk.edges.push_back(inc.edge);
}

void pop_step(SawPrefix& walk) {
  walk.vertices.pop_back();
  walk.edges.pop_back();
}

// Depth-first search for a self-avoiding extension of `walk` by `remaining`
// steps that avoids `blocked`. On success `walk` holds the extension.
bool extend(const GraphRule& rule, std::vector<VertexId>& blocked, SawPrefix& walk, int remaining,
            Meter& meter) {
  if (remaining == 0) return true;
  meter.tick();
  std::vector<VertexId> tried;
  for (const auto& inc : rule.neighbors(walk.end())) {
    if (contains(blocked, inc.to) || contains(tried, inc.to)) continue;
    tried.push_back(inc.to);
    blocked.push_back(inc.to);
    push_step(walk, inc);
    if (extend(rule, blocked, walk, remaining - 1, meter)) return true;
    pop_step(walk);
    blocked.pop_back();
  }
  return false;
}

bool edge_at(const GraphRule& rule, const VertexId& v, const EdgeRef& e) {
  const auto incs = rule.neighbors(v);
  return std::any_of(incs.begin(), incs.end(), [&](const Incidence& inc) { return inc.edge == e; });
}

void validate_prefix(const GraphRule& rule, const SawPrefix& prefix) {
  if (prefix.vertices.empty()) throw PreconditionError("prefix has no vertices");
  if (!is_self_avoiding(rule, prefix)) throw PreconditionError("prefix is not a self-avoiding walk");
}

}  // namespace

std::string to_string(Color color) {
  switch (color) {
    case Color::Blue:
      return "blue";
    case Color::Red:
      return "red";
    case Color::Unknown:
      break;
  }
  return "unknown";
}

std::string to_string(PiOutcome outcome) {
  switch (outcome) {
    case PiOutcome::CertifiedUpTo:
      return "certified";
    case PiOutcome::Violation:
      return "violation";
    case PiOutcome::Partial:
      break;
  }
  return "partial";
}

void validate_triple(const GraphRule& rule, const TraversedTriple& t) {
  validate_prefix(rule, t.prefix);
  if (t.prefix.edges.empty()) throw PreconditionError("a triple needs a prefix of at least one step");
  if (t.prefix.edges.back() != t.e) throw PreconditionError("prefix does not end with the entering edge e");
  if (t.e == t.e_prime) throw PreconditionError("e and e' must be distinct");
  if (!t.e_prime.incident_to(t.w()) || !edge_at(rule, t.w(), t.e_prime))
    throw PreconditionError("e' is not an edge at w");
}

ColorVerdict classify_at(const GraphRule& rule, const SawPrefix& prefix, const EdgeRef& e_dd, int depth,
                         std::uint64_t budget) {
  if (depth < 1) throw PreconditionError("colour depth must be >= 1");
  if (prefix.vertices.empty()) throw PreconditionError("prefix has no vertices");
  const VertexId& w = prefix.end();
  if (!e_dd.incident_to(w) || !edge_at(rule, w, e_dd)) throw PreconditionError("edge is not incident to w");
  if (std::find(prefix.edges.begin(), prefix.edges.end(), e_dd) != prefix.edges.end())
    throw PreconditionError("edge already lies on the prefix");

  ColorVerdict v;
  v.directed_edge = DirectedEdge{w, e_dd};
  v.depth = depth;
  const VertexId to = e_dd.other(w);
  if (contains(prefix.vertices, to)) {
    v.color = Color::Red;
    return v;
  }
  std::vector<VertexId> blocked = prefix.vertices;
  blocked.push_back(to);
  SawPrefix walk{{w, to}, {e_dd}};
  Meter meter(budget);
  try {
    if (extend(rule, blocked, walk, depth - 1, meter)) {
      v.color = Color::Blue;
      v.witness = std::move(walk);
    } else {
      v.color = Color::Red;
    }
  } catch (const BudgetHit&) {
    v.color = Color::Unknown;
    v.note = "search budget of " + std::to_string(budget) + " nodes exhausted";
  }
  return v;
}

ColorVerdict classify_edge(const GraphRule& rule, const TraversedTriple& triple, const EdgeRef& e_dd,
                           int depth, std::uint64_t budget) {
  validate_triple(rule, triple);
  if (e_dd == triple.e || e_dd == triple.e_prime) throw PreconditionError("e'' must differ from e and e'");
  return classify_at(rule, triple.prefix, e_dd, depth, budget);
}

bool validate_blue_witness(const GraphRule& rule, const SawPrefix& prefix, const ColorVerdict& verdict) {
  if (verdict.color != Color::Blue || !verdict.witness) return false;
  const SawPrefix& cont = *verdict.witness;
  if (cont.vertices.empty() || cont.vertices.front() != prefix.end()) return false;
  if (static_cast<int>(cont.edges.size()) < verdict.depth) return false;
  if (cont.edges.front() != verdict.directed_edge.edge) return false;
  const std::set<VertexId> on_prefix(prefix.vertices.begin(), prefix.vertices.end());
  for (std::size_t i = 1; i < cont.vertices.size(); ++i)
    if (on_prefix.count(cont.vertices[i]) != 0) return false;
  return is_self_avoiding(rule, cont);
}

// ---------------------------------------------------------------------------
// F-witness search

namespace {

class CandidateCollector {
 public:
  CandidateCollector(const GraphRule& rule, const SawPrefix& prefix, const EdgeRef& red, std::size_t want,
                     int path_bound, Meter& meter)
      : rule_(rule), prefix_(prefix), red_(red), want_(want), path_bound_(path_bound), meter_(meter) {}

  std::vector<FPair> run() {
    const VertexId& w = prefix_.end();
    const VertexId u = red_.other(w);
    if (contains(prefix_.vertices, u)) {
      found_.push_back(FPair{red_, red_, w, u, SawPrefix{{w}, {}}});
      return found_;
    }
    SawPrefix path{{w, u}, {red_}};
    visit(path);
    std::sort(found_.begin(), found_.end(), [](const FPair& a, const FPair& b) { return a.f < b.f; });
    return found_;
  }

 private:
  // Returns false once enough candidates are known.
  bool visit(SawPrefix& path) {
    meter_.tick();
    const VertexId x = path.end();
    const auto incs = rule_.neighbors(x);
    for (const auto& inc : incs) {
      if (inc.to == prefix_.end() || !contains(prefix_.vertices, inc.to)) continue;
      const bool known = std::any_of(found_.begin(), found_.end(), [&](const FPair& p) { return p.f == inc.edge; });
      if (known) continue;
      found_.push_back(FPair{red_, inc.edge, x, inc.to, path});
      if (found_.size() >= want_) return false;
    }
    if (static_cast<int>(path.length()) >= path_bound_) return true;
    std::vector<VertexId> tried;
    for (const auto& inc : incs) {
      if (contains(prefix_.vertices, inc.to) || contains(path.vertices, inc.to) || contains(tried, inc.to))
        continue;
      tried.push_back(inc.to);
      push_step(path, inc);
      const bool more = visit(path);
      pop_step(path);
      if (!more) return false;
    }
    return true;
  }

  const GraphRule& rule_;
  const SawPrefix& prefix_;
  const EdgeRef& red_;
  std::size_t want_;
  int path_bound_;
  Meter& meter_;
  std::vector<FPair> found_;
};

bool assign(const std::vector<std::vector<FPair>>& cands, std::size_t j, std::vector<const FPair*>& chosen) {
  if (j == cands.size()) return true;
  for (const auto& c : cands[j]) {
    const bool used = std::any_of(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(j),
                                  [&](const FPair* p) { return p->f == c.f; });
    if (used) continue;
    chosen[j] = &c;
    if (assign(cands, j + 1, chosen)) return true;
  }
  return false;
}

}  // namespace

FWitnessResult find_f_witness(const GraphRule& rule, const SawPrefix& prefix, const std::vector<EdgeRef>& red_edges,
                              int path_bound, std::uint64_t budget) {
  if (path_bound < 1) throw PreconditionError("path bound must be >= 1");
  validate_prefix(rule, prefix);
  const VertexId& w = prefix.end();
  for (const auto& e : red_edges)
    if (!e.incident_to(w)) throw PreconditionError("red edge is not incident to w");

  FWitnessResult result;
  if (red_edges.empty()) {
    result.status = SearchStatus::Found;
    return result;
  }
  Meter meter(budget);
  std::vector<std::vector<FPair>> cands;
  try {
    for (const auto& e : red_edges)
      cands.push_back(CandidateCollector(rule, prefix, e, red_edges.size(), path_bound, meter).run());
  } catch (const BudgetHit&) {
    result.status = SearchStatus::Indeterminate;
    return result;
  }
  std::vector<const FPair*> chosen(red_edges.size(), nullptr);
  if (assign(cands, 0, chosen)) {
    result.status = SearchStatus::Found;
    for (const FPair* p : chosen) result.witness.pairs.push_back(*p);
    return result;
  }
  result.status = SearchStatus::NotFound;
  for (std::size_t j = 0; j < red_edges.size(); ++j)
    if (cands[j].empty()) result.unmatched.push_back(red_edges[j]);
  if (result.unmatched.empty()) result.unmatched = red_edges;  // every edge has a candidate, but too few overall
  return result;
}

FWitnessResult find_f_witness(const GraphRule& rule, const TraversedTriple& triple,
                              const std::vector<EdgeRef>& red_edges, int path_bound, std::uint64_t budget) {
  validate_triple(rule, triple);
  for (const auto& e : red_edges)
    if (e == triple.e || e == triple.e_prime) throw PreconditionError("red edges must differ from e and e'");
  return find_f_witness(rule, triple.prefix, red_edges, path_bound, budget);
}

std::string validate_f_witness(const GraphRule& rule, const SawPrefix& prefix, const std::vector<EdgeRef>& red_edges,
                               const FWitness& witness, int path_bound) {
  const VertexId& w = prefix.end();
  const std::set<VertexId> on_prefix(prefix.vertices.begin(), prefix.vertices.end());
  if (witness.pairs.size() != red_edges.size()) return "witness size differs from the number of red edges";

  std::multiset<EdgeRef> reds(red_edges.begin(), red_edges.end());
  std::set<EdgeRef> fs;
  for (const auto& p : witness.pairs) {
    auto it = reds.find(p.red_edge);
    if (it == reds.end()) return "pair refers to an edge that is not red";
    reds.erase(it);
    if (!fs.insert(p.f).second) return "witness edges are not distinct";

    // f = ⟨x, y⟩ is an edge of the graph with y on the prefix, y ≠ w
    if (p.x == p.y || !p.f.incident_to(p.x) || !p.f.incident_to(p.y)) return "f does not join x and y";
    const auto at_x = rule.neighbors(p.x);
    if (std::none_of(at_x.begin(), at_x.end(), [&](const Incidence& i) { return i.edge == p.f && i.to == p.y; }))
      return "f is not an edge of the graph";
    if (on_prefix.count(p.y) == 0 || p.y == w) return "y is not a prefix vertex other than w";

    const SawPrefix& path = p.path;
    if (path.vertices.empty() || path.vertices.front() != w) return "connecting walk does not start at w";
    if (path.edges.empty()) {
      if (p.f != p.red_edge || p.x != w) return "empty connecting walk but f is not the red edge";
      continue;
    }
    if (path.edges.front() != p.red_edge) return "connecting walk does not start with its red edge";
    if (path.vertices.back() != p.x) return "connecting walk does not end at x";
    if (static_cast<int>(path.edges.size()) > path_bound) return "connecting walk longer than the path bound";
    if (path.vertices.size() != path.edges.size() + 1) return "connecting walk is malformed";
    std::set<VertexId> seen;
    for (std::size_t i = 0; i < path.vertices.size(); ++i) {
      if (!seen.insert(path.vertices[i]).second) return "connecting walk revisits a vertex";
      if (i > 0 && on_prefix.count(path.vertices[i]) != 0) return "connecting walk meets the prefix";
    }
    for (std::size_t i = 0; i < path.edges.size(); ++i) {
      const auto incs = rule.neighbors(path.vertices[i]);
      const bool ok = std::any_of(incs.begin(), incs.end(), [&](const Incidence& inc) {
        return inc.edge == path.edges[i] && inc.to == path.vertices[i + 1];
      });
      if (!ok) return "connecting walk uses a non-edge";
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Π_v certification

namespace {

struct NodeColors {
  std::vector<Incidence> incs;      // every edge at w except the entering one
  std::vector<ColorVerdict> verdicts;
  std::vector<EdgeRef> red;
  std::vector<std::size_t> blue;    // indices into incs
  std::size_t unknown = 0;
  std::uint64_t disagreements = 0;
};

NodeColors colour_node(const GraphRule& rule, const SawPrefix& prefix, int depth, std::uint64_t budget) {
  NodeColors nc;
  const std::optional<EdgeRef> entering =
      prefix.edges.empty() ? std::nullopt : std::optional<EdgeRef>(prefix.edges.back());
  for (const auto& inc : rule.neighbors(prefix.end())) {
    if (entering && inc.edge == *entering) continue;
    nc.incs.push_back(inc);
    nc.verdicts.push_back(classify_at(rule, prefix, inc.edge, depth, budget));
  }
  std::map<VertexId, Color> by_target;
  for (std::size_t i = 0; i < nc.incs.size(); ++i) {
    const Color c = nc.verdicts[i].color;
    auto [it, fresh] = by_target.emplace(nc.incs[i].to, c);
    if (!fresh && it->second != c && c != Color::Unknown && it->second != Color::Unknown) ++nc.disagreements;
    if (c == Color::Blue) nc.blue.push_back(i);
    if (c == Color::Red) nc.red.push_back(nc.incs[i].edge);
    if (c == Color::Unknown) ++nc.unknown;
  }
  return nc;
}

struct PiTaskResult {
  std::uint64_t prefixes = 0;
  std::uint64_t triples = 0;
  std::uint64_t reds = 0;
  std::uint64_t unknown = 0;
  std::uint64_t disagreements = 0;
  std::uint64_t validator_failures = 0;
  bool partial = false;
  std::optional<PiViolation> violation;
};

class PiWalker {
 public:
  PiWalker(const GraphRule& rule, const PiOptions& opt, bool cubic) : rule_(rule), opt_(opt), cubic_(cubic) {}

  // Returns false once a violation is recorded.
  bool visit(SawPrefix& prefix, PiTaskResult& out) {
    const NodeColors nc = colour_node(rule_, prefix, opt_.D, opt_.search_budget);
    out.unknown += nc.unknown;
    out.disagreements += nc.disagreements;
    if (nc.blue.empty()) {
      if (nc.unknown > 0) out.partial = true;
      return true;  // not extendable at this depth: no triple at w
    }
    ++out.prefixes;
    out.triples += nc.blue.size();
    if (nc.unknown > 0) {
      out.partial = true;
    } else {
      out.reds += nc.red.size();
      if (cubic_ && nc.red.size() > 1) throw SawError("cubic graph with more than one red edge at a vertex");
      const auto fw = find_f_witness(rule_, prefix, nc.red, opt_.P, opt_.search_budget);
      if (fw.status == SearchStatus::Found) {
        if (!validate_f_witness(rule_, prefix, nc.red, fw.witness, opt_.P).empty()) ++out.validator_failures;
      } else if (fw.status == SearchStatus::Indeterminate) {
        out.partial = true;
      } else {
        const EdgeRef e_prime = nc.incs[nc.blue.front()].edge;
        out.violation = PiViolation{TraversedTriple{prefix, prefix.edges.back(), e_prime}, nc.red, fw.unmatched};
        return false;
      }
    }
    if (static_cast<int>(prefix.length()) + 1 >= opt_.L) return true;
    for (std::size_t i : nc.blue) {
      push_step(prefix, nc.incs[i]);
      const bool go_on = visit(prefix, out);
      pop_step(prefix);
      if (!go_on) return false;
    }
    return true;
  }

 private:
  const GraphRule& rule_;
  const PiOptions& opt_;
  bool cubic_;
};

}  // namespace

PiCertificate check_pi(const GraphRule& rule, const VertexId& v, const PiOptions& opt) {
  if (opt.L < 1 || opt.D < 1 || opt.P < 1) throw PreconditionError("L, D and P must all be >= 1");
  rule.validate(v);
  PiCertificate cert;
  cert.family = rule.name();
  cert.vertex = v;
  cert.L = opt.L;
  cert.D = opt.D;
  cert.P = opt.P;
  cert.cubic = rule.max_degree() == 3;

  SawPrefix root{{v}, {}};
  const NodeColors rc = colour_node(rule, root, opt.D, opt.search_budget);
  cert.unknown_verdicts = rc.unknown;
  cert.parallel_disagreements = rc.disagreements;
  bool partial = rc.unknown > 0;

  std::vector<PiTaskResult> results(opt.L >= 2 ? rc.blue.size() : 0);
  detail::parallel_for(results.size(), opt.threads, [&](std::size_t t) {
    SawPrefix prefix{{v}, {}};
    push_step(prefix, rc.incs[rc.blue[t]]);
    PiWalker(rule, opt, cert.cubic).visit(prefix, results[t]);
  });
  for (auto& r : results) {
    cert.prefixes_checked += r.prefixes;
    cert.triples_checked += r.triples;
    cert.red_edges_seen += r.reds;
    cert.unknown_verdicts += r.unknown;
    cert.parallel_disagreements += r.disagreements;
    cert.validator_failures += r.validator_failures;
    partial = partial || r.partial;
    if (r.violation && !cert.violation) cert.violation = std::move(r.violation);
  }
  cert.outcome = cert.violation ? PiOutcome::Violation : partial ? PiOutcome::Partial : PiOutcome::CertifiedUpTo;
  return cert;
}

// ---------------------------------------------------------------------------
// Blue-count audit

namespace {

struct AuditTaskResult {
  std::uint64_t audited = 0;
  std::uint64_t inconclusive = 0;
  std::uint64_t accounting_failures = 0;
  std::uint64_t bound_failures = 0;
  int min_blue_total = -1;
  std::optional<AuditPrefix> first_failure;
};

class Auditor {
 public:
  Auditor(const GraphRule& rule, int n, int depth, std::uint64_t budget)
      : rule_(rule), n_(n), depth_(depth), budget_(budget), delta_(rule.max_degree()) {}

  void visit(SawPrefix& prefix, std::vector<NodeColors>& stack, AuditTaskResult& out) {
    stack.push_back(colour_node(rule_, prefix, depth_, budget_));
    if (static_cast<int>(prefix.length()) == 2 * n_) {
      leaf(prefix, stack, out);
    } else {
      const NodeColors& nc = stack.back();
      for (std::size_t i = 0; i < nc.incs.size(); ++i) {
        if (nc.verdicts[i].color == Color::Red) continue;
        push_step(prefix, nc.incs[i]);
        visit(prefix, stack, out);
        pop_step(prefix);
      }
    }
    stack.pop_back();
  }

 private:
  void leaf(const SawPrefix& prefix, const std::vector<NodeColors>& stack, AuditTaskResult& out) {
    const NodeColors& last = stack.back();
    if (last.blue.empty()) {
      if (last.unknown > 0) ++out.inconclusive;
      return;  // not extendable at depth D
    }
    AuditPrefix ap;
    ap.prefix = prefix;
    for (int s = 0; s < 2 * n_; ++s) {
      const NodeColors& nc = stack[static_cast<std::size_t>(s)];
      const EdgeRef& e_s = prefix.edges[static_cast<std::size_t>(s)];
      // Step 0 has no entering edge in nc; exclude the first other edge at v_0.
      bool augmented_skipped = s > 0;
      AuditStep step{s, 0, 0};
      int excluded = s > 0 ? 1 : 0;
      for (std::size_t i = 0; i < nc.incs.size(); ++i) {
        if (nc.incs[i].edge == e_s) {
          ++excluded;
          continue;
        }
        if (!augmented_skipped) {
          augmented_skipped = true;
          ++excluded;
          continue;
        }
        switch (nc.verdicts[i].color) {
          case Color::Blue:
            ++step.blue;
            break;
          case Color::Red:
            ++step.red;
            break;
          case Color::Unknown:
            ++out.inconclusive;
            return;
        }
      }
      const int deg = static_cast<int>(nc.incs.size()) + (s > 0 ? 1 : 0);
      if (step.red + step.blue != delta_ - 2 || step.red + step.blue + excluded != deg) ap.accounting_ok = false;
      ap.blue_total += step.blue;
      ap.steps.push_back(step);
    }
    ap.bound_ok = ap.blue_total >= n_ * (delta_ - 2);
    ++out.audited;
    if (!ap.accounting_ok) ++out.accounting_failures;
    if (!ap.bound_ok) ++out.bound_failures;
    if (out.min_blue_total < 0 || ap.blue_total < out.min_blue_total) out.min_blue_total = ap.blue_total;
    if ((!ap.accounting_ok || !ap.bound_ok) && !out.first_failure) out.first_failure = std::move(ap);
  }

  const GraphRule& rule_;
  int n_;
  int depth_;
  std::uint64_t budget_;
  int delta_;
};

}  // namespace

BlueCountAudit blue_count_audit(const GraphRule& rule, const VertexId& v, int n, int depth, unsigned threads,
                                std::uint64_t budget) {
  if (n < 1) throw PreconditionError("audit needs n >= 1");
  if (depth < 1) throw PreconditionError("colour depth must be >= 1");
  rule.validate(v);
  BlueCountAudit audit;
  audit.family = rule.name();
  audit.vertex = v;
  audit.n = n;
  audit.D = depth;

  SawPrefix root{{v}, {}};
  const NodeColors rc = colour_node(rule, root, depth, budget);
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < rc.incs.size(); ++i)
    if (rc.verdicts[i].color != Color::Red) starts.push_back(i);

  std::vector<AuditTaskResult> results(starts.size());
  detail::parallel_for(starts.size(), threads, [&](std::size_t t) {
    SawPrefix prefix{{v}, {}};
    std::vector<NodeColors> stack;
    stack.reserve(static_cast<std::size_t>(2 * n) + 2);  // visit() holds references into the stack
    stack.push_back(rc);
    push_step(prefix, rc.incs[starts[t]]);
    Auditor(rule, n, depth, budget).visit(prefix, stack, results[t]);
  });
  for (auto& r : results) {
    audit.prefixes_audited += r.audited;
    audit.prefixes_inconclusive += r.inconclusive;
    audit.accounting_failures += r.accounting_failures;
    audit.bound_failures += r.bound_failures;
    if (r.min_blue_total >= 0 && (audit.min_blue_total < 0 || r.min_blue_total < audit.min_blue_total))
      audit.min_blue_total = r.min_blue_total;
    if (r.first_failure && !audit.first_failure) audit.first_failure = std::move(r.first_failure);
  }
  return audit;
}

}  // namespace sawlab
