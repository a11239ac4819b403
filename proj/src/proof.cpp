#include "sawlab/proof.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "sawlab/errors.hpp"

namespace sawlab {

// ---- branch lemma ---------------------------------------------------------

BranchDecomposition decompose_branches(int delta, int branches) {
  if (delta < 3) throw PreconditionError("branch decomposition needs degree >= 3");
  if (branches < 0) throw PreconditionError("branch count must be >= 0");
  return {branches / (delta - 2), branches % (delta - 2)};
}

Count g_function(int delta, int branches) {
  const auto [alpha, beta] = decompose_branches(delta, branches);
  return Count(beta + 1) * ipow(Count(delta - 1), static_cast<unsigned>(alpha));
}

GInductionReport verify_g_induction(int delta_max, int branches_max) {
  if (delta_max < 3) throw PreconditionError("delta_max must be >= 3");
  if (branches_max < 1) throw PreconditionError("B_max must be >= 1");
  GInductionReport r;
  r.delta_max = delta_max;
  r.branches_max = branches_max;
  auto fail = [&](int d, int b, int gamma, std::string check, Count lhs, Count rhs) {
    r.failures.push_back(GInductionFailure{d, b, gamma, std::move(check), std::move(lhs), std::move(rhs)});
  };

  for (int d = 3; d <= delta_max; ++d) {
    const Count base = d - 1;
    std::vector<Count> g;
    for (int b = 0; b <= branches_max + d; ++b) g.push_back(g_function(d, b));

    for (int b = 1; b <= branches_max; ++b) {
      const auto [alpha, beta] = decompose_branches(d, b);
      for (int gamma = 1; gamma <= std::min(b, d - 2); ++gamma) {
        const Count lhs = Count(gamma + 1) * g[static_cast<std::size_t>(b - gamma)];
        ++r.inequalities;
        if (lhs < g[static_cast<std::size_t>(b)]) fail(d, b, gamma, "(gamma+1) g(B-gamma) >= g(B)", lhs, g[b]);

        // Same quantity from the closed forms of the two cases.
        Count closed;
        if (gamma <= beta) {
          closed = Count((gamma + 1) * (beta - gamma + 1)) * ipow(base, static_cast<unsigned>(alpha));
        } else {
          closed = Count((gamma + 1) * (d - 2 + beta - gamma + 1)) * ipow(base, static_cast<unsigned>(alpha - 1));
        }
        ++r.case_identities;
        if (closed != lhs) fail(d, b, gamma, gamma <= beta ? "case gamma <= beta" : "case gamma > beta", lhs, closed);
      }
    }
    for (int b = 0; b < branches_max; ++b) {
      ++r.invariants;
      if (g[static_cast<std::size_t>(b + 1)] < g[static_cast<std::size_t>(b)])
        fail(d, b + 1, 0, "g non-decreasing", g[b + 1], g[b]);
    }
    for (int b = 0; b <= branches_max; ++b) {
      ++r.invariants;
      const Count scaled = base * g[static_cast<std::size_t>(b)];
      if (g[static_cast<std::size_t>(b + d - 2)] != scaled)
        fail(d, b, 0, "g(B+D-2) = (D-1) g(B)", g[static_cast<std::size_t>(b + d - 2)], scaled);
    }
  }
  return r;
}

// ---- cutoff N -------------------------------------------------------------

std::optional<double> CutoffResult::bound() const {
  if (!N) return std::nullopt;
  const Count v = ipow(Count(degree - 1), static_cast<unsigned>(*N)) - 1;
  return nth_root(v, *N);
}

CutoffResult find_cutoff_N(const GraphRule& rule, int search_bound, const EnumOptions& options) {
  const int delta = rule.max_degree();
  if (delta < 3) throw PreconditionError("cutoff search needs degree >= 3");
  if (search_bound < 1) throw PreconditionError("search bound must be >= 1");
  CutoffResult r;
  r.family = rule.name();
  r.degree = delta;
  r.search_bound = search_bound;
  int reached = search_bound;
  for (const auto& u : rule.orbit_reps()) {
    for (const auto& inc : rule.neighbors(u)) {
      auto s = count_saws_avoiding(rule, u, inc.edge, search_bound, options);
      reached = std::min(reached, s.n_reached());
      r.truncated = r.truncated || s.truncated;
      r.pairs.push_back(CutoffPair{u, inc.edge, std::move(s)});
    }
  }
  const Count base = delta - 1;
  for (int n = 1; n <= reached && !r.N; ++n) {
    const Count limit = ipow(base, static_cast<unsigned>(n)) - 1;
    const bool all = std::all_of(r.pairs.begin(), r.pairs.end(), [&](const CutoffPair& p) {
      return p.series.counts[static_cast<std::size_t>(n)] <= limit;
    });
    if (all) r.N = n;
  }
  return r;
}

// ---- Menger ---------------------------------------------------------------

MengerResult menger_disjoint_paths(const GraphRule& rule, const VertexId& v, int n) {
  MengerResult res;
  res.ball = build_ball(rule, v, n);
  res.source = v;
  const BallGraph& ball = res.ball;
  const int sink = static_cast<int>(ball.vertices.size());
  auto node = [&](int x) { return x == BallGraph::kBoundary ? sink : x; };

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(sink) + 1);
  for (int i = 0; i < static_cast<int>(ball.edges.size()); ++i) {
    const auto& e = ball.edges[static_cast<std::size_t>(i)];
    adj[static_cast<std::size_t>(node(e.a))].push_back(i);
    adj[static_cast<std::size_t>(node(e.b))].push_back(i);
  }
  // flow[i] ∈ {−1, 0, 1}: +1 means one unit from a to b.
  std::vector<int> flow(ball.edges.size(), 0);
  auto head = [&](int i, int from) {
    const auto& e = ball.edges[static_cast<std::size_t>(i)];
    return node(e.a) == from ? node(e.b) : node(e.a);
  };
  auto residual = [&](int i, int from) {
    const auto& e = ball.edges[static_cast<std::size_t>(i)];
    return node(e.a) == from ? 1 - flow[static_cast<std::size_t>(i)] : 1 + flow[static_cast<std::size_t>(i)];
  };
  auto push = [&](int i, int from) {
    const auto& e = ball.edges[static_cast<std::size_t>(i)];
    flow[static_cast<std::size_t>(i)] += node(e.a) == from ? 1 : -1;
  };

  const int source = 0;
  for (;;) {
    std::vector<int> via(static_cast<std::size_t>(sink) + 1, -2);
    via[source] = -1;
    std::deque<int> queue{source};
    while (!queue.empty() && via[static_cast<std::size_t>(sink)] == -2) {
      const int x = queue.front();
      queue.pop_front();
      for (int i : adj[static_cast<std::size_t>(x)]) {
        const int y = head(i, x);
        if (via[static_cast<std::size_t>(y)] != -2 || residual(i, x) <= 0) continue;
        via[static_cast<std::size_t>(y)] = i;
        queue.push_back(y);
      }
    }
    if (via[static_cast<std::size_t>(sink)] == -2) break;
    for (int y = sink; y != source;) {
      const int i = via[static_cast<std::size_t>(y)];
      const int x = head(i, y);
      push(i, x);
      y = x;
    }
    ++res.flow_value;
  }

  // Decompose: follow unused flow-carrying edges from the source, cutting out
  // any cycle as soon as a vertex repeats.
  std::vector<bool> used(ball.edges.size(), false);
  auto outgoing = [&](int i, int from) {
    const auto& e = ball.edges[static_cast<std::size_t>(i)];
    const int f = flow[static_cast<std::size_t>(i)];
    return (node(e.a) == from && f == 1) || (node(e.b) == from && f == -1);
  };
  for (int p = 0; p < res.flow_value; ++p) {
    std::vector<int> verts{source};
    std::vector<int> edges;
    while (verts.back() != sink) {
      const int x = verts.back();
      int next_edge = -1;
      for (int i : adj[static_cast<std::size_t>(x)]) {
        if (!used[static_cast<std::size_t>(i)] && outgoing(i, x)) {
          next_edge = i;
          break;
        }
      }
      if (next_edge < 0) throw SawError("flow decomposition failed");
      used[static_cast<std::size_t>(next_edge)] = true;
      const int y = head(next_edge, x);
      const auto seen = std::find(verts.begin(), verts.end(), y);
      if (seen != verts.end()) {
        const auto keep = static_cast<std::size_t>(seen - verts.begin());
        verts.resize(keep + 1);
        edges.resize(keep);
      } else {
        verts.push_back(y);
        edges.push_back(next_edge);
      }
    }
    MengerPath path;
    for (std::size_t k = 0; k + 1 < verts.size(); ++k) path.vertices.push_back(ball.vertices[static_cast<std::size_t>(verts[k])]);
    for (int i : edges) {
      path.ball_edges.push_back(i);
      path.edges.push_back(ball.edges[static_cast<std::size_t>(i)].ref);
    }
    path.vertices.push_back(path.edges.back().other(path.vertices.back()));
    res.paths.push_back(std::move(path));
  }
  return res;
}

std::string validate_menger(const GraphRule& rule, const MengerResult& r) {
  if (static_cast<int>(r.paths.size()) != r.flow_value) return "flow value differs from the number of paths";
  std::set<EdgeRef> all_edges;
  for (const auto& p : r.paths) {
    if (p.vertices.size() != p.edges.size() + 1 || p.edges.empty()) return "malformed path";
    if (p.vertices.front() != r.source) return "path does not start at the source";
    std::set<VertexId> seen;
    for (std::size_t k = 0; k < p.edges.size(); ++k) {
      const VertexId& a = p.vertices[k];
      const VertexId& b = p.vertices[k + 1];
      const auto incs = rule.neighbors(a);
      if (std::none_of(incs.begin(), incs.end(), [&](const Incidence& i) { return i.edge == p.edges[k] && i.to == b; }))
        return "path uses a non-edge";
      if (!all_edges.insert(p.edges[k]).second) return "paths share an edge";
      if (!seen.insert(a).second) return "path revisits a vertex";
      const auto d = r.ball.index_of(a);
      if (!d || r.ball.distance[static_cast<std::size_t>(*d)] > r.ball.radius) return "path leaves the ball early";
    }
    if (r.ball.index_of(p.vertices.back())) return "path does not reach the boundary";
  }
  return {};
}

// ---- strictness -----------------------------------------------------------

std::string to_string(StrictnessStatus status) {
  switch (status) {
    case StrictnessStatus::Certified:
      return "certified";
    case StrictnessStatus::NotApplicable:
      return "not_applicable";
    case StrictnessStatus::Violated:
      return "violated";
    case StrictnessStatus::NotWitnessed:
      break;
  }
  return "not_witnessed";
}

StrictnessReport mu_strictness_report(const GraphRule& rule, const std::optional<GrowthEstimate>& estimate,
                                      int search_bound, const EnumOptions& options, double tolerance) {
  StrictnessReport r;
  r.family = rule.name();
  r.degree = rule.max_degree();
  if (estimate) {
    r.envelope = estimate->envelope();
    r.mu_hat = estimate->mu_hat();
  }
  if (!rule.has_cycle()) {
    r.status = StrictnessStatus::NotApplicable;
    r.detail = "family has no cycle";
    return r;
  }
  r.cutoff = find_cutoff_N(rule, search_bound, options);
  if (!r.cutoff.N) {
    r.status = StrictnessStatus::NotWitnessed;
    r.detail = "strictness not witnessed at this bound";
    return r;
  }
  r.bound = r.cutoff.bound();
  if (r.envelope) r.envelope_ok = *r.envelope <= *r.bound + tolerance;
  if (r.mu_hat) r.mu_hat_ok = *r.mu_hat <= *r.bound + tolerance;
  r.status = r.envelope_ok && r.mu_hat_ok ? StrictnessStatus::Certified : StrictnessStatus::Violated;
  r.detail = "mu <= ((D-1)^N - 1)^(1/N) with N = " + std::to_string(*r.cutoff.N);
  return r;
}

// ---- counting inequalities ------------------------------------------------

namespace {

std::vector<SawCountSeries> rep_series(const GraphRule& rule, int n, const EnumOptions& options) {
  std::vector<SawCountSeries> out;
  for (const auto& v : rule.orbit_reps()) out.push_back(count_saws(rule, v, n, options));
  return out;
}

}  // namespace

InequalityReport hammersley_suite(const GraphRule& rule, int n_max, const EnumOptions& options) {
  if (n_max < 1) throw PreconditionError("n_max must be >= 1");
  InequalityReport r;
  r.family = rule.name();
  r.name = "hammersley";
  r.n_max = n_max;
  auto check = [&](const VertexId& u, const SawCountSeries& su, const VertexId& v, const SawCountSeries& sv) {
    const int top = std::min(su.n_reached(), sv.n_reached() - 1);
    if (top < n_max) r.truncated = true;
    for (int n = 1; n <= top; ++n) {
      const auto& c = sv.counts;
      Count rhs = c[static_cast<std::size_t>(n) + 1] + c[static_cast<std::size_t>(n)];
      for (int m = 1; m <= n - 1; ++m) rhs += c[static_cast<std::size_t>(m)] * c[static_cast<std::size_t>(n - m)];
      ++r.checked;
      const Count& lhs = su.counts[static_cast<std::size_t>(n)];
      if (lhs > rhs) r.failures.push_back(InequalityFailure{u, v, n, 0, lhs, rhs});
    }
  };
  for (const auto& v : rule.orbit_reps()) {
    const auto sv = count_saws(rule, v, n_max + 1, options);
    std::vector<VertexId> done;
    for (const auto& inc : rule.neighbors(v)) {
      if (std::find(done.begin(), done.end(), inc.to) != done.end()) continue;
      done.push_back(inc.to);
      const auto su = count_saws(rule, inc.to, n_max + 1, options);
      check(inc.to, su, v, sv);
      check(v, sv, inc.to, su);
    }
  }
  return r;
}

InequalityReport submultiplicativity_suite(const GraphRule& rule, int total_max, const EnumOptions& options) {
  if (total_max < 2) throw PreconditionError("total_max must be >= 2");
  InequalityReport r;
  r.family = rule.name();
  r.name = "submultiplicativity";
  r.n_max = total_max;
  const auto reps = rule.orbit_reps();
  const auto series = rep_series(rule, total_max, options);
  int top = total_max;
  for (const auto& s : series) top = std::min(top, s.n_reached());
  r.truncated = top < total_max;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& c = series[i].counts;
    for (int m = 1; m < top; ++m) {
      for (int n = 1; m + n <= top; ++n) {
        Count sup = 0;
        for (const auto& s : series) sup = std::max(sup, s.counts[static_cast<std::size_t>(n)]);
        const Count rhs = c[static_cast<std::size_t>(m)] * sup;
        ++r.checked;
        if (c[static_cast<std::size_t>(m + n)] > rhs)
          r.failures.push_back(InequalityFailure{reps[i], reps[i], n, m, c[static_cast<std::size_t>(m + n)], rhs});
      }
    }
  }
  return r;
}

InequalityReport trivial_bound_suite(const GraphRule& rule, int n_max, const EnumOptions& options) {
  if (n_max < 1) throw PreconditionError("n_max must be >= 1");
  InequalityReport r;
  r.family = rule.name();
  r.name = "trivial_bound";
  r.n_max = n_max;
  const int delta = rule.max_degree();
  const auto reps = rule.orbit_reps();
  const auto series = rep_series(rule, n_max, options);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& s = series[i];
    if (s.n_reached() < n_max) r.truncated = true;
    for (int n = 1; n <= s.n_reached(); ++n) {
      const Count rhs = Count(delta) * ipow(Count(delta - 1), static_cast<unsigned>(n - 1));
      ++r.checked;
      if (s.counts[static_cast<std::size_t>(n)] > rhs)
        r.failures.push_back(InequalityFailure{reps[i], reps[i], n, 0, s.counts[static_cast<std::size_t>(n)], rhs});
    }
  }
  return r;
}

}  // namespace sawlab
