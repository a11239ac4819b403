#include "sawlab/saw.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <thread>
#include <unordered_set>

#include "sawlab/ball.hpp"
#include "sawlab/errors.hpp"

namespace sawlab {
namespace {

using Arc = LocalGraph::Arc;
using u128 = unsigned __int128;

struct BudgetExceeded {};

class NodeMeter {
 public:
  explicit NodeMeter(std::uint64_t budget) : budget_(budget) {}

  void add(std::uint64_t n) {
    const auto total = used_.fetch_add(n, std::memory_order_relaxed) + n;
    if (total > budget_) abort_.store(true, std::memory_order_relaxed);
    if (abort_.load(std::memory_order_relaxed)) throw BudgetExceeded{};
  }
  bool aborted() const { return abort_.load(std::memory_order_relaxed); }
  std::uint64_t used() const { return used_.load(); }

 private:
  std::uint64_t budget_;
  std::atomic<std::uint64_t> used_{0};
  std::atomic<bool> abort_{false};
};

// Local counter flushed to the shared meter in blocks.
class NodeTick {
 public:
  explicit NodeTick(NodeMeter& meter) : meter_(meter) {}
  void operator()() {
    if (++pending_ == kBlock) flush();
  }
  void flush() {
    const auto n = pending_;
    pending_ = 0;
    if (n) meter_.add(n);
  }

 private:
  static constexpr std::uint64_t kBlock = 1U << 16;
  NodeMeter& meter_;
  std::uint64_t pending_ = 0;
};

template <class W>
W to_weight(std::uint64_t m) {
  return static_cast<W>(m);
}

template <class W>
Count to_count(const W& w) {
  if constexpr (std::is_same_v<W, u128>) {
    Count hi = static_cast<std::uint64_t>(w >> 64);
    return (hi << 64) + static_cast<std::uint64_t>(w);
  } else {
    return Count(w);
  }
}

// Prefix tree down to the split depth, walked by one thread. Leaves at the
// split depth become independent tasks.
template <class W>
struct PrefixNode {
  int parent;
  int depth;
  std::int32_t vertex;
  W weight;
};

struct Problem {
  const LocalGraph* graph;
  std::vector<Arc> root_arcs;
  int n = 0;

  std::span<const Arc> arcs(std::int32_t u) const {
    return u == 0 ? std::span<const Arc>(root_arcs) : graph->arcs(u);
  }
};

template <class W>
std::vector<PrefixNode<W>> build_prefix_tree(const Problem& p, int split, NodeTick& tick,
                                             std::vector<std::uint8_t>& visited) {
  std::vector<PrefixNode<W>> nodes;
  nodes.push_back({-1, 0, 0, W(1)});
  std::function<void(int)> grow = [&](int idx) {
    tick();
    const auto node = nodes[static_cast<std::size_t>(idx)];
    if (node.depth == split) return;
    for (const Arc& a : p.arcs(node.vertex)) {
      if (visited[static_cast<std::size_t>(a.to)]) continue;
      nodes.push_back({idx, node.depth + 1, a.to, node.weight * to_weight<W>(a.multiplicity)});
      const int child = static_cast<int>(nodes.size()) - 1;
      visited[static_cast<std::size_t>(a.to)] = 1;
      grow(child);
      visited[static_cast<std::size_t>(a.to)] = 0;
    }
  };
  visited[0] = 1;
  grow(0);
  visited[0] = 0;
  return nodes;
}

template <class W>
void mark_path(const std::vector<PrefixNode<W>>& nodes, int idx, std::vector<std::uint8_t>& visited,
               std::uint8_t value) {
  for (int i = idx; i >= 0; i = nodes[static_cast<std::size_t>(i)].parent) {
    visited[static_cast<std::size_t>(nodes[static_cast<std::size_t>(i)].vertex)] = value;
  }
}

template <class Job>
void run_parallel(std::size_t task_count, unsigned threads, Job&& make_worker_job) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(task_count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&](unsigned worker) {
    try {
      auto job = make_worker_job(worker);
      for (std::size_t t = next.fetch_add(1); t < task_count; t = next.fetch_add(1)) job(t);
      job.finish();
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  if (threads <= 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

// Depth-first counter below a task prefix. The last level is counted from the
// free multiplicity of each penultimate vertex instead of being visited.
template <class W>
class SubtreeCounter {
 public:
  SubtreeCounter(const Problem& p, NodeMeter& meter)
      : p_(p), tick_(meter), visited_(p.graph->size(), 0), acc_(static_cast<std::size_t>(p.n) + 1, W(0)) {}

  void count_below(std::int32_t u, int depth, const W& w) { descend(u, depth, w); }
  std::vector<std::uint8_t>& visited() { return visited_; }
  std::vector<W>& acc() { return acc_; }
  void flush() { tick_.flush(); }

 private:
  void descend(std::int32_t u, int depth, const W& w) {
    tick_();
    const auto arcs = p_.graph->arcs(u);
    if (depth + 1 == p_.n) {
      std::uint64_t free = 0;
      for (const Arc& a : arcs) {
        if (!visited_[static_cast<std::size_t>(a.to)]) free += a.multiplicity;
      }
      if (free) acc_[static_cast<std::size_t>(p_.n)] += w * to_weight<W>(free);
      return;
    }
    for (const Arc& a : arcs) {
      const auto v = static_cast<std::size_t>(a.to);
      if (visited_[v]) continue;
      const W cw = a.multiplicity == 1 ? w : w * to_weight<W>(a.multiplicity);
      acc_[static_cast<std::size_t>(depth) + 1] += cw;
      visited_[v] = 1;
      descend(a.to, depth + 1, cw);
      visited_[v] = 0;
    }
  }

  const Problem& p_;
  NodeTick tick_;
  std::vector<std::uint8_t> visited_;
  std::vector<W> acc_;
};

template <class W>
std::vector<Count> count_plain(const Problem& p, const EnumOptions& opt, NodeMeter& meter) {
  std::vector<Count> result(static_cast<std::size_t>(p.n) + 1, 0);
  const int split = std::min(std::max(opt.split_depth, 1), p.n);
  std::vector<std::uint8_t> visited(p.graph->size(), 0);
  NodeTick tick(meter);
  const auto nodes = build_prefix_tree<W>(p, split, tick, visited);
  tick.flush();

  std::vector<W> head(static_cast<std::size_t>(p.n) + 1, W(0));
  std::vector<int> tasks;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    head[static_cast<std::size_t>(nodes[i].depth)] += nodes[i].weight;
    if (nodes[i].depth == split && split < p.n) tasks.push_back(static_cast<int>(i));
  }
  for (std::size_t k = 0; k < head.size(); ++k) result[k] += to_count(head[k]);

  std::mutex merge_mutex;
  struct Job {
    SubtreeCounter<W> counter;
    const std::vector<PrefixNode<W>>* nodes;
    const std::vector<int>* tasks;
    std::vector<Count>* result;
    std::mutex* merge_mutex;
    void operator()(std::size_t t) {
      const int idx = (*tasks)[t];
      const auto& node = (*nodes)[static_cast<std::size_t>(idx)];
      mark_path(*nodes, idx, counter.visited(), 1);
      counter.count_below(node.vertex, node.depth, node.weight);
      mark_path(*nodes, idx, counter.visited(), 0);
    }
    void finish() {
      counter.flush();
      std::lock_guard lock(*merge_mutex);
      for (std::size_t k = 0; k < counter.acc().size(); ++k) (*result)[k] += to_count(counter.acc()[k]);
    }
  };
  run_parallel(tasks.size(), opt.threads, [&](unsigned) {
    return Job{SubtreeCounter<W>(p, meter), &nodes, &tasks, &result, &merge_mutex};
  });
  return result;
}

// Counts nodes at depth ≤ n whose subtree reaches depth + lookahead.
template <class W>
class SubtreeExtender {
 public:
  SubtreeExtender(const Problem& p, int lookahead, NodeMeter& meter)
      : p_(p), lookahead_(lookahead), target_(p.n + lookahead), tick_(meter),
        visited_(p.graph->size(), 0), acc_(static_cast<std::size_t>(p.n) + 1, W(0)) {}

  // u is already marked visited at the given depth. Returns the deepest level reached.
  int explore(std::int32_t u, int depth, const W& w) {
    if (depth > p_.n) return reach_beyond(u, depth);
    tick_();
    int reach = depth;
    if (depth < target_) {
      for (const Arc& a : p_.arcs(u)) {
        const auto v = static_cast<std::size_t>(a.to);
        if (visited_[v]) continue;
        visited_[v] = 1;
        const int r = explore(a.to, depth + 1, w * to_weight<W>(a.multiplicity));
        visited_[v] = 0;
        reach = std::max(reach, r);
        if (depth == p_.n && reach >= target_) break;
      }
    }
    if (reach >= depth + lookahead_) acc_[static_cast<std::size_t>(depth)] += w;
    return reach;
  }

  std::vector<std::uint8_t>& visited() { return visited_; }
  std::vector<W>& acc() { return acc_; }
  void flush() { tick_.flush(); }

 private:
  int reach_beyond(std::int32_t u, int depth) {
    tick_();
    if (depth >= target_) return depth;
    int reach = depth;
    for (const Arc& a : p_.arcs(u)) {
      const auto v = static_cast<std::size_t>(a.to);
      if (visited_[v]) continue;
      visited_[v] = 1;
      reach = std::max(reach, reach_beyond(a.to, depth + 1));
      visited_[v] = 0;
      if (reach >= target_) break;
    }
    return reach;
  }

  const Problem& p_;
  int lookahead_;
  int target_;
  NodeTick tick_;
  std::vector<std::uint8_t> visited_;
  std::vector<W> acc_;
};

template <class W>
std::vector<Count> count_lookahead(const Problem& p, int lookahead, const EnumOptions& opt, NodeMeter& meter) {
  std::vector<Count> result(static_cast<std::size_t>(p.n) + 1, 0);
  const int split = std::min(std::max(opt.split_depth, 1), p.n);
  std::vector<std::uint8_t> visited(p.graph->size(), 0);
  NodeTick tick(meter);
  const auto nodes = build_prefix_tree<W>(p, split, tick, visited);
  tick.flush();

  std::vector<int> tasks;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].depth == split) tasks.push_back(static_cast<int>(i));
  }
  std::vector<int> reach(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) reach[i] = nodes[i].depth;

  std::mutex merge_mutex;
  struct Job {
    SubtreeExtender<W> ext;
    const std::vector<PrefixNode<W>>* nodes;
    const std::vector<int>* tasks;
    std::vector<int>* reach;
    std::vector<Count>* result;
    std::mutex* merge_mutex;
    void operator()(std::size_t t) {
      const int idx = (*tasks)[t];
      const auto& node = (*nodes)[static_cast<std::size_t>(idx)];
      mark_path(*nodes, idx, ext.visited(), 1);
      (*reach)[static_cast<std::size_t>(idx)] = ext.explore(node.vertex, node.depth, node.weight);
      mark_path(*nodes, idx, ext.visited(), 0);
    }
    void finish() {
      ext.flush();
      std::lock_guard lock(*merge_mutex);
      for (std::size_t k = 0; k < ext.acc().size(); ++k) (*result)[k] += to_count(ext.acc()[k]);
    }
  };
  run_parallel(tasks.size(), opt.threads, [&](unsigned) {
    return Job{SubtreeExtender<W>(p, lookahead, meter), &nodes, &tasks, &reach, &result, &merge_mutex};
  });

  // Children follow their parent in the node list, so a reverse sweep sees every
  // subtree before its root.
  for (std::size_t i = nodes.size(); i-- > 0;) {
    const auto& node = nodes[i];
    if (node.depth < split && reach[i] >= node.depth + lookahead) {
      result[static_cast<std::size_t>(node.depth)] += to_count(node.weight);
    }
    if (node.parent >= 0) {
      auto& pr = reach[static_cast<std::size_t>(node.parent)];
      pr = std::max(pr, reach[i]);
    }
  }
  return result;
}

// Any k-step count is at most Δ(Δ−1)^{k−1}, which bounds every weight and
// every accumulator; pick the narrowest exact integer type that fits.
enum class Width { U64, U128, Big };

Width choose_width(int max_degree, int n) {
  Count bound = 1;
  if (n >= 1) bound = Count(max_degree) * ipow(Count(std::max(max_degree - 1, 1)), static_cast<unsigned>(n - 1));
  bound *= 4;  // slack for sums across tasks
  if (bound < (Count(1) << 63)) return Width::U64;
  if (bound < (Count(1) << 127)) return Width::U128;
  return Width::Big;
}

std::vector<Arc> root_arcs_avoiding(const GraphRule& rule, const LocalGraph& g, const VertexId& root,
                                    const std::optional<EdgeRef>& avoid) {
  const auto base = g.arcs(0);
  std::vector<Arc> arcs(base.begin(), base.end());
  if (!avoid || g.radius() == 0) return arcs;  // radius 0: the root has no arcs to remove
  const auto other = g.index_of(avoid->other(root));
  for (auto it = arcs.begin(); it != arcs.end(); ++it) {
    if (other && it->to == *other) {
      if (--it->multiplicity == 0) arcs.erase(it);
      return arcs;
    }
  }
  throw PreconditionError("avoided edge " + rule.format_edge(*avoid) + " is not incident to the root");
}

struct Attempt {
  std::vector<Count> counts;
  std::uint64_t nodes = 0;
};

std::optional<Attempt> attempt(const GraphRule& rule, const VertexId& root, int n,
                               const std::optional<EdgeRef>& avoid, std::optional<int> lookahead,
                               const EnumOptions& opt) {
  const int radius = n + lookahead.value_or(0);
  const LocalGraph g(rule, root, radius, opt.max_ball_vertices);
  Problem p{&g, root_arcs_avoiding(rule, g, root, avoid), n};
  NodeMeter meter(opt.node_budget);
  Attempt out;
  if (n == 0 && !lookahead) {
    out.counts = {Count(1)};
    return out;
  }
  const int degree = std::max(g.max_degree(), rule.max_degree());
  try {
    switch (choose_width(degree, n)) {
      case Width::U64:
        out.counts = lookahead ? count_lookahead<std::uint64_t>(p, *lookahead, opt, meter)
                               : count_plain<std::uint64_t>(p, opt, meter);
        break;
      case Width::U128:
        out.counts = lookahead ? count_lookahead<u128>(p, *lookahead, opt, meter) : count_plain<u128>(p, opt, meter);
        break;
      case Width::Big:
        out.counts = lookahead ? count_lookahead<Count>(p, *lookahead, opt, meter) : count_plain<Count>(p, opt, meter);
        break;
    }
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
  out.nodes = meter.used();
  return out;
}

SawCountSeries enumerate(const GraphRule& rule, const VertexId& root, int n_max,
                         const std::optional<EdgeRef>& avoid, std::optional<int> lookahead,
                         const EnumOptions& opt) {
  if (n_max < 0) throw PreconditionError("n_max must be non-negative");
  rule.validate(root);
  SawCountSeries s;
  s.family = rule.name();
  s.root = root;
  s.avoided_edge = avoid;
  s.extendable_lookahead = lookahead;
  s.n_max = n_max;
  for (int n = n_max; n >= 0;) {
    std::optional<Attempt> result;
    try {
      result = attempt(rule, root, n, avoid, lookahead, opt);
    } catch (const LocalGraph::TooLarge& too_large) {
      n = std::min(n - 1, too_large.complete_radius - lookahead.value_or(0));
      continue;
    }
    if (result) {
      s.counts = std::move(result->counts);
      s.nodes = result->nodes;
      s.truncated = n < n_max;
      return s;
    }
    --n;
  }
  // Unreachable: n = 0 never exceeds the budget by more than one block.
  s.counts = {Count(1)};
  s.truncated = n_max > 0;
  return s;
}

}  // namespace

bool is_self_avoiding(const GraphRule& rule, const SawPrefix& walk) {
  if (walk.vertices.size() != walk.edges.size() + 1) return false;
  std::unordered_set<VertexId, VertexIdHash> seen;
  for (const auto& v : walk.vertices) {
    if (!seen.insert(v).second) return false;
  }
  for (std::size_t i = 0; i < walk.edges.size(); ++i) {
    const auto& e = walk.edges[i];
    if (!e.incident_to(walk.vertices[i]) || e.other(walk.vertices[i]) != walk.vertices[i + 1]) return false;
    const auto incs = rule.neighbors(walk.vertices[i]);
    if (std::none_of(incs.begin(), incs.end(), [&](const Incidence& inc) { return inc.edge == e; })) return false;
  }
  return true;
}

SawCountSeries count_saws(const GraphRule& rule, const VertexId& v, int n_max, const EnumOptions& options) {
  return enumerate(rule, v, n_max, std::nullopt, std::nullopt, options);
}

SawCountSeries count_saws_avoiding(const GraphRule& rule, const VertexId& u, const EdgeRef& e, int n_max,
                                   const EnumOptions& options) {
  rule.validate(u);
  if (!e.incident_to(u)) {
    throw PreconditionError("edge " + rule.format_edge(e) + " is not incident to " + rule.format_vertex(u));
  }
  const auto incs = rule.neighbors(u);
  if (std::none_of(incs.begin(), incs.end(), [&](const Incidence& inc) { return inc.edge == e; })) {
    throw PreconditionError("edge " + rule.format_edge(e) + " does not exist");
  }
  return enumerate(rule, u, n_max, e, std::nullopt, options);
}

SawCountSeries count_saws_midedge(const GraphRule& rule, const EdgeRef& e, int n_max, const EnumOptions& options) {
  if (n_max < 0) throw PreconditionError("n_max must be non-negative");
  rule.validate(e.lo);
  const auto incs = rule.neighbors(e.lo);
  if (std::none_of(incs.begin(), incs.end(), [&](const Incidence& inc) { return inc.edge == e; })) {
    throw PreconditionError("edge " + rule.format_edge(e) + " does not exist");
  }
  SawCountSeries s;
  s.family = rule.name();
  s.root_kind = RootKind::MidEdge;
  s.root = e.lo;
  s.root_edge = e;
  s.n_max = n_max;
  s.counts = {Count(1)};
  if (n_max == 0) return s;
  const auto a = enumerate(rule, e.lo, n_max - 1, e, std::nullopt, options);
  const auto b = enumerate(rule, e.hi, n_max - 1, e, std::nullopt, options);
  const int reached = std::min(a.n_reached(), b.n_reached());
  for (int k = 0; k <= reached; ++k) {
    s.counts.push_back(a.counts[static_cast<std::size_t>(k)] + b.counts[static_cast<std::size_t>(k)]);
  }
  s.truncated = a.truncated || b.truncated;
  s.nodes = a.nodes + b.nodes;
  return s;
}

SawCountSeries count_extendable(const GraphRule& rule, const VertexId& v, int n_max, int lookahead,
                                const EnumOptions& options) {
  if (lookahead < 1) throw PreconditionError("lookahead must be at least 1");
  return enumerate(rule, v, n_max, std::nullopt, lookahead, options);
}

}  // namespace sawlab
