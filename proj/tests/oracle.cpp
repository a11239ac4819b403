#include "oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>

namespace oracle {

int Graph::vertex(const std::vector<long>& coords) {
  auto [it, fresh] = index.emplace(coords, size());
  if (fresh) adj.emplace_back();
  return it->second;
}

int Graph::at(const std::vector<long>& coords) const {
  auto it = index.find(coords);
  if (it == index.end()) throw std::out_of_range("oracle: no such vertex");
  return it->second;
}

void Graph::connect(int a, int b, int multiplicity) {
  for (int k = 0; k < multiplicity; ++k) {
    const int id = static_cast<int>(edges.size());
    edges.emplace_back(a, b);
    adj[a].push_back({id, b});
    adj[b].push_back({id, a});
  }
}

Graph ladder(int w) {
  Graph g;
  for (long x = -w; x <= w; ++x) {
    g.connect(g.vertex({x, 0}), g.vertex({x, 1}));
    if (x > -w) {
      g.connect(g.vertex({x - 1, 0}), g.vertex({x, 0}));
      g.connect(g.vertex({x - 1, 1}), g.vertex({x, 1}));
    }
  }
  return g;
}

Graph brick_wall(int r) {
  Graph g;
  for (long x = -r; x <= r; ++x)
    for (long y = -r; y <= r; ++y) g.vertex({x, y});
  for (long x = -r; x <= r; ++x) {
    for (long y = -r; y <= r; ++y) {
      if (x < r) g.connect(g.at({x, y}), g.at({x + 1, y}));
      if (y < r && (x + y) % 2 == 0) g.connect(g.at({x, y}), g.at({x, y + 1}));
    }
  }
  return g;
}

Graph loop(int delta, int w) {
  Graph g;
  for (long x = -w; x <= w; ++x) g.vertex({x});
  for (long x = -w; x < w; ++x) {
    const bool bundle = (x % 2 + 2) % 2 == 0;  // {2k, 2k+1}
    g.connect(g.at({x}), g.at({x + 1}), bundle ? delta - 1 : 1);
  }
  return g;
}

Graph tree(int delta, int depth) {
  Graph g;
  std::function<void(std::vector<long>&, int)> grow = [&](std::vector<long>& word, int d) {
    if (d == depth) return;
    const int parent = g.vertex(word);
    const int kids = word.empty() ? delta : delta - 1;
    for (long k = 0; k < kids; ++k) {
      word.push_back(k);
      g.connect(parent, g.vertex(word));
      grow(word, d + 1);
      word.pop_back();
    }
  };
  std::vector<long> root;
  g.vertex(root);
  grow(root, 0);
  return g;
}

Graph decor3(int w) {
  Graph g;
  for (long x = -w; x <= w; ++x) {
    const int v = g.vertex({x, 0});
    const int s = g.vertex({x, 1}), a = g.vertex({x, 2}), b = g.vertex({x, 3});
    const int c = g.vertex({x, 4}), d = g.vertex({x, 5});
    g.connect(v, s);
    g.connect(s, a);
    g.connect(s, b);
    // K4 on a, b, c, d without ab
    g.connect(a, c);
    g.connect(a, d);
    g.connect(b, c);
    g.connect(b, d);
    g.connect(c, d);
    if (x > -w) g.connect(g.at({x - 1, 0}), v);
  }
  return g;
}

Graph decor4(int w) {
  Graph g;
  for (long x = -w; x <= w; ++x) {
    const int v = g.vertex({x, 0});
    std::vector<int> k5;
    for (long k = 1; k <= 5; ++k) k5.push_back(g.vertex({x, k}));
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        if (!(i == 0 && j == 1)) g.connect(k5[i], k5[j]);
    g.connect(v, k5[0]);
    g.connect(v, k5[1]);
    if (x > -w) g.connect(g.at({x - 1, 0}), v);
  }
  return g;
}

Graph interpolation(int delta, int ell, int depth) {
  Graph g;
  std::function<void(std::vector<long>&, int)> grow = [&](std::vector<long>& word, int d) {
    if (d == depth) return;
    const int branch = g.vertex(word);
    const int kids = word.empty() ? delta : delta - 1;
    for (long k = 0; k < kids; ++k) {
      word.push_back(k);
      int prev = branch;
      for (long p = 1; p <= 2 * ell - 1; ++p) {
        std::vector<long> coords = word;  // the next branch vertex is named by its word alone
        if (p < 2 * ell - 1) coords.push_back(-p);
        const int next = g.vertex(coords);
        g.connect(prev, next, p % 2 == 1 ? 1 : delta - 1);
        prev = next;
      }
      grow(word, d + 1);
      word.pop_back();
    }
  };
  std::vector<long> root;
  g.vertex(root);
  grow(root, 0);
  return g;
}

namespace {

void count_from(const Graph& g, int v, int steps, int max_steps, std::vector<char>& seen, int banned_edge,
                std::vector<std::uint64_t>& counts) {
  ++counts[steps];
  if (steps == max_steps) return;
  for (const auto& h : g.adj[v]) {
    if (h.edge == banned_edge || seen[h.to]) continue;
    seen[h.to] = 1;
    count_from(g, h.to, steps + 1, max_steps, seen, banned_edge, counts);
    seen[h.to] = 0;
  }
}

bool continue_from(const Graph& g, int v, int steps, std::vector<char>& seen) {
  if (steps == 0) return true;
  for (const auto& h : g.adj[v]) {
    if (seen[h.to]) continue;
    seen[h.to] = 1;
    const bool ok = continue_from(g, h.to, steps - 1, seen);
    seen[h.to] = 0;
    if (ok) return true;
  }
  return false;
}

void count_extendable(const Graph& g, int v, int steps, int max_steps, int lookahead, std::vector<char>& seen,
                      std::vector<std::uint64_t>& counts) {
  if (continue_from(g, v, lookahead, seen)) ++counts[steps];
  if (steps == max_steps) return;
  for (const auto& h : g.adj[v]) {
    if (seen[h.to]) continue;
    seen[h.to] = 1;
    count_extendable(g, h.to, steps + 1, max_steps, lookahead, seen, counts);
    seen[h.to] = 0;
  }
}

std::vector<int> bfs(const Graph& g, int center) {
  std::vector<int> dist(g.size(), -1);
  std::deque<int> q{center};
  dist[center] = 0;
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    for (const auto& h : g.adj[v]) {
      if (dist[h.to] < 0) {
        dist[h.to] = dist[v] + 1;
        q.push_back(h.to);
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<std::uint64_t> saw_counts(const Graph& g, int root, int n) {
  return saw_counts_avoiding(g, root, -1, n);
}

std::vector<std::uint64_t> saw_counts_avoiding(const Graph& g, int root, int edge, int n) {
  std::vector<std::uint64_t> counts(n + 1, 0);
  std::vector<char> seen(g.size(), 0);
  seen[root] = 1;
  count_from(g, root, 0, n, seen, edge, counts);
  return counts;
}

std::vector<std::uint64_t> midedge_counts(const Graph& g, int edge, int n) {
  std::vector<std::uint64_t> counts(n + 1, 0);
  counts[0] = 1;
  if (n == 0) return counts;
  for (int end : {g.edges[edge].first, g.edges[edge].second}) {
    const auto part = saw_counts_avoiding(g, end, edge, n - 1);
    for (int k = 0; k < n; ++k) counts[k + 1] += part[k];
  }
  return counts;
}

std::vector<std::uint64_t> extendable_counts(const Graph& g, int root, int n, int lookahead) {
  std::vector<std::uint64_t> counts(n + 1, 0);
  std::vector<char> seen(g.size(), 0);
  seen[root] = 1;
  count_extendable(g, root, 0, n, lookahead, seen, counts);
  return counts;
}

bool has_continuation(const Graph& g, const std::vector<int>& blocked, int from, int edge, int steps) {
  std::vector<char> seen(g.size(), 0);
  for (int b : blocked) seen[b] = 1;
  const auto& [a, b] = g.edges[edge];
  const int to = a == from ? b : a;
  if (seen[to]) return false;
  seen[to] = 1;
  return continue_from(g, to, steps - 1, seen);
}

BallCounts ball_counts(const Graph& g, int center, int radius) {
  const auto dist = bfs(g, center);
  BallCounts c;
  for (int v = 0; v < g.size(); ++v)
    if (dist[v] >= 0 && dist[v] <= radius) ++c.interior_vertices;
  for (const auto& [a, b] : g.edges) {
    const bool ia = dist[a] >= 0 && dist[a] <= radius;
    const bool ib = dist[b] >= 0 && dist[b] <= radius;
    if (ia && ib) ++c.interior_edges;
    if (ia != ib) ++c.boundary_edges;
  }
  return c;
}

int ball_max_flow(const Graph& g, int center, int radius) {
  // Unit capacity in each direction of every undirected edge; sink = every
  // vertex at distance radius + 1. Augment with plain DFS.
  const auto dist = bfs(g, center);
  std::vector<int> used(g.edges.size(), 0);  // +1: first→second, −1: second→first
  auto residual = [&](int e, int from) {
    return g.edges[e].first == from ? used[e] < 1 : used[e] > -1;
  };
  int flow = 0;
  for (;;) {
    std::vector<int> via(g.size(), -2);
    via[center] = -1;
    int sink = -1;
    std::function<bool(int)> dfs = [&](int v) {
      if (dist[v] == radius + 1) {
        sink = v;
        return true;
      }
      for (const auto& h : g.adj[v]) {
        if (via[h.to] != -2 || !residual(h.edge, v) || dist[h.to] < 0 || dist[h.to] > radius + 1) continue;
        via[h.to] = h.edge;
        if (dfs(h.to)) return true;
      }
      return false;
    };
    if (!dfs(center)) break;
    for (int v = sink; v != center;) {
      const int e = via[v];
      const int u = g.edges[e].first == v ? g.edges[e].second : g.edges[e].first;
      used[e] += g.edges[e].first == u ? 1 : -1;
      v = u;
    }
    ++flow;
  }
  return flow;
}

std::uint64_t g_value(int delta, int branches) {
  int alpha = 0;
  while (branches >= delta - 2) {
    branches -= delta - 2;
    ++alpha;
  }
  std::uint64_t v = static_cast<std::uint64_t>(branches) + 1;
  for (int i = 0; i < alpha; ++i) v *= static_cast<std::uint64_t>(delta - 1);
  return v;
}

}  // namespace oracle
