#include <gtest/gtest.h>

#include "oracle.hpp"
#include "sawlab/errors.hpp"
#include "sawlab/families.hpp"
#include "sawlab/saw.hpp"
#include "support.hpp"

using namespace sawlab;
using testing_support::as_u64;
using testing_support::oracle_coords;
using testing_support::oracle_graph;

namespace {

using U = std::vector<std::uint64_t>;

int oracle_vertex(const oracle::Graph& g, const GraphRule& rule, const VertexId& v) {
  if (rule.spec().kind == FamilyKind::Hexagonal) return g.at({0, 0});
  return g.at(oracle_coords(rule.spec(), v));
}

// Oracle edge id with the same endpoints and parallel index as e.
int oracle_edge(const oracle::Graph& g, const GraphRule& rule, const EdgeRef& e) {
  const int a = g.at(oracle_coords(rule.spec(), e.lo));
  const int b = g.at(oracle_coords(rule.spec(), e.hi));
  std::uint32_t k = 0;
  for (int id = 0; id < static_cast<int>(g.edges.size()); ++id) {
    const auto& [x, y] = g.edges[id];
    if ((x == a && y == b) || (x == b && y == a)) {
      if (k++ == e.parallel_index) return id;
    }
  }
  throw std::logic_error("edge missing from oracle graph");
}

struct FamilyCase {
  std::string family;
  int n;
};

const std::vector<FamilyCase> kOracleCases = {
    {"ladder", 14},   {"hex", 14},     {"loop:2", 12},     {"loop:3", 14},     {"loop:4", 14},
    {"loop:6", 10},   {"tree:3", 12},  {"tree:4", 9},      {"decor3", 16},     {"decor4", 12},
    {"interp:3:1", 11}, {"interp:3:2", 14}, {"interp:3:3", 16}, {"interp:4:2", 11},
};

}  // namespace

TEST(CountSaws, SmallExamples) {
  const auto tree = make_tree(3);
  EXPECT_EQ(as_u64(count_saws(*tree, tree->parse_vertex("0,0"), 3).counts), (U{1, 3, 6, 12}));
  const auto ladder = make_ladder();
  EXPECT_EQ(as_u64(count_saws(*ladder, ladder->parse_vertex("0,0"), 4).counts), (U{1, 3, 6, 12, 20}));
  const auto loop = make_loop(4);
  EXPECT_EQ(as_u64(count_saws(*loop, loop->parse_vertex("0"), 3).counts), (U{1, 4, 6, 12}));
}

TEST(CountSaws, MatchesOracleAtEveryRepresentative) {
  for (const auto& c : kOracleCases) {
    SCOPED_TRACE(c.family);
    const auto rule = parse_family(c.family);
    const auto g = oracle_graph(rule->spec(), c.n);
    for (const auto& v : rule->orbit_reps()) {
      const auto s = count_saws(*rule, v, c.n);
      EXPECT_FALSE(s.truncated);
      EXPECT_EQ(as_u64(s.counts), oracle::saw_counts(g, oracle_vertex(g, *rule, v), c.n)) << rule->format_vertex(v);
    }
  }
}

TEST(CountSaws, BaseTerms) {
  for (const auto& c : kOracleCases) {
    const auto rule = parse_family(c.family);
    for (const auto& v : rule->orbit_reps()) {
      const auto s = count_saws(*rule, v, 1);
      ASSERT_EQ(s.counts.size(), 2u);
      EXPECT_EQ(s.counts[0], 1);
      EXPECT_EQ(s.counts[1], rule->degree(v)) << c.family;
    }
  }
}

TEST(CountSaws, TrivialBound) {
  for (const auto& c : kOracleCases) {
    const auto rule = parse_family(c.family);
    const int delta = rule->max_degree();
    const auto s = count_saws(*rule, rule->orbit_reps().front(), c.n);
    Count bound = delta;
    for (int n = 1; n <= c.n; ++n) {
      EXPECT_LE(s.counts[n], bound) << c.family << " n=" << n;
      bound *= delta - 1;
    }
  }
}

TEST(CountSaws, LadderRootsAreEquivalent) {
  const auto rule = make_ladder();
  EXPECT_EQ(count_saws(*rule, rule->parse_vertex("0,0"), 16).counts,
            count_saws(*rule, rule->parse_vertex("7,1"), 16).counts);
}

TEST(CountSaws, ThreadCountDoesNotChangeCounts) {
  for (const std::string name : {"ladder", "hex", "interp:3:2", "decor4"}) {
    const auto rule = parse_family(name);
    const auto v = rule->orbit_reps().front();
    const auto one = count_saws(*rule, v, 18);
    for (unsigned t : {2u, 4u, 8u}) {
      EnumOptions o;
      o.threads = t;
      const auto many = count_saws(*rule, v, 18, o);
      EXPECT_EQ(one.counts, many.counts) << name << " threads=" << t;
      EXPECT_EQ(one.nodes, many.nodes);
    }
  }
}

TEST(CountSaws, BudgetTruncatesToCompletedPrefix) {
  const auto rule = make_hexagonal();
  const auto v = rule->orbit_reps().front();
  const auto full = count_saws(*rule, v, 20);
  EnumOptions o;
  o.node_budget = 20000;
  const auto cut = count_saws(*rule, v, 20, o);
  EXPECT_TRUE(cut.truncated);
  EXPECT_EQ(cut.n_max, 20);
  ASSERT_LT(cut.n_reached(), 20);
  ASSERT_GE(cut.n_reached(), 1);
  for (int n = 0; n <= cut.n_reached(); ++n) EXPECT_EQ(cut.counts[n], full.counts[n]);
}

TEST(CountSaws, LargeCountsDoNotOverflow) {
  // On LG_6 every walk from 0 runs straight left or right, alternating single
  // steps and bundles of 5; σ_60 = 2·5^30 > 2^64.
  const auto rule = make_loop(6);
  const auto s = count_saws(*rule, rule->parse_vertex("0"), 60);
  Count expected = 0;
  Count right = 1, left = 1;
  for (int k = 1; k <= 60; ++k) {
    right *= (k % 2 == 1) ? 5 : 1;
    left *= (k % 2 == 1) ? 1 : 5;
  }
  expected = right + left;
  EXPECT_EQ(s.counts[60], expected);
  EXPECT_GT(s.counts[60], Count(std::numeric_limits<std::uint64_t>::max()));
}

TEST(MidEdge, TreeFirstStep) {
  const auto rule = make_tree(3);
  const auto e = rule->parse_edge("0,0/1,0");
  const auto s = count_saws_midedge(*rule, e, 1);
  EXPECT_EQ(as_u64(s.counts), (U{1, 2}));
}

TEST(MidEdge, MatchesOracle) {
  struct Case {
    std::string family;
    std::string edge;
    int n;
  };
  for (const auto& c : std::vector<Case>{{"ladder", "0,0/0,1", 12}, {"ladder", "0,0/1,0", 12},
                                         {"loop:3", "0/1#1", 12}, {"loop:3", "-1/0", 12},
                                         {"decor3", "0,2/0,4", 10}, {"interp:3:2", "1,0,1/1,0,2#1", 12}}) {
    SCOPED_TRACE(c.family + " " + c.edge);
    const auto rule = parse_family(c.family);
    const auto e = rule->parse_edge(c.edge);
    const auto g = oracle_graph(rule->spec(), c.n + 2);
    EXPECT_EQ(as_u64(count_saws_midedge(*rule, e, c.n).counts),
              oracle::midedge_counts(g, oracle_edge(g, *rule, e), c.n));
  }
}

TEST(Avoiding, SmallExamples) {
  const auto tree = make_tree(3);
  EXPECT_EQ(as_u64(count_saws_avoiding(*tree, tree->parse_vertex("0,0"), tree->parse_edge("0,0/1,2"), 2).counts),
            (U{1, 2, 4}));
  const auto path = make_loop(2);
  EXPECT_EQ(as_u64(count_saws_avoiding(*path, path->parse_vertex("0"), path->parse_edge("0/1"), 5).counts),
            (U{1, 1, 1, 1, 1, 1}));
}

TEST(Avoiding, HexagonalFallsShortOfTwoToTheSix) {
  const auto rule = make_hexagonal();
  const auto s = count_saws_avoiding(*rule, rule->parse_vertex("0,0,0"), rule->parse_edge("0,0,0/0,0,1"), 6);
  const auto g = oracle::brick_wall(8);
  const int u = g.at({0, 0});
  int edge = -1;
  for (const auto& h : g.adj[u])
    if (h.to == g.at({1, 0})) edge = h.edge;
  const auto want = oracle::saw_counts_avoiding(g, u, edge, 6);
  EXPECT_EQ(as_u64(s.counts), want);
  EXPECT_LE(s.counts[6], 63);
  EXPECT_EQ(want[6], 60u);
}

TEST(Avoiding, MatchesOracle) {
  struct Case {
    std::string family;
    std::string root;
    std::string edge;
    int n;
  };
  for (const auto& c : std::vector<Case>{{"ladder", "0,0", "0,0/0,1", 12},
                                         {"ladder", "0,0", "-1,0/0,0", 12},
                                         {"loop:4", "0", "0/1#2", 12},
                                         {"decor4", "0,0", "0,0/0,1", 12},
                                         {"interp:4:2", "1,0,1", "1,0,1/1,0,2#0", 10}}) {
    SCOPED_TRACE(c.family + " " + c.edge);
    const auto rule = parse_family(c.family);
    const auto v = rule->parse_vertex(c.root);
    const auto e = rule->parse_edge(c.edge);
    const auto g = oracle_graph(rule->spec(), c.n + 2);
    EXPECT_EQ(as_u64(count_saws_avoiding(*rule, v, e, c.n).counts),
              oracle::saw_counts_avoiding(g, g.at(oracle_coords(rule->spec(), v)), oracle_edge(g, *rule, e), c.n));
  }
}

TEST(Avoiding, EdgeMustTouchRoot) {
  const auto rule = make_ladder();
  EXPECT_THROW(count_saws_avoiding(*rule, rule->parse_vertex("0,0"), rule->parse_edge("1,0/1,1"), 4),
               PreconditionError);
}

TEST(Extendable, DecoratedLineLosesGadgetWalks) {
  const auto rule = make_decorated_line3();
  const auto v = rule->parse_vertex("0,0");
  const auto plain = count_saws(*rule, v, 6);
  const auto ext = count_extendable(*rule, v, 6, 10);
  EXPECT_LT(ext.counts[6], plain.counts[6]);
  const auto g = oracle::decor3(20);
  EXPECT_EQ(as_u64(ext.counts), oracle::extendable_counts(g, g.at({0, 0}), 6, 10));
}

TEST(Extendable, LoopGraphKeepsEveryWalk) {
  const auto rule = make_loop(4);
  const auto v = rule->parse_vertex("0");
  EXPECT_EQ(count_extendable(*rule, v, 4, 8).counts, count_saws(*rule, v, 4).counts);
}

TEST(Extendable, MonotoneInLookaheadAndBelowPlainCounts) {
  for (const std::string name : {"decor3", "decor4", "ladder", "interp:3:2"}) {
    const auto rule = parse_family(name);
    const auto v = rule->orbit_reps().back();
    const auto plain = count_saws(*rule, v, 8);
    auto prev = plain.counts;
    for (int d : {1, 2, 4, 8, 12}) {
      const auto ext = count_extendable(*rule, v, 8, d);
      for (int n = 0; n <= 8; ++n) EXPECT_LE(ext.counts[n], prev[n]) << name << " D=" << d << " n=" << n;
      prev = ext.counts;
    }
  }
}

TEST(Extendable, MatchesOracle) {
  for (const std::string name : {"decor4", "ladder", "interp:3:3"}) {
    const auto rule = parse_family(name);
    const auto v = rule->orbit_reps().back();
    const auto g = oracle_graph(rule->spec(), 20);
    EXPECT_EQ(as_u64(count_extendable(*rule, v, 7, 6).counts),
              oracle::extendable_counts(g, g.at(oracle_coords(rule->spec(), v)), 7, 6))
        << name;
  }
}

TEST(SelfAvoiding, Checks) {
  const auto rule = make_ladder();
  SawPrefix p;
  p.vertices = {rule->parse_vertex("0,0"), rule->parse_vertex("1,0"), rule->parse_vertex("1,1")};
  p.edges = {rule->parse_edge("0,0/1,0"), rule->parse_edge("1,0/1,1")};
  EXPECT_TRUE(is_self_avoiding(*rule, p));
  p.vertices.push_back(rule->parse_vertex("0,1"));
  p.edges.push_back(rule->parse_edge("0,1/1,1"));
  p.vertices.push_back(rule->parse_vertex("0,0"));
  p.edges.push_back(rule->parse_edge("0,0/0,1"));
  EXPECT_FALSE(is_self_avoiding(*rule, p));
  SawPrefix gap;
  gap.vertices = {rule->parse_vertex("0,0"), rule->parse_vertex("2,0")};
  gap.edges = {rule->parse_edge("1,0/2,0")};
  EXPECT_FALSE(is_self_avoiding(*rule, gap));
}
