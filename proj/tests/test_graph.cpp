#include <mps/generators.hpp>
#include <mps/graph.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace mps;

namespace {

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

/// Brute-force girth: shortest cycle among all enumerated cycles.
std::optional<int> girth_by_enumeration(const Graph& g) {
  auto cycles = enumerate_cycles_up_to(g, std::max(3, g.num_nodes()), 1u << 22);
  if (cycles.empty()) return std::nullopt;
  return cycles.front().length();
}

/// Brute-force bipartiteness: try every 2-colouring.
bool bipartite_by_enumeration(const Graph& g) {
  for (unsigned mask = 0; mask < (1u << g.num_nodes()); ++mask) {
    bool ok = true;
    for (const auto& e : g.edges()) ok = ok && (((mask >> e.u) & 1u) != ((mask >> e.v) & 1u));
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST(Graph, RejectsLoopsParallelEdgesAndBadWeights) {
  Graph g(3);
  g.add_edge(0, 1);
  EXPECT_THROW(g.add_edge(1, 0), std::invalid_argument);
  EXPECT_THROW(g.add_edge(2, 2), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 3), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 2, Rational(0)), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 2, Rational(-1, 2)), std::invalid_argument);
  EXPECT_EQ(g.add_edge(0, 2, Rational(1, 2)), 1);
  EXPECT_FALSE(g.integral_weights());
  EXPECT_EQ(g.total_weight(std::vector<EdgeId>{0, 1}), Rational(3, 2));
}

TEST(Graph, GirthKnownValues) {
  EXPECT_EQ(girth(complete_graph(4)), 3);
  EXPECT_EQ(girth(complete_bipartite(3, 3)), 4);
  EXPECT_EQ(girth(petersen_graph()), 5);
  EXPECT_EQ(girth(cycle_graph(7)), 7);
  EXPECT_EQ(girth(subdivided_complete(5, 9)), 12);
  EXPECT_FALSE(girth(path_graph(4)).has_value());
  EXPECT_FALSE(girth(Graph(3)).has_value());
}

TEST(Graph, GirthAndBipartitenessMatchEnumeration) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Graph g = gnp(7, 0.35, rng);
    EXPECT_EQ(girth(g), girth_by_enumeration(g)) << "trial " << trial;
    EXPECT_EQ(is_bipartite(g), bipartite_by_enumeration(g)) << "trial " << trial;
  }
}

TEST(Graph, CycleCountsOfCompleteGraphs) {
  // K_n has C(n, k) (k - 1)! / 2 cycles of length k.
  for (int n = 3; n <= 7; ++n) {
    Graph g = complete_graph(n);
    auto cycles = enumerate_cycles_up_to(g, n, 1u << 20);
    for (int k = 3; k <= n; ++k) {
      long expected = binomial(n, k) * factorial(k - 1) / 2;
      long got = std::count_if(cycles.begin(), cycles.end(), [&](const Cycle& c) { return c.length() == k; });
      EXPECT_EQ(got, expected) << "n=" << n << " k=" << k;
    }
    EXPECT_TRUE(std::is_sorted(cycles.begin(), cycles.end()));
    EXPECT_EQ(std::adjacent_find(cycles.begin(), cycles.end()), cycles.end());
  }
  EXPECT_THROW(enumerate_cycles_up_to(complete_graph(7), 7, 10), CycleBudgetExceeded);
}

TEST(Graph, CycleIsCanonicalUnderRotationAndReversal) {
  Graph g = complete_graph(5);
  Cycle a = Cycle::from_nodes(g, {3, 1, 4, 0});
  Cycle b = Cycle::from_nodes(g, {0, 4, 1, 3});
  Cycle c = Cycle::from_nodes(g, {1, 4, 0, 3});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(a.nodes().front(), 0);
  EXPECT_EQ(a.length(), 4);
  EXPECT_TRUE(a.contains_edge(*g.find_edge(1, 4)));
  EXPECT_FALSE(a.contains_edge(*g.find_edge(1, 0)));
  EXPECT_EQ(a.neighbors(4), std::make_pair(0, 1));
  EXPECT_THROW(Cycle::from_nodes(g, {0, 1}), std::invalid_argument);
  EXPECT_THROW(Cycle::from_nodes(g, {0, 1, 0, 2}), std::invalid_argument);
  EXPECT_THROW(Cycle::from_nodes(cycle_graph(4), {0, 1, 3}), std::invalid_argument);
}

TEST(Graph, ConflictingCycles) {
  Graph g = complete_graph(5);
  Cycle a = Cycle::from_nodes(g, {0, 1, 2, 3});
  EXPECT_TRUE(conflicting_cycles(a, Cycle::from_nodes(g, {0, 2, 1, 3})));
  EXPECT_FALSE(conflicting_cycles(a, Cycle::from_nodes(g, {3, 2, 1, 0})));
  // Three common nodes never conflict.
  EXPECT_FALSE(conflicting_cycles(Cycle::from_nodes(g, {0, 1, 2}), Cycle::from_nodes(g, {0, 2, 1, 4})));
  // Five common nodes, orders 0-1-2-3-4 and 0-2-4-1-3.
  EXPECT_TRUE(conflicting_cycles(Cycle::from_nodes(g, {0, 1, 2, 3, 4}), Cycle::from_nodes(g, {0, 2, 4, 1, 3})));
}

TEST(Graph, CyclicOrderOnThreeElementsIsUnique) {
  EXPECT_EQ(CyclicOrder({5, 1, 3}), CyclicOrder({3, 1, 5}));
  EXPECT_EQ(CyclicOrder({1, 2, 3, 4}).restricted_to(std::vector<NodeId>{1, 3, 4}), CyclicOrder({4, 3, 1}));
  EXPECT_NE(CyclicOrder({1, 2, 3, 4}), CyclicOrder({1, 3, 2, 4}));
}

TEST(Graph, InnerNodesOfTwoTriangles) {
  Graph g = complete_graph(4);
  Cycle a = Cycle::from_nodes(g, {0, 1, 2});
  Cycle b = Cycle::from_nodes(g, {0, 1, 3});
  EXPECT_TRUE(inner_nodes(a, b).empty());
  Graph sq(6);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {2, 3}, {3, 0}, {2, 4}, {4, 5}, {5, 0}}) sq.add_edge(u, v);
  // Cycles 0-1-2-3 and 0-1-2-4-5 share the path 0-1-2, whose inner node is 1.
  EXPECT_EQ(inner_nodes(Cycle::from_nodes(sq, {0, 1, 2, 3}), Cycle::from_nodes(sq, {0, 1, 2, 4, 5})),
            std::vector<NodeId>{1});
}

TEST(Graph, ChooseMaxCycleLength) {
  Graph k5 = complete_graph(5);
  auto sel = choose_max_cycle_length(k5, 11);
  EXPECT_EQ(sel.max_length, 4);
  EXPECT_EQ(sel.cycles.size(), 25u);
  EXPECT_FALSE(sel.capped);
  // Asking for more cycles than exist stops at the node count.
  auto all = choose_max_cycle_length(k5, 1000);
  EXPECT_EQ(all.max_length, 5);
  EXPECT_EQ(all.cycles.size(), 37u);
  CycleLimits tight;
  tight.max_length = 3;
  auto capped = choose_max_cycle_length(k5, 1000, tight);
  EXPECT_TRUE(capped.capped);
  EXPECT_EQ(capped.max_length, 3);
}

TEST(Graph, ComponentsAndBlocks) {
  Graph g(7);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}, {5, 6}}) g.add_edge(u, v);
  int count = 0;
  auto comp = connected_components(g, g.all_edges(), &count);
  EXPECT_EQ(count, 2);
  EXPECT_EQ(comp[0], comp[4]);
  EXPECT_NE(comp[0], comp[5]);
  EXPECT_FALSE(is_connected(g, g.all_edges()));
  auto blocks = biconnected_components(g, g.all_edges());
  EXPECT_EQ(blocks.size(), 3u);
}

TEST(Generators, SizesAndDegrees) {
  EXPECT_EQ(complete_graph(7).num_edges(), 21);
  EXPECT_EQ(complete_bipartite(3, 4).num_edges(), 12);
  int parts[] = {3, 3, 1};
  EXPECT_EQ(complete_multipartite(parts).num_edges(), 9 + 6);
  int jumps[] = {1, 2, 8};
  Graph c16 = circulant(16, jumps);
  EXPECT_EQ(c16.num_edges(), 40);
  int bad[] = {9};
  EXPECT_THROW(circulant(16, bad), std::invalid_argument);
  Graph p = petersen_graph();
  EXPECT_EQ(p.num_edges(), 15);
  for (NodeId v = 0; v < 10; ++v) EXPECT_EQ(p.degree(v), 3);
  Graph s = subdivided_complete(5, 9);
  EXPECT_EQ(s.num_nodes(), 5 + 10 * 3);
  EXPECT_EQ(s.num_edges(), 40);
  std::mt19937_64 rng(3);
  Graph r = random_regular(12, 4, rng);
  for (NodeId v = 0; v < 12; ++v) EXPECT_EQ(r.degree(v), 4);
  EXPECT_THROW(random_regular(5, 3, rng), std::invalid_argument);
}

TEST(Generators, Expressions) {
  EXPECT_EQ(generate("K6").num_edges(), 15);
  EXPECT_EQ(generate("K3,3").num_edges(), 9);
  EXPECT_EQ(generate("K3,3,1").num_edges(), 15);
  EXPECT_EQ(generate("K5^9").num_edges(), 40);
  EXPECT_EQ(generate("C16(1,2,8)").num_edges(), 40);
  EXPECT_EQ(generate("petersen").num_edges(), 15);
  EXPECT_EQ(generate("cycle(5)").num_edges(), 5);
  EXPECT_EQ(generate("regular(10,3)").num_edges(), 15);
  Graph a = generate("gnp(9,0.5)", 4), b = generate("gnp(9,0.5)", 4);
  EXPECT_EQ(a.num_edges(), b.num_edges());
  EXPECT_THROW(generate("wheel(5)"), std::invalid_argument);
  EXPECT_THROW(generate("cycle(5,6)"), std::invalid_argument);
}
