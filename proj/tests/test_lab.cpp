#include <mps/generators.hpp>
#include <mps/lab.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace mps;

namespace {

/// Plain exhaustive minimum over all 2^m deletion sets, for cross-checking the
/// best-first oracle on tiny graphs.
Rational exhaustive_skewness(const Graph& g) {
  const int m = g.num_edges();
  std::optional<Rational> best;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    EdgeMask kept(static_cast<std::size_t>(m));
    Rational w = 0;
    for (int e = 0; e < m; ++e) {
      kept[e] = !((mask >> e) & 1u);
      if (!kept[e]) w += g.edge(e).weight;
    }
    if (best && w >= *best) continue;
    if (is_planar(g, kept)) best = w;
  }
  return *best;
}

}  // namespace

TEST(Oracle, KnownValues) {
  EXPECT_EQ(brute_force_skewness(complete_graph(5)).skewness, 1);
  EXPECT_EQ(brute_force_skewness(complete_graph(6)).skewness, 3);
  EXPECT_EQ(brute_force_skewness(complete_graph(7)).skewness, 6);
  EXPECT_EQ(brute_force_skewness(complete_bipartite(3, 3)).skewness, 1);
  EXPECT_EQ(brute_force_skewness(complete_bipartite(3, 4)).skewness, 2);
  EXPECT_EQ(brute_force_skewness(petersen_graph()).skewness, 2);
  EXPECT_EQ(brute_force_skewness(complete_graph(4)).skewness, 0);
  EXPECT_THROW(brute_force_skewness(complete_graph(8)), OracleSizeError);
}

TEST(Oracle, MatchesExhaustiveSearchWithWeights) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> w(1, 5);
  for (int trial = 0; trial < 12; ++trial) {
    Graph base = random_nonplanar_gnp(6 + trial % 2, 0.7, 14, rng);
    Graph g(base.num_nodes());
    for (const auto& e : base.edges()) g.add_edge(e.u, e.v, Rational(w(rng), 1 + trial % 3));
    auto r = brute_force_skewness(g);
    EXPECT_EQ(r.skewness, exhaustive_skewness(g)) << "trial " << trial;
    EdgeMask kept(static_cast<std::size_t>(g.num_edges()), true);
    for (EdgeId e : r.deleted) kept[e] = false;
    EXPECT_TRUE(is_planar(g, kept));
    EXPECT_EQ(g.total_weight(r.deleted), r.skewness);
  }
}

TEST(Oracle, CollectsAllOptimalSets) {
  OracleOptions o;
  o.max_optimal_sets = 100;
  auto r = brute_force_skewness(complete_graph(5), o);
  // Any single edge of K5 can be deleted.
  EXPECT_EQ(r.optimal_sets.size(), 10u);
  EXPECT_TRUE(r.all_optimal_collected);
  auto k33 = brute_force_skewness(complete_bipartite(3, 3), o);
  EXPECT_EQ(k33.optimal_sets.size(), 9u);
}

TEST(ProofGraphs, Shapes) {
  EXPECT_EQ(proof_graph_k331().graph.num_edges(), 15);
  EXPECT_EQ(build_proof_graph("circulant16").graph.num_edges(), 40);
  auto s = build_proof_graph("subdivided", {{"k", 5}, {"mu", 9}});
  EXPECT_EQ(s.graph.num_edges(), 40);
  auto ce = proof_graph_cycle_edge();
  EXPECT_EQ(ce.node_sets.at("K7").size(), 7u);
  EXPECT_THROW(build_proof_graph("nope"), std::invalid_argument);
}

TEST(Certificates, InfeasibilityOfATinySystem) {
  LinearModel m;
  m.add_variable({"x", VarKind::Auxiliary, Rational(0), Rational(1), Rational(0), false});
  m.add_variable({"y", VarKind::Auxiliary, Rational(0), Rational(1), Rational(0), false});
  Row a;
  a.terms = {{0, 1}, {1, 1}};
  a.sense = Sense::GreaterEqual;
  a.rhs = Rational(3, 2);
  Row b;
  b.terms = {{0, 1}, {1, -1}};
  b.sense = Sense::Equal;
  b.rhs = 1;
  m.add_row(a);
  m.add_row(b);
  auto cert = certify_infeasible(m);
  EXPECT_TRUE(cert.infeasible);
  EXPECT_TRUE(cert.verified);
  EXPECT_EQ(cert.rows_used, 2);
  LinearModel ok;
  ok.add_variable({"x", VarKind::Auxiliary, Rational(0), Rational(1), Rational(0), false});
  Row half;
  half.terms = {{0, 1}};
  half.rhs = Rational(1, 2);
  ok.add_row(half);
  EXPECT_FALSE(certify_infeasible(ok).infeasible);
}

class ExtensionCertificate : public ::testing::TestWithParam<Extension> {};

TEST_P(ExtensionCertificate, PassesExactly) {
  StrengthCertificate c = verify_extension(GetParam());
  for (const auto& chk : c.checks) EXPECT_TRUE(chk.passed) << chk.name << ": " << chk.detail;
  EXPECT_TRUE(c.passed());
  EXPECT_FALSE(c.report.empty());
}

INSTANTIATE_TEST_SUITE_P(All, ExtensionCertificate, ::testing::ValuesIn(kAllExtensions),
                         [](const auto& info) {
                           std::string s = to_string(info.param);
                           std::replace(s.begin(), s.end(), '-', '_');
                           return s;
                         });

TEST(Certificates, GeneralizedEulerRaisesBoundToTwo) {
  StrengthCertificate c = certify_generalized_euler();
  EXPECT_EQ(c.objective, Rational(3, 2));
  EXPECT_EQ(parse_extension("generalized-euler"), Extension::GeneralizedEuler);
  EXPECT_THROW(parse_extension("euler-2"), std::invalid_argument);
}

TEST(Hierarchy, MonotoneOnSmallGraphs) {
  for (Graph g : {complete_graph(6), petersen_graph()}) {
    auto h = hierarchy_experiment(g, 3, 6);
    EXPECT_TRUE(h.monotone);
    ASSERT_EQ(h.points.size(), 4u);
    EXPECT_GT(h.pool_size, 0u);
  }
}
