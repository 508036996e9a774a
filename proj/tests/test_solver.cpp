#include <mps/generators.hpp>
#include <mps/lab.hpp>
#include <mps/solver.hpp>
#include <mps/variant.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace mps;

namespace {

void expect_optimal(const Graph& g, const std::string& variant, const Rational& want) {
  SolveResult r = solve_mps(g, parse_variant(variant));
  ASSERT_EQ(r.status, SolveStatus::Optimal) << variant;
  EXPECT_EQ(r.skewness, want) << variant;
  // The reported deletion set is a certificate: planar rest, matching weight.
  EdgeMask kept(static_cast<std::size_t>(g.num_edges()), true);
  for (EdgeId e : r.deleted) kept[e] = false;
  EXPECT_TRUE(is_planar(g, kept)) << variant;
  EXPECT_EQ(g.total_weight(r.deleted), r.skewness) << variant;
  EXPECT_LE(r.root_bound, to_double(want) + 1e-6) << variant;
}

}  // namespace

TEST(Solver, PlanarInputNeedsNoLp) {
  SolveResult r = solve_mps(complete_graph(4), VariantConfig{});
  EXPECT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.skewness, 0);
  EXPECT_EQ(r.kept.size(), 6u);
}

TEST(Solver, CompleteGraphsAcrossVariants) {
  for (const char* v : {"ε", "e", "c10", "c10 t0 i s w0", "c10 t1 k q", "c10 w1"}) {
    expect_optimal(complete_graph(5), v, 1);
    expect_optimal(complete_graph(6), v, 3);
    expect_optimal(complete_bipartite(3, 3), v, 1);
    expect_optimal(petersen_graph(), v, 2);
  }
}

TEST(Solver, MatchesOracleOnRandomGraphs) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 8; ++i) {
    Graph g = random_nonplanar_gnp(7 + i % 3, 0.5, 20, rng);
    Rational want = brute_force_skewness(g).skewness;
    for (const char* v : {"ε", "c5 t1 s", "c10 t0 w0 k"}) expect_optimal(g, v, want);
  }
}

TEST(Solver, MatchesOracleOnRationalWeights) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> num(1, 9), den(1, 4);
  for (int i = 0; i < 6; ++i) {
    Graph base = random_nonplanar_gnp(7, 0.6, 18, rng);
    Graph g(base.num_nodes());
    for (const auto& e : base.edges()) g.add_edge(e.u, e.v, Rational(num(rng), den(rng)));
    Rational want = brute_force_skewness(g).skewness;
    for (const char* v : {"ε", "c10 t1 i s w1 k q"}) expect_optimal(g, v, want);
  }
}

TEST(Solver, TimeAndNodeLimitsAreReported) {
  SolveLimits t;
  t.time_limit_seconds = 1e-9;
  EXPECT_EQ(solve_mps(complete_graph(8), parse_variant("ε"), t).status, SolveStatus::TimeLimit);
  SolveLimits n;
  n.node_limit = 1;
  SolveResult r = solve_mps(complete_graph(8), parse_variant("ε"), n);
  EXPECT_TRUE(r.status == SolveStatus::NodeLimit || r.status == SolveStatus::Optimal);
  EXPECT_LE(r.dual_bound, to_double(r.skewness) + 1e-9);
}

TEST(Solver, ObserverSeesEveryLpOptimumAndCut) {
  long optima = 0, cuts = 0;
  SolveObserver obs;
  obs.on_lp_optimum = [&](const ModelContext& ctx, std::span<const double> x) {
    ++optima;
    EXPECT_EQ(static_cast<int>(x.size()), ctx.lp.num_vars());
  };
  obs.on_cut = [&](const ModelContext&, const Row&) { ++cuts; };
  SolveResult r = solve_mps(generate("K3,3,2"), parse_variant("c10 s"), {}, {}, obs);
  EXPECT_EQ(r.skewness, 3);
  EXPECT_GT(optima, 0);
  EXPECT_GT(cuts, 0);
}

TEST(Solver, CirculantVariantsAgreeAndUseKuratowskiCycleRows) {
  // 40 edges is beyond the oracle; variants must agree with each other.
  Graph g = generate("C16(1,2,8)");
  SolveResult plain = solve_mps(g, parse_variant("c10"));
  SolveResult k = solve_mps(g, parse_variant("c10 k"));
  ASSERT_EQ(plain.status, SolveStatus::Optimal);
  ASSERT_EQ(k.status, SolveStatus::Optimal);
  EXPECT_EQ(plain.skewness, k.skewness);
  EXPECT_GE(k.root_bound, plain.root_bound - 1e-9);
  EXPECT_GT(k.cuts[RowClass::KuratowskiCycle], 0);
}

TEST(Solver, SeedIsRecorded) {
  SolverOptions o;
  o.seed = 42;
  EXPECT_EQ(solve_mps(complete_graph(5), VariantConfig{}, {}, o).seed, 42u);
}
