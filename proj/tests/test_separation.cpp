#include <mps/generators.hpp>
#include <mps/separation.hpp>
#include <mps/variant.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace mps;

namespace {

ModelContext cycle_model(const Graph& g, int d, const std::string& flags = "") {
  VariantConfig cfg = parse_variant(flags);
  cfg.fixed_max_cycle_length = d;
  return build_model(g, cfg);
}

std::vector<double> zeros(const ModelContext& ctx) { return std::vector<double>(static_cast<std::size_t>(ctx.lp.num_vars()), 0.0); }

int cycle_of(const ModelContext& ctx, const Graph& g, std::vector<NodeId> nodes) {
  int idx = ctx.cycle_index(Cycle::from_nodes(g, std::move(nodes)));
  EXPECT_GE(idx, 0);
  return idx;
}

double best_violation(const SeparationReport& rep, RowClass cls) {
  double best = 0;
  for (const auto& r : rep.rows)
    if (r.row.cls == cls) best = std::max(best, r.violation);
  return best;
}

/// Every separator on the point `x`; Kuratowski-cycle uses the subdivisions
/// found by the Kuratowski separator.
std::vector<Row> separate_everything(const ModelContext& ctx, std::span<const double> x, std::mt19937_64& rng) {
  SeparationOptions opts;
  SeparationCache cache;
  std::vector<Row> rows;
  auto take = [&](const SeparationReport& rep) {
    for (const auto& r : rep.rows) rows.push_back(r.row);
  };
  auto kur = separate_kuratowski(ctx, x, opts, rng);
  take(kur);
  take(separate_generalized_euler(ctx, x, opts, rng));
  if (ctx.config.cycle_model()) {
    take(separate_cycle_edge(ctx, x, opts));
    take(separate_two_cycles_path(ctx, x, opts, TwoCyclesPath::Separate, cache));
    take(separate_two_cycles_path(ctx, x, opts, TwoCyclesPath::Combined, cache));
    take(separate_kuratowski_cycle(ctx, x, opts, kur.subdivisions, rng));
    take(separate_cycle_clique(ctx, x, opts, true, cache));
    take(separate_cycle_clique(ctx, x, opts, false, cache));
  }
  return rows;
}

bool satisfies_base_rows(const ModelContext& ctx, std::span<const Rational> w) {
  for (int i = 0; i < ctx.base_rows; ++i)
    if (ctx.lp.rows()[i].violation<Rational>(w) > 0) return false;
  return true;
}

}  // namespace

TEST(SeparateKuratowski, ExactOnIntegralPoints) {
  Graph g = complete_graph(5);
  ModelContext ctx = build_model(g, VariantConfig{});
  std::mt19937_64 rng(1);
  auto x = zeros(ctx);
  auto rep = separate_kuratowski(ctx, x, SeparationOptions{}, rng);
  ASSERT_FALSE(rep.rows.empty());
  EXPECT_EQ(rep.rows[0].row.terms.size(), 10u);
  EXPECT_EQ(rep.rows[0].row.rhs, 1);
  EXPECT_DOUBLE_EQ(rep.rows[0].violation, 1.0);
  // Deleting one edge makes the rounded graph planar: nothing to separate.
  x[ctx.s_var[0]] = 1;
  EXPECT_TRUE(separate_kuratowski(ctx, x, SeparationOptions{}, rng).rows.empty());
}

TEST(SeparateGeneralizedEuler, FindsSparseBoundsOnBipartiteAndHighGirthGraphs) {
  std::mt19937_64 rng(2);
  for (Graph g : {complete_bipartite(3, 4), petersen_graph()}) {
    ModelContext ctx = build_model(g, parse_variant("e"));
    auto x = zeros(ctx);
    auto rep = separate_generalized_euler(ctx, x, SeparationOptions{}, rng);
    EXPECT_GT(best_violation(rep, RowClass::GeneralizedEuler), 1.0 - 1e-9);
  }
}

TEST(SeparateCycleEdge, FindsViolatedPair) {
  Graph g = complete_graph(4);
  ModelContext ctx = cycle_model(g, 3);
  auto x = zeros(ctx);
  EdgeId e = *g.find_edge(0, 1);
  x[ctx.s_var[e]] = 0.5;
  x[ctx.c_var[cycle_of(ctx, g, {0, 1, 2})]] = 0.7;
  auto rep = separate_cycle_edge(ctx, x, SeparationOptions{});
  ASSERT_EQ(rep.rows.size(), 1u);
  EXPECT_NEAR(rep.rows[0].violation, 0.2, 1e-12);
}

TEST(SeparateTwoCyclesPath, FindsPathLeavingAnInnerNode) {
  // Cycles 0-1-2-3 and 0-1-2-4 share the path 0-1-2; the path 1-5-3 leaves
  // the inner node 1.
  Graph g(6);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {2, 3}, {3, 0}, {2, 4}, {4, 0}, {1, 5}, {5, 3}}) g.add_edge(u, v);
  ModelContext ctx = cycle_model(g, 4);
  auto x = zeros(ctx);
  x[ctx.c_var[cycle_of(ctx, g, {0, 1, 2, 3})]] = 0.8;
  x[ctx.c_var[cycle_of(ctx, g, {0, 1, 2, 4})]] = 0.8;
  for (auto mode : {TwoCyclesPath::Separate, TwoCyclesPath::Combined}) {
    SeparationCache cache;
    auto rep = separate_two_cycles_path(ctx, x, SeparationOptions{}, mode, cache);
    EXPECT_NEAR(best_violation(rep, RowClass::TwoCyclesPath), 0.6, 1e-9);
  }
}

TEST(SeparateCycleClique, FindsConflictingQuadrangles) {
  Graph g = complete_graph(5);
  ModelContext ctx = cycle_model(g, 4);
  auto x = zeros(ctx);
  x[ctx.c_var[cycle_of(ctx, g, {0, 1, 2, 3})]] = 0.6;
  x[ctx.c_var[cycle_of(ctx, g, {0, 2, 1, 3})]] = 0.6;
  for (bool maximal : {false, true}) {
    SeparationCache cache;
    auto rep = separate_cycle_clique(ctx, x, SeparationOptions{}, maximal, cache);
    EXPECT_NEAR(best_violation(rep, RowClass::CycleClique), 0.2, 1e-9);
  }
}

TEST(SeparateKuratowskiCycle, UsesAFractionalFaceCycle) {
  Graph g = complete_graph(5);
  ModelContext ctx = cycle_model(g, 5);
  auto x = zeros(ctx);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {2, 0}}) x[ctx.s_var[*g.find_edge(u, v)]] = 0.3;
  x[ctx.c_var[cycle_of(ctx, g, {0, 1, 2})]] = 0.9;
  std::mt19937_64 rng(3);
  auto kur = separate_kuratowski(ctx, x, SeparationOptions{}, rng);
  ASSERT_FALSE(kur.subdivisions.empty());
  auto rep = separate_kuratowski_cycle(ctx, x, SeparationOptions{}, kur.subdivisions, rng);
  EXPECT_NEAR(best_violation(rep, RowClass::KuratowskiCycle), 0.9, 1e-9);
}

TEST(Separation, RowsAreValidForPlanarSubgraphs) {
  // Points: the base LP optimum and random fractional points. Witnesses:
  // maximal planar subgraphs from random edge orders.
  std::mt19937_64 rng(4);
  std::vector<Graph> graphs = {complete_graph(6), complete_bipartite(3, 4), petersen_graph()};
  for (int i = 0; i < 3; ++i) graphs.push_back(random_nonplanar_gnp(8, 0.5, 20, rng));
  long pure_checked = 0, mixed_checked = 0;
  for (const auto& g : graphs) {
    ModelContext ctx = build_model(g, parse_variant("e c1 t1 s w1 k q"));
    std::vector<std::vector<Rational>> witnesses;
    for (int w = 0; w < 6; ++w) {
      std::vector<EdgeId> order(static_cast<std::size_t>(g.num_edges()));
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      EdgeMask kept = maximal_planar_subgraph(g, order);
      EdgeMask deleted(kept.size());
      for (std::size_t e = 0; e < kept.size(); ++e) deleted[e] = !kept[e];
      witnesses.push_back(planar_witness(ctx, deleted));
    }
    std::vector<std::vector<double>> points;
    Simplex<double> lp(ctx.lp);
    ASSERT_EQ(lp.solve(), LpStatus::Optimal);
    points.push_back(lp.solution().values);
    std::uniform_real_distribution<double> u(0, 1);
    for (int p = 0; p < 8; ++p) {
      std::vector<double> x(static_cast<std::size_t>(ctx.lp.num_vars()));
      for (auto& v : x) v = u(rng) * u(rng);
      points.push_back(std::move(x));
    }
    for (const auto& x : points)
      for (const Row& r : separate_everything(ctx, x, rng)) {
        bool pure = std::all_of(r.terms.begin(), r.terms.end(), [&](const Term& t) {
          return ctx.lp.var(t.var).kind == VarKind::EdgeDeletion;
        });
        for (const auto& w : witnesses) {
          if (!pure && !satisfies_base_rows(ctx, w)) continue;
          EXPECT_LE(r.violation<Rational>(w), 0) << to_string(r.cls) << " row violated by a planar witness";
          ++(pure ? pure_checked : mixed_checked);
        }
      }
  }
  EXPECT_GT(pure_checked, 0);
  EXPECT_GT(mixed_checked, 0);
}
