#include <mps/lp.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace mps;

namespace {

Row row(std::vector<std::pair<int, int>> terms, Sense sense, Rational rhs) {
  Row r;
  for (auto [v, c] : terms) r.terms.push_back({v, Rational(c)});
  r.sense = sense;
  r.rhs = rhs;
  return r;
}

}  // namespace

TEST(Simplex, SingleLowerBoundRow) {
  LinearModel m;
  m.add_variable({"s1", VarKind::EdgeDeletion, Rational(0), Rational(1), Rational(1), false});
  m.add_row(row({{0, 1}}, Sense::GreaterEqual, 1));
  auto d = solve_lp<double>(m);
  ASSERT_EQ(d.status, LpStatus::Optimal);
  EXPECT_NEAR(d.objective, 1.0, 1e-9);
  auto q = solve_lp<Rational>(m);
  ASSERT_EQ(q.status, LpStatus::Optimal);
  EXPECT_EQ(q.objective, 1);
}

namespace {

struct Line {
  Rational a, b, c;  // a x + b y = c
};

/// Exact 2-variable LP by vertex enumeration over all pairs of boundary lines.
/// Variables are boxed in [0, 4], so the optimum is attained at a vertex.
std::optional<Rational> vertex_oracle(const std::vector<Row>& rows, Rational cx, Rational cy) {
  std::vector<Line> lines = {{1, 0, 0}, {1, 0, 4}, {0, 1, 0}, {0, 1, 4}};
  for (const auto& r : rows) {
    Rational a = 0, b = 0;
    for (const auto& t : r.terms) (t.var == 0 ? a : b) += t.coef;
    lines.push_back({a, b, r.rhs});
  }
  auto feasible = [&](const Rational& x, const Rational& y) {
    if (x < 0 || x > 4 || y < 0 || y > 4) return false;
    for (const auto& r : rows) {
      Rational lhs = 0;
      for (const auto& t : r.terms) lhs += t.coef * (t.var == 0 ? x : y);
      if (r.sense == Sense::GreaterEqual && lhs < r.rhs) return false;
      if (r.sense == Sense::LessEqual && lhs > r.rhs) return false;
      if (r.sense == Sense::Equal && lhs != r.rhs) return false;
    }
    return true;
  };
  std::optional<Rational> best;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Line &p = lines[i], &q = lines[j];
      Rational det = p.a * q.b - p.b * q.a;
      if (det == 0) continue;
      Rational x = (p.c * q.b - p.b * q.c) / det, y = (p.a * q.c - p.c * q.a) / det;
      if (!feasible(x, y)) continue;
      Rational z = cx * x + cy * y;
      if (!best || z < *best) best = z;
    }
  return best;
}

}  // namespace

TEST(Simplex, MatchesVertexEnumerationOnRandomTwoVariableLps) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coef(-4, 4), rhs(-6, 8), sense(0, 2);
  int infeasible = 0, optimal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    LinearModel m;
    Rational cx = coef(rng), cy = coef(rng);
    m.add_variable({"x", VarKind::Auxiliary, Rational(0), Rational(4), cx, false});
    m.add_variable({"y", VarKind::Auxiliary, Rational(0), Rational(4), cy, false});
    std::vector<Row> rows;
    int k = 1 + trial % 4;
    for (int i = 0; i < k; ++i) {
      Row r = row({{0, coef(rng)}, {1, coef(rng)}}, static_cast<Sense>(sense(rng)), rhs(rng));
      r.normalize();
      if (r.terms.empty()) continue;
      rows.push_back(r);
      m.add_row(r);
    }
    auto want = vertex_oracle(rows, cx, cy);
    auto q = solve_lp<Rational>(m);
    auto d = solve_lp<double>(m);
    if (!want) {
      ++infeasible;
      ASSERT_EQ(q.status, LpStatus::Infeasible) << "trial " << trial;
      EXPECT_TRUE(verify_farkas(m, q.farkas)) << "trial " << trial;
      EXPECT_EQ(d.status, LpStatus::Infeasible) << "trial " << trial;
    } else {
      ++optimal;
      ASSERT_EQ(q.status, LpStatus::Optimal) << "trial " << trial;
      EXPECT_EQ(q.objective, *want) << "trial " << trial;
      ASSERT_EQ(d.status, LpStatus::Optimal) << "trial " << trial;
      EXPECT_NEAR(d.objective, want->get_d(), 1e-9) << "trial " << trial;
    }
  }
  EXPECT_GT(infeasible, 10);
  EXPECT_GT(optimal, 100);
}

TEST(Simplex, AddedRowsReoptimizeLikeAFreshSolve) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(0, 3);
  for (int trial = 0; trial < 40; ++trial) {
    LinearModel m;
    for (int j = 0; j < 6; ++j) m.add_variable({"s", VarKind::EdgeDeletion, Rational(0), Rational(1), Rational(1 + j % 3), false});
    Simplex<Rational> inc(m);
    ASSERT_EQ(inc.solve(), LpStatus::Optimal);
    for (int i = 0; i < 5; ++i) {
      Row r;
      for (int j = 0; j < 6; ++j) r.terms.push_back({j, Rational(coef(rng))});
      r.sense = Sense::GreaterEqual;
      r.rhs = 1 + coef(rng);
      r.normalize();
      if (r.terms.empty()) continue;
      m.add_row(r);
      inc.add_row(m.rows().back());
      auto status = inc.solve();
      auto fresh = solve_lp<Rational>(m);
      ASSERT_EQ(status, fresh.status);
      if (status == LpStatus::Optimal) EXPECT_EQ(inc.objective(), fresh.objective);
      else EXPECT_TRUE(verify_farkas(m, inc.farkas()));
    }
  }
}

TEST(Simplex, FarkasCheckRejectsWrongMultipliers) {
  LinearModel m;
  m.add_variable({"x", VarKind::Auxiliary, Rational(0), Rational(1), Rational(0), false});
  m.add_row(row({{0, 1}}, Sense::GreaterEqual, 2));
  auto q = solve_lp<Rational>(m);
  ASSERT_EQ(q.status, LpStatus::Infeasible);
  EXPECT_TRUE(verify_farkas(m, q.farkas));
  std::vector<Rational> zero{Rational(0)};
  EXPECT_FALSE(verify_farkas(m, zero));
  std::vector<Rational> wrong_size;
  EXPECT_FALSE(verify_farkas(m, wrong_size));
}

TEST(Rational, ParsesFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-1.5e2"), Rational(-150));
  EXPECT_EQ(parse_rational("2.5e-1"), Rational(1, 4));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}
