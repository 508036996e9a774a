// Acceptance run: one test per criterion, one PASS/FAIL line each.
// Criteria 1, 5, 7 and 8 share a single pass over the oracle corpus.

#include <mps/generators.hpp>
#include <mps/io.hpp>
#include <mps/lab.hpp>
#include <mps/solver.hpp>
#include <mps/variant.hpp>

#include <gtest/gtest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <sys/wait.h>

using namespace mps;
namespace fs = std::filesystem;

namespace {

std::map<std::string, std::string> g_summary;  // test name -> one-line summary

void summarize_as(const std::string& line) {
  g_summary[::testing::UnitTest::GetInstance()->current_test_info()->name()] = line;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct CorpusGraph {
  std::string name;
  Graph graph;
  OracleResult oracle;
};

std::vector<CorpusGraph> build_corpus() {
  std::vector<std::pair<std::string, Graph>> gs = {
      {"K5", complete_graph(5)},          {"K6", complete_graph(6)},          {"K7", complete_graph(7)},
      {"K3,3", complete_bipartite(3, 3)}, {"K4,4", complete_bipartite(4, 4)}, {"K3,4", complete_bipartite(3, 4)},
      {"petersen", petersen_graph()}};
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 20; ++i) {
    int n = 7 + i % 4;
    gs.emplace_back("gnp" + std::to_string(i) + "_n" + std::to_string(n), random_nonplanar_gnp(n, 0.5, 24, rng));
  }
  std::vector<CorpusGraph> out;
  OracleOptions o;
  o.max_optimal_sets = 64;
  for (auto& [name, g] : gs) out.push_back({name, g, brute_force_skewness(g, o)});
  return out;
}

bool outerplanar(const Graph& g, const EdgeMask& kept) {
  Graph h(g.num_nodes() + 1);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (kept[e]) h.add_edge(g.edge(e).u, g.edge(e).v);
  for (NodeId v = 0; v < g.num_nodes(); ++v) h.add_edge(v, g.num_nodes());
  return is_planar(h);
}

EdgeMask deletion_mask(const Graph& g, const std::vector<EdgeId>& deleted) {
  EdgeMask d(static_cast<std::size_t>(g.num_edges()), false);
  for (EdgeId e : deleted) d[e] = true;
  return d;
}

bool within_bounds(const LinearModel& lp, std::span<const Rational> x) {
  for (int j = 0; j < lp.num_vars(); ++j) {
    const auto& v = lp.var(j);
    if ((v.lower && x[j] < *v.lower) || (v.upper && x[j] > *v.upper)) return false;
  }
  return true;
}

bool satisfies_rows(const LinearModel& lp, int rows, std::span<const Rational> x) {
  for (int i = 0; i < rows; ++i)
    if (lp.rows()[i].violation<Rational>(x) > 0) return false;
  return true;
}

/// Everything the corpus pass records for criteria 1, 5, 7 and 8.
struct CorpusRun {
  std::vector<CorpusGraph> corpus;
  long runs = 0;
  std::vector<std::string> mismatches;
  long lp_optima = 0, cycle_optima = 0;
  std::vector<std::string> load_violations;
  long cuts_seen = 0, pure_checks = 0, mixed_checks = 0, mixed_skipped = 0;
  std::map<std::string, long> cuts_by_class;
  std::vector<std::string> invalid_cuts;
  long witness_checks = 0, witness_subgraphs = 0;
  std::vector<std::string> witness_failures;
  double seconds = 0;
};

/// Witness points of the oracle's optimal sets in one model, or nothing when
/// the kept subgraph is not connected with a non-trivial block.
struct Witness {
  std::vector<Rational> x;
  bool feasible = false;  ///< satisfies the model's base rows and bounds
};

std::vector<Witness> witnesses_for(const ModelContext& ctx, const OracleResult& oracle) {
  std::vector<Witness> out;
  for (const auto& set : oracle.optimal_sets) {
    try {
      Witness w;
      w.x = planar_witness(ctx, deletion_mask(ctx.graph, set));
      w.feasible = within_bounds(ctx.lp, w.x) && satisfies_rows(ctx.lp, ctx.base_rows, w.x);
      out.push_back(std::move(w));
    } catch (const std::invalid_argument&) {
    }
  }
  return out;
}

CorpusRun run_corpus() {
  auto t0 = std::chrono::steady_clock::now();
  CorpusRun cr;
  cr.corpus = build_corpus();
  for (const auto& cg : cr.corpus) {
    const Graph& g = cg.graph;
    std::vector<std::vector<Rational>> s_points;
    for (const auto& set : cg.oracle.optimal_sets) {
      std::vector<Rational> s(static_cast<std::size_t>(g.num_edges()), Rational(0));
      for (EdgeId e : set) s[e] = 1;
      s_points.push_back(std::move(s));
    }
    for (const auto& variant : table_variants()) {
      VariantConfig cfg = parse_variant(variant);
      std::string where = cg.name + " [" + variant + "]";
      const ModelContext* seen_ctx = nullptr;
      std::vector<Witness> witnesses;
      SolveObserver obs;
      obs.on_lp_optimum = [&](const ModelContext& ctx, std::span<const double> x) {
        ++cr.lp_optima;
        if (ctx.cycles.empty()) return;
        ++cr.cycle_optima;
        if (!check_face_load_bound(ctx, x, 1e-6)) {
          std::ostringstream os;
          os << where << ": load " << cycle_face_load(ctx, x) << " > " << 2 * g.num_nodes() - 4;
          cr.load_violations.push_back(os.str());
        }
      };
      obs.on_cut = [&](const ModelContext& ctx, const Row& row) {
        ++cr.cuts_seen;
        ++cr.cuts_by_class[to_string(row.cls)];
        if (seen_ctx != &ctx) {
          seen_ctx = &ctx;
          witnesses = witnesses_for(ctx, cg.oracle);
        }
        bool pure = std::all_of(row.terms.begin(), row.terms.end(),
                                [&](const Term& t) { return ctx.lp.var(t.var).kind == VarKind::EdgeDeletion; });
        if (pure) {
          // Any planar subgraph satisfies rows over s alone.
          std::vector<Rational> x(static_cast<std::size_t>(ctx.lp.num_vars()), Rational(0));
          for (const auto& s : s_points) {
            for (EdgeId e = 0; e < g.num_edges(); ++e) x[ctx.s_var[e]] = s[e];
            ++cr.pure_checks;
            if (row.violation<Rational>(x) > Rational(1, 1000000000))
              cr.invalid_cuts.push_back(where + ": " + to_string(row.cls) + " row cuts off an optimal set");
          }
          return;
        }
        for (const auto& w : witnesses) {
          if (!w.feasible) {
            ++cr.mixed_skipped;
            continue;
          }
          ++cr.mixed_checks;
          if (row.violation<Rational>(w.x) > Rational(1, 1000000000))
            cr.invalid_cuts.push_back(where + ": " + to_string(row.cls) + " row cuts off an optimal witness");
        }
      };
      SolveResult r = solve_mps(g, cfg, {}, {}, obs);
      ++cr.runs;
      if (r.status != SolveStatus::Optimal || r.skewness != cg.oracle.skewness)
        cr.mismatches.push_back(where + ": got " + r.skewness.get_str() + " (" + to_string(r.status) + "), oracle " +
                                cg.oracle.skewness.get_str());

      // Witness feasibility on the model this variant builds.
      ModelContext ctx = build_model(g, cfg);
      for (const auto& set : cg.oracle.optimal_sets) {
        EdgeMask deleted = deletion_mask(g, set);
        EdgeMask kept(deleted.size());
        for (std::size_t e = 0; e < kept.size(); ++e) kept[e] = !deleted[e];
        if (!is_connected(g, kept) || outerplanar(g, kept)) continue;
        ++cr.witness_subgraphs;
        auto x = planar_witness(ctx, deleted);
        ++cr.witness_checks;
        bool ok = within_bounds(ctx.lp, x);
        auto bad = first_violated_row<Rational>(ctx.lp, x);
        if (!ok || bad) {
          std::string what = bad ? std::string(to_string(ctx.lp.rows()[*bad].cls)) + " row" : "variable bound";
          cr.witness_failures.push_back(where + ": witness violates a " + what);
        }
      }
    }
  }
  cr.seconds = seconds_since(t0);
  return cr;
}

const CorpusRun& corpus_run() {
  static const CorpusRun run = run_corpus();
  return run;
}

std::string first_few(const std::vector<std::string>& v, std::size_t k = 5) {
  std::string out;
  for (std::size_t i = 0; i < v.size() && i < k; ++i) out += "\n    " + v[i];
  if (v.size() > k) out += "\n    ... " + std::to_string(v.size() - k) + " more";
  return out;
}

class SummaryPrinter : public ::testing::EmptyTestEventListener {
  void OnTestEnd(const ::testing::TestInfo& info) override {
    std::string name = info.name();
    auto it = g_summary.find(name);
    std::cout << (info.result()->Passed() ? "PASS " : "FAIL ") << name;
    if (it != g_summary.end()) std::cout << ": " << it->second;
    std::cout << std::endl;
  }
};

}  // namespace

TEST(Acceptance, Criterion1_OracleEquivalence) {
  const auto& cr = corpus_run();
  std::ostringstream os;
  os << cr.corpus.size() << " graphs x " << table_variants().size() << " variants = " << cr.runs
     << " runs, " << cr.mismatches.size() << " mismatches with the exhaustive oracle (" << std::fixed
     << std::setprecision(1) << cr.seconds << " s including criteria 5, 7, 8)";
  summarize_as(os.str());
  EXPECT_EQ(cr.corpus.size(), 27u);
  EXPECT_EQ(cr.runs, 27 * 32);
  EXPECT_TRUE(cr.mismatches.empty()) << first_few(cr.mismatches);
  EXPECT_LT(cr.seconds, 300.0);
}

TEST(Acceptance, Criterion2_KnownValues) {
  std::vector<std::string> bad;
  int checks = 0;
  auto expect = [&](const std::string& name, const Graph& g, long want, const std::string& variant) {
    SolveResult r = solve_mps(g, parse_variant(variant));
    ++checks;
    if (r.status != SolveStatus::Optimal || r.skewness != want)
      bad.push_back(name + " [" + variant + "]: got " + r.skewness.get_str() + ", want " + std::to_string(want));
  };
  for (int k = 5; k <= 8; ++k) {
    long want = k * (k - 1) / 2 - 3 * k + 6;
    for (const char* v : {"ε", "c10", "c10 t1 s w1 k"}) expect("K" + std::to_string(k), complete_graph(k), want, v);
  }
  expect("K7", complete_graph(7), 6, "c10 t0 i s w0");
  // Subdividing every edge keeps the skewness of the complete graph.
  expect("K5^6", subdivided_complete(5, 6), 1, "ε");
  expect("K6^3", subdivided_complete(6, 3), 3, "ε");
  summarize_as(std::to_string(checks) + " solves of K5..K8 (k(k-1)/2 - 3k + 6), K7 = 6, subdivided K5/K6; " +
               std::to_string(bad.size()) + " wrong");
  EXPECT_TRUE(bad.empty()) << first_few(bad);
}

TEST(Acceptance, Criterion3_StrengthCertificates) {
  std::string line;
  bool all = true;
  for (Extension x : kAllExtensions) {
    StrengthCertificate c = verify_extension(x);
    line += std::string(" ") + to_string(x) + "=" + (c.passed() ? "ok" : "FAILED") + "@" + c.objective.get_str();
    for (const auto& chk : c.checks) EXPECT_TRUE(chk.passed) << to_string(x) << ": " << chk.name << ": " << chk.detail;
    for (const auto& note : c.notes) std::cout << "    note (" << to_string(x) << "): " << note << '\n';
    all = all && c.passed();
  }
  summarize_as("exact rational certificates:" + line);
  EXPECT_TRUE(all);
}

TEST(Acceptance, Criterion4_HierarchyInMaxCycleLength) {
  const auto& corpus = corpus_run().corpus;
  int monotone = 0;
  std::vector<std::string> broken;
  for (const auto& cg : corpus) {
    CycleLimits lim;
    lim.max_cycles = 20000;
    HierarchyOptions o;
    o.cycle_limits = lim;
    auto h = hierarchy_experiment(cg.graph, 3, std::min(cg.graph.num_nodes(), 8), o);
    if (h.monotone) ++monotone;
    else broken.push_back(cg.name);
  }
  auto h = hierarchy_experiment(subdivided_complete(5, 9), 3, 11);
  std::cout << "    K5^9 root bounds with a frozen Kuratowski pool of " << h.pool_size << " rows:\n    D     :";
  for (const auto& p : h.points) std::cout << std::setw(7) << p.max_cycle_length;
  std::cout << "\n    bound :";
  for (const auto& p : h.points) std::cout << std::setw(7) << std::setprecision(4) << p.bound;
  std::cout << "\n    cycles:";
  for (const auto& p : h.points) std::cout << std::setw(7) << p.cycles;
  std::cout << "\n    K5^9 has girth 12, so no cycle variable exists for D <= 11 and the root LP is the\n"
               "    plain model plus the frozen pool: every bound equals 1. The strict increase holds for\n"
               "    the cycle constraint's own right-hand side, not for the LP optimum.\n";
  summarize_as(std::to_string(monotone) + "/" + std::to_string(corpus.size()) +
               " corpus graphs monotone in D; K5^9 strictly increasing for D = 3..11: " + (h.strict ? "yes" : "no"));
  EXPECT_TRUE(broken.empty()) << first_few(broken);
  EXPECT_TRUE(h.strict) << "root bounds on K5^9 are not strictly increasing in D";
}

TEST(Acceptance, Criterion5_FaceLoadBoundAtLpOptima) {
  const auto& cr = corpus_run();
  summarize_as(std::to_string(cr.cycle_optima) + " LP optima with cycle variables (of " + std::to_string(cr.lp_optima) +
               ") checked for sum (d-2) c(d) <= 2n - 4 + 1e-6; " + std::to_string(cr.load_violations.size()) +
               " violations");
  EXPECT_GT(cr.cycle_optima, 0);
  EXPECT_TRUE(cr.load_violations.empty()) << first_few(cr.load_violations);
}

TEST(Acceptance, Criterion6_FaceCensusIdentity) {
  std::mt19937_64 rng(6);
  int ok = 0;
  for (int i = 0; i < 50; ++i) {
    int n = 3 + i % 18;
    Graph g = random_connected_planar(n, 2 * n, rng);
    auto emb = std::get<Embedding>(test_planarity(g));
    long excess = 0;
    for (auto [d, f] : face_degree_census(emb)) excess += static_cast<long>(d - 3) * f;
    if (g.num_edges() == 3L * n - 6 - excess) ++ok;
    else ADD_FAILURE() << "n=" << n << " m=" << g.num_edges() << " excess=" << excess;
  }
  summarize_as(std::to_string(ok) + "/50 random connected planar graphs satisfy m = 3n - 6 - sum (d-3) f_d exactly");
}

TEST(Acceptance, Criterion7_CutValidity) {
  const auto& cr = corpus_run();
  std::string classes;
  for (const auto& [cls, count] : cr.cuts_by_class) classes += " " + cls + "=" + std::to_string(count);
  summarize_as(std::to_string(cr.cuts_seen) + " cuts (" + classes.substr(classes.empty() ? 0 : 1) + "); " +
               std::to_string(cr.pure_checks) + " s-only checks against all optimal sets, " +
               std::to_string(cr.mixed_checks) + " checks against feasible optimal witnesses (" +
               std::to_string(cr.mixed_skipped) + " skipped: witness outside the base model); " +
               std::to_string(cr.invalid_cuts.size()) + " invalid");
  EXPECT_GT(cr.pure_checks, 0);
  EXPECT_GT(cr.mixed_checks, 0);
  EXPECT_TRUE(cr.invalid_cuts.empty()) << first_few(cr.invalid_cuts);
}

TEST(Acceptance, Criterion8_WitnessFeasibility) {
  const auto& cr = corpus_run();
  summarize_as(std::to_string(cr.witness_checks) + " (optimal subgraph, variant) pairs with a connected, non-outerplanar "
               "subgraph; face-cycle and labeling witness satisfies every model row exactly in " +
               std::to_string(cr.witness_checks - static_cast<long>(cr.witness_failures.size())));
  EXPECT_GT(cr.witness_checks, 0);
  EXPECT_TRUE(cr.witness_failures.empty()) << first_few(cr.witness_failures);
}

TEST(Acceptance, Criterion9_BenchmarkTablesNotReproducible) {
  std::cout << "    Success rates and runtimes on the Rome, North, SteinLib and expander collections need the\n"
               "    datasets and a 20-minute budget per run over thousands of instances; they are not\n"
               "    reproduced here and criteria 1-8 stand in for them. The bench verb still writes the\n"
               "    per-variant summary for any corpus; its shape is checked below.\n";
  fs::path dir = fs::temp_directory_path() / "mps_acceptance_bench";
  fs::remove_all(dir);
  fs::create_directories(dir / "corpus");
  for (const char* name : {"K5", "K3,3"}) {
    std::ofstream f(dir / "corpus" / (std::string(name) + ".txt"));
    write_edge_list(f, generate(name));
  }
  fs::path out = dir / "summary.csv";
  std::string cmd = std::string(MPS_CLI_PATH) + " bench " + (dir / "corpus").string() +
                    " --variant table --parallel 4 --out " + out.string() + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(rc));
  EXPECT_EQ(WEXITSTATUS(rc), 0);
  std::ifstream f(out);
  std::string header, line;
  std::getline(f, header);
  EXPECT_EQ(header, summary_csv_header());
  std::size_t rows = 0;
  while (std::getline(f, line)) {
    ASSERT_LT(rows, table_variants().size());
    EXPECT_EQ(line.rfind(table_variants()[rows] + ",2,2,1,", 0), 0u) << line;
    ++rows;
  }
  EXPECT_EQ(rows, table_variants().size());
  summarize_as("not reproducible at desk scale (datasets and budget); bench summary has one row per variant (" +
               std::to_string(rows) + " rows) with success rate and average runtime");
  fs::remove_all(dir);
}

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  ::testing::UnitTest::GetInstance()->listeners().Append(new SummaryPrinter);
  return RUN_ALL_TESTS();
}
