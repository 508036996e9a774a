// Command-line front end: solve, bench, lab, gen.

#include <mps/generators.hpp>
#include <mps/io.hpp>
#include <mps/lab.hpp>
#include <mps/solver.hpp>
#include <mps/variant.hpp>

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitLimit = 2;

std::atomic<bool> g_interrupted{false};

void on_interrupt(int) { g_interrupted = true; }

/// Instances are files, or generator expressions prefixed with "gen:".
mps::Graph load_instance(const std::string& spec, const std::string& format, std::uint64_t seed) {
  if (spec.rfind("gen:", 0) == 0) return mps::generate(spec.substr(4), seed);
  std::optional<mps::InstanceFormat> f;
  if (format != "auto") f = mps::parse_format(format);
  return mps::read_instance_file(spec, f);
}

/// Appends CSV rows to `path` and JSON lines to the same path with a
/// .jsonl extension. All writes go through one mutex.
class RecordWriter {
 public:
  explicit RecordWriter(const std::string& path) {
    if (path.empty() || path == "-") return;
    fs::path csv = path;
    bool fresh = !fs::exists(csv) || fs::file_size(csv) == 0;
    csv_.open(csv, std::ios::app);
    if (!csv_) throw std::runtime_error("cannot write '" + csv.string() + "'");
    if (fresh) csv_ << mps::run_csv_header() << '\n';
    fs::path jsonl = csv;
    jsonl.replace_extension(".jsonl");
    jsonl_.open(jsonl, std::ios::app);
    if (!jsonl_) throw std::runtime_error("cannot write '" + jsonl.string() + "'");
  }

  void write(const mps::RunRecord& r) {
    std::lock_guard lock(mu_);
    if (!csv_.is_open()) {
      if (!header_printed_) std::cout << mps::run_csv_header() << '\n';
      header_printed_ = true;
      std::cout << mps::to_csv(r) << std::endl;
      return;
    }
    csv_ << mps::to_csv(r) << std::endl;
    jsonl_ << mps::to_json(r).dump() << std::endl;
  }

 private:
  std::mutex mu_;
  std::ofstream csv_;
  std::ofstream jsonl_;
  bool header_printed_ = false;
};

struct RunSettings {
  double time_limit = 1200;
  std::uint64_t seed = 1;
};

mps::RunRecord run_one(const std::string& name, const mps::Graph& g, const std::string& variant, const RunSettings& s) {
  mps::VariantConfig cfg = mps::parse_variant(variant);
  mps::SolveLimits limits;
  limits.time_limit_seconds = s.time_limit;
  mps::SolverOptions opts;
  opts.seed = s.seed;
  mps::SolveResult r = mps::solve_mps(g, cfg, limits, opts);
  return mps::make_record(name, mps::format_variant(cfg), r);
}

int cmd_solve(const std::string& instance, const std::string& variant, const std::string& format,
              const std::string& out, const RunSettings& s) {
  mps::Graph g = load_instance(instance, format, s.seed);
  mps::RunRecord rec = run_one(fs::path(instance).filename().string(), g, variant, s);
  std::cerr << rec.instance << ": n=" << g.num_nodes() << " m=" << g.num_edges() << " variant=\"" << rec.variant
            << "\" status=" << rec.status << " skewness=" << rec.skewness << " root_bound=" << rec.root_bound
            << " D=" << rec.max_cycle_length << " cycles=" << rec.num_cycles << " time=" << rec.runtime << "s\n";
  RecordWriter(out).write(rec);
  return rec.solved() ? kExitOk : kExitLimit;
}

std::vector<fs::path> corpus_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw mps::InstanceError("'" + dir.string() + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    auto ext = e.path().extension();
    if (e.is_regular_file() && (ext == ".gml" || ext == ".txt" || ext == ".edges")) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

int cmd_bench(const std::string& dir, std::vector<std::string> variants, const std::string& out, int parallel,
              const RunSettings& s) {
  if (variants.empty()) variants = {"ε"};
  for (auto& v : variants) v = mps::format_variant(mps::parse_variant(v));
  auto files = corpus_files(dir);
  std::vector<std::pair<std::string, mps::Graph>> instances;
  for (const auto& f : files) instances.emplace_back(f.filename().string(), mps::read_instance_file(f));

  struct Job {
    std::size_t instance;
    std::size_t variant;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (std::size_t v = 0; v < variants.size(); ++v) jobs.push_back({i, v});

  std::string runs_path = out.empty() ? "" : (fs::path(out).replace_extension("").string() + "_runs.csv");
  RecordWriter writer(runs_path);
  std::vector<mps::RunRecord> records;
  std::mutex records_mu;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;

  std::signal(SIGINT, on_interrupt);
  auto worker = [&] {
    while (!g_interrupted) {
      std::size_t j = next++;
      if (j >= jobs.size()) return;
      const auto& [name, g] = instances[jobs[j].instance];
      try {
        mps::RunRecord rec = run_one(name, g, variants[jobs[j].variant], s);
        writer.write(rec);
        std::lock_guard lock(records_mu);
        records.push_back(std::move(rec));
      } catch (const std::exception& e) {
        std::lock_guard lock(records_mu);
        if (!failed.exchange(true)) first_error = name + ": " + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  int workers = std::max(1, std::min<int>(parallel, static_cast<int>(std::max<std::size_t>(jobs.size(), 1))));
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  mps::BenchSummary summary = mps::summarize(records, s.time_limit, variants);
  if (out.empty()) {
    mps::write_summary_csv(std::cout, summary);
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write '" + out + "'");
    mps::write_summary_csv(f, summary);
    std::cerr << "summary written to " << out << ", runs to " << runs_path << '\n';
  }
  for (const auto& name : summary.inconsistent_instances)
    std::cerr << "warning: variants disagree on the skewness of " << name << '\n';
  if (g_interrupted) std::cerr << "interrupted: partial results flushed\n";
  if (failed) {
    std::cerr << "error: " << first_error << '\n';
    return kExitError;
  }
  bool all_solved = std::all_of(records.begin(), records.end(), [](const mps::RunRecord& r) { return r.solved(); });
  return all_solved && !g_interrupted ? kExitOk : kExitLimit;
}

int cmd_lab(const std::vector<std::string>& names, const std::string& out_dir, const std::string& hierarchy,
            int d_min, int d_max, std::uint64_t seed) {
  if (!out_dir.empty()) fs::create_directories(out_dir);
  bool ok = true;
  std::vector<mps::Extension> which;
  for (const auto& n : names) which.push_back(mps::parse_extension(n));
  if (which.empty() && hierarchy.empty()) which.assign(std::begin(mps::kAllExtensions), std::end(mps::kAllExtensions));
  for (auto x : which) {
    mps::StrengthCertificate c = mps::verify_extension(x);
    std::cout << (c.passed() ? "PASS " : "FAIL ") << mps::to_string(x) << " on " << c.graph
              << " (objective " << c.objective.get_str() << ")\n";
    for (const auto& note : c.notes) std::cout << "  note: " << note << '\n';
    if (!out_dir.empty()) {
      std::ofstream f(fs::path(out_dir) / (std::string(mps::to_string(x)) + ".txt"));
      f << c.report;
    }
    ok = ok && c.passed();
  }
  if (!hierarchy.empty()) {
    mps::Graph g = load_instance(hierarchy, "auto", seed);
    mps::HierarchyOptions opts;
    opts.seed = seed;
    mps::HierarchyResult h = mps::hierarchy_experiment(g, d_min, d_max, opts);
    std::cout << "hierarchy on " << hierarchy << " (Kuratowski pool " << h.pool_size << ")\n";
    std::cout << "D,bound,cycles\n";
    for (const auto& p : h.points) std::cout << p.max_cycle_length << ',' << p.bound << ',' << p.cycles << '\n';
    std::cout << "monotone=" << h.monotone << " strict=" << h.strict << '\n';
  }
  return ok ? kExitOk : kExitError;
}

int cmd_gen(const std::string& expr, const std::string& format, const std::string& out, std::uint64_t seed) {
  mps::Graph g = mps::generate(expr, seed);
  auto f = format == "auto" ? (out.empty() ? mps::InstanceFormat::EdgeList : mps::format_from_path(out))
                            : mps::parse_format(format);
  if (out.empty() || out == "-") {
    mps::write_instance(std::cout, g, f);
  } else {
    std::ofstream file(out);
    if (!file) throw std::runtime_error("cannot write '" + out + "'");
    mps::write_instance(file, g, f);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum planar subgraph branch-and-cut"};
  app.require_subcommand(1);

  RunSettings settings;
  std::string variant = "ε";
  std::string format = "auto";
  std::string out;
  std::string instance;

  auto* solve = app.add_subcommand("solve", "Solve one instance (file or gen:EXPR)");
  solve->add_option("instance", instance, "Instance file or generator expression, e.g. gen:K5")->required();
  solve->add_option("--variant", variant, "Variant flags, e.g. \"c10 t0 i w0\"");
  solve->add_option("--time-limit", settings.time_limit, "Seconds")->check(CLI::PositiveNumber);
  solve->add_option("--seed", settings.seed);
  solve->add_option("--format", format, "auto, edge-list or gml");
  solve->add_option("--out", out, "Append the run to this CSV (and .jsonl mirror)");

  std::string corpus;
  std::vector<std::string> variants;
  int parallel = 1;
  auto* bench = app.add_subcommand("bench", "Run every variant on every instance of a corpus directory");
  bench->add_option("corpus", corpus, "Directory of .txt/.edges/.gml instances")->required();
  bench->add_option("--variant", variants, "Variant flags; repeatable. \"table\" selects the comparison set");
  bench->add_option("--time-limit", settings.time_limit, "Seconds per run")->check(CLI::PositiveNumber);
  bench->add_option("--seed", settings.seed);
  bench->add_option("--out", out, "Summary CSV; runs go to <stem>_runs.csv and .jsonl");
  bench->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> certificates;
  std::string hierarchy;
  int d_min = 3, d_max = 11;
  auto* lab = app.add_subcommand("lab", "Run the strength certificates and experiments");
  lab->add_option("--certificate", certificates, "generalized-euler, pseudo-tree, cycle-edge, two-cycles-path, kuratowski-cycle");
  lab->add_option("--out", out, "Directory for one report file per certificate");
  lab->add_option("--hierarchy", hierarchy, "Root bounds over D on this instance, e.g. gen:K5^9");
  lab->add_option("--d-min", d_min);
  lab->add_option("--d-max", d_max);
  lab->add_option("--seed", settings.seed);

  std::string expr;
  auto* gen = app.add_subcommand("gen", "Write a generated graph");
  gen->add_option("expr", expr, "K5, K3,3, K5^9, C16(1,2,8), petersen, cycle(n), gnp(n,p), regular(n,d), ...")->required();
  gen->add_option("--format", format, "auto, edge-list or gml");
  gen->add_option("--out", out, "Output file (stdout by default)");
  gen->add_option("--seed", settings.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*solve) return cmd_solve(instance, variant, format, out, settings);
    if (*bench) {
      std::vector<std::string> expanded;
      for (const auto& v : variants) {
        if (v == "table") expanded.insert(expanded.end(), mps::table_variants().begin(), mps::table_variants().end());
        else expanded.push_back(v);
      }
      return cmd_bench(corpus, expanded, out, parallel, settings);
    }
    if (*lab) return cmd_lab(certificates, out, hierarchy, d_min, d_max, settings.seed);
    if (*gen) return cmd_gen(expr, format, out, settings.seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
