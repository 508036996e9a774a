#pragma once

#include <mps/separation.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace mps {

enum class SolveStatus { Optimal, TimeLimit, NodeLimit, Infeasible };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::TimeLimit: return "time_limit";
    case SolveStatus::NodeLimit: return "node_limit";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "?";
}

struct SolveLimits {
  double time_limit_seconds = 1200;
  long node_limit = -1;  ///< negative: unlimited
};

struct SolverOptions {
  SeparationOptions separation;
  SimplexOptions simplex;
  CycleLimits cycle_limits;
  int max_cut_rounds = 20;
  std::uint64_t seed = 1;
};

using CutCounts = std::map<RowClass, int>;

struct NodeTrace {
  long node = 0;
  int depth = 0;
  double lp_value = 0;
  CutCounts cuts;
  double seconds = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Optimal;
  Rational skewness = 0;  ///< weight of the best deletion set found
  std::vector<EdgeId> deleted;
  std::vector<EdgeId> kept;
  double root_bound = 0;
  double dual_bound = 0;
  std::vector<NodeTrace> trace;
  CutCounts cuts;
  long nodes = 0;
  long lp_iterations = 0;
  int max_cycle_length = 0;
  std::size_t num_cycles = 0;
  bool cycles_capped = false;
  double seconds = 0;
  std::uint64_t seed = 0;
};

/// Hooks for tests and experiments; called on every LP optimum and every row
/// added to the cut pool.
struct SolveObserver {
  std::function<void(const ModelContext&, std::span<const double>)> on_lp_optimum;
  std::function<void(const ModelContext&, const Row&)> on_cut;
};

struct PrimalCandidate {
  EdgeMask deleted;
  Rational value = 0;
};

/// Maximal planar subgraph inserting edges by ascending s (ties by edge id).
inline PrimalCandidate primal_heuristic(const ModelContext& ctx, std::span<const double> x) {
  const Graph& g = ctx.graph;
  std::vector<EdgeId> order(static_cast<std::size_t>(g.num_edges()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    return x[static_cast<std::size_t>(ctx.s_var[a])] < x[static_cast<std::size_t>(ctx.s_var[b])];
  });
  EdgeMask kept = maximal_planar_subgraph(g, order);
  PrimalCandidate c;
  c.deleted.assign(kept.size(), false);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (!kept[e]) {
      c.deleted[e] = true;
      c.value += g.edge(e).weight;
    }
  return c;
}

/// Variable to branch on: the fractional one closest to 1/2, preferring edge
/// variables, then (with integral cycles requested) cycle and tree variables.
inline std::optional<int> select_branch_variable(const ModelContext& ctx, std::span<const double> x,
                                                 double tol = 1e-6) {
  auto pick = [&](auto&& vars) -> std::optional<int> {
    std::optional<int> best;
    double dist = 1;
    for (int v : vars) {
      if (v < 0) continue;
      double val = x[static_cast<std::size_t>(v)];
      if (std::fabs(val - std::round(val)) <= tol) continue;
      double d = std::fabs(val - 0.5);
      if (d < dist - 1e-12) {
        dist = d;
        best = v;
      }
    }
    return best;
  };
  if (auto v = pick(ctx.s_var)) return v;
  if (!ctx.config.integral_cycles) return std::nullopt;
  if (auto v = pick(ctx.c_var)) return v;
  std::vector<int> tvars = ctx.t_var;
  for (const auto& a : ctx.arc_var) {
    tvars.push_back(a[0]);
    tvars.push_back(a[1]);
  }
  return pick(tvars);
}

namespace detail {

struct BbNode {
  std::vector<std::pair<int, int>> fixings;  // (variable, value)
  double bound = 0;
  int depth = 0;
  long id = 0;
};

struct BbNodeOrder {
  bool operator()(const BbNode& a, const BbNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

}  // namespace detail

/// Branch-and-cut for the (weighted) maximum planar subgraph problem.
class BranchAndCut {
 public:
  BranchAndCut(const Graph& g, const VariantConfig& cfg, SolveLimits limits = {}, SolverOptions opts = {},
               SolveObserver obs = {})
      : graph_(g), cfg_(cfg), limits_(limits), opts_(std::move(opts)), obs_(std::move(obs)), rng_(opts_.seed) {}

  SolveResult run() {
    start_ = std::chrono::steady_clock::now();
    SolveResult res;
    res.seed = opts_.seed;
    if (is_planar(graph_)) {
      res.kept.resize(static_cast<std::size_t>(graph_.num_edges()));
      std::iota(res.kept.begin(), res.kept.end(), 0);
      res.seconds = elapsed();
      return res;
    }
    ctx_.emplace(build_model(graph_, cfg_, opts_.cycle_limits));
    lp_.emplace(ctx_->lp, opts_.simplex);
    synced_ = ctx_->lp.num_rows();
    integral_weights_ = graph_.integral_weights();
    res.max_cycle_length = ctx_->max_cycle_length;
    res.num_cycles = ctx_->cycles.size();
    res.cycles_capped = ctx_->cycles_capped;

    // Start from a maximal planar subgraph in edge-id order.
    {
      std::vector<double> zero(static_cast<std::size_t>(ctx_->lp.num_vars()), 0.0);
      offer(primal_heuristic(*ctx_, zero));
    }

    std::priority_queue<detail::BbNode, std::vector<detail::BbNode>, detail::BbNodeOrder> open;
    std::optional<detail::BbNode> plunge = detail::BbNode{};
    long next_id = 1;
    bool root = true;
    SolveStatus status = SolveStatus::Optimal;
    double limit_bound = std::numeric_limits<double>::infinity();

    while (plunge || !open.empty()) {
      detail::BbNode node;
      if (plunge) {
        node = std::move(*plunge);
        plunge.reset();
      } else {
        node = open.top();
        open.pop();
      }
      if (!root && prunable(node.bound)) continue;
      if (time_up()) {
        status = SolveStatus::TimeLimit;
        limit_bound = std::min(limit_bound, node.bound);
        break;
      }
      if (limits_.node_limit >= 0 && res.nodes >= limits_.node_limit) {
        status = SolveStatus::NodeLimit;
        limit_bound = std::min(limit_bound, node.bound);
        break;
      }
      ++res.nodes;
      NodeTrace tr;
      tr.node = node.id;
      tr.depth = node.depth;
      auto outcome = process(node, tr, res);
      tr.seconds = elapsed();
      res.trace.push_back(tr);
      if (root) {
        res.root_bound = outcome.bound;
        root = false;
      }
      if (outcome.kind == Outcome::TimeLimit) {
        status = SolveStatus::TimeLimit;
        limit_bound = std::min(limit_bound, outcome.bound);
        break;
      }
      if (outcome.kind != Outcome::Branch) continue;
      // Children: explore the side the LP leans to first.
      int var = outcome.branch_var;
      int first = outcome.branch_value >= 0.5 ? 1 : 0;
      for (int side : {first, 1 - first}) {
        detail::BbNode child;
        child.fixings = node.fixings;
        child.fixings.emplace_back(var, side);
        child.bound = outcome.bound;
        child.depth = node.depth + 1;
        child.id = next_id++;
        if (side == first)
          plunge = std::move(child);
        else
          open.push(std::move(child));
      }
    }

    if (status != SolveStatus::Optimal) {
      while (!open.empty()) {
        limit_bound = std::min(limit_bound, open.top().bound);
        open.pop();
      }
      if (plunge) limit_bound = std::min(limit_bound, plunge->bound);
    }
    res.status = status;
    res.skewness = incumbent_value_;
    for (EdgeId e = 0; e < graph_.num_edges(); ++e) (incumbent_[e] ? res.deleted : res.kept).push_back(e);
    double inc = incumbent_value_.get_d();
    res.dual_bound = status == SolveStatus::Optimal ? inc : std::min(inc, limit_bound);
    res.lp_iterations = lp_iterations_;
    res.seconds = elapsed();
    return res;
  }

  const ModelContext& context() const { return *ctx_; }

 private:
  enum class Outcome { Pruned, Fathomed, Branch, TimeLimit };
  struct NodeOutcome {
    Outcome kind = Outcome::Pruned;
    double bound = 0;
    int branch_var = -1;
    double branch_value = 0;
  };

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  bool time_up() const { return elapsed() > limits_.time_limit_seconds; }

  double rounded_bound(double z) const { return integral_weights_ ? std::ceil(z - 1e-6) : z; }

  bool prunable(double bound) const {
    if (!has_incumbent_) return false;
    double inc = incumbent_value_.get_d();
    if (integral_weights_) return bound > inc - 0.5;
    return bound >= inc - 1e-9 * std::max(1.0, std::fabs(inc));
  }

  void offer(const PrimalCandidate& c) {
    if (!has_incumbent_ || c.value < incumbent_value_) {
      incumbent_ = c.deleted;
      incumbent_value_ = c.value;
      has_incumbent_ = true;
    }
  }

  void apply_fixings(const detail::BbNode& node) {
    for (int v : fixed_) lp_->set_bounds(v, ctx_->lp.var(v).lower, ctx_->lp.var(v).upper);
    fixed_.clear();
    for (auto [v, val] : node.fixings) {
      lp_->set_bounds(v, Rational(val), Rational(val));
      fixed_.push_back(v);
    }
  }

  void sync_rows() {
    for (int i = synced_; i < ctx_->lp.num_rows(); ++i) lp_->add_row(ctx_->lp.rows()[static_cast<std::size_t>(i)]);
    synced_ = ctx_->lp.num_rows();
  }

  LpStatus solve_lp_robust(const detail::BbNode& node) {
    LpStatus st = lp_->solve();
    lp_iterations_ += lp_->iterations();
    if (st == LpStatus::IterationLimit) {
      lp_.emplace(ctx_->lp, opts_.simplex);
      synced_ = ctx_->lp.num_rows();
      fixed_.clear();
      apply_fixings(node);
      st = lp_->solve();
      lp_iterations_ += lp_->iterations();
      if (st == LpStatus::IterationLimit) throw std::runtime_error("LP iteration limit reached");
    }
    return st;
  }

  int add_rows(SeparationReport& rep, NodeTrace& tr, SolveResult& res) {
    int added = 0;
    for (auto& sr : rep.rows) {
      RowClass cls = sr.row.cls;
      Row copy = sr.row;
      if (ctx_->add_row(std::move(sr.row))) {
        ++added;
        ++tr.cuts[cls];
        ++res.cuts[cls];
        if (obs_.on_cut) obs_.on_cut(*ctx_, copy);
      }
    }
    return added;
  }

  bool s_integral(std::span<const double> x) const {
    for (int v : ctx_->s_var) {
      double val = x[static_cast<std::size_t>(v)];
      if (std::fabs(val - std::round(val)) > 1e-6) return false;
    }
    return true;
  }

  /// Cut loop at one node.
  NodeOutcome process(const detail::BbNode& node, NodeTrace& tr, SolveResult& res) {
    apply_fixings(node);
    const auto& sep = opts_.separation;
    NodeOutcome out;
    for (int round = 0;; ++round) {
      sync_rows();
      LpStatus st = solve_lp_robust(node);
      if (st == LpStatus::Infeasible) {
        out.kind = Outcome::Pruned;
        out.bound = std::numeric_limits<double>::infinity();
        return out;
      }
      if (st != LpStatus::Optimal) throw std::runtime_error(std::string("unexpected LP status: ") + to_string(st));
      std::vector<double> x = lp_->values();
      double z = lp_->objective();
      tr.lp_value = z;
      out.bound = std::max(node.bound, rounded_bound(z));
      if (obs_.on_lp_optimum) obs_.on_lp_optimum(*ctx_, x);
      if (prunable(out.bound)) {
        out.kind = Outcome::Pruned;
        return out;
      }
      if (s_integral(x)) {
        // Exact planarity check of the rounded point.
        auto rep = separate_kuratowski(*ctx_, x, sep, rng_);
        if (rep.subdivisions.empty()) {
          PrimalCandidate c;
          c.deleted.assign(static_cast<std::size_t>(graph_.num_edges()), false);
          for (EdgeId e = 0; e < graph_.num_edges(); ++e)
            if (x[static_cast<std::size_t>(ctx_->s_var[e])] > 0.5) {
              c.deleted[e] = true;
              c.value += graph_.edge(e).weight;
            }
          offer(c);
          out.kind = Outcome::Fathomed;
          return out;
        }
        if (add_rows(rep, tr, res) == 0) throw std::runtime_error("integral point not cut off");
        continue;
      }
      if (time_up()) {
        out.kind = Outcome::TimeLimit;
        return out;
      }
      int added = round < opts_.max_cut_rounds ? separate_all(x, tr, res) : 0;
      if (added > 0) continue;
      offer(primal_heuristic(*ctx_, x));
      if (prunable(out.bound)) {
        out.kind = Outcome::Pruned;
        return out;
      }
      auto var = select_branch_variable(*ctx_, x);
      if (!var) throw std::logic_error("fractional point without branching candidate");
      out.kind = Outcome::Branch;
      out.branch_var = *var;
      out.branch_value = x[static_cast<std::size_t>(*var)];
      return out;
    }
  }

  /// Separators in cheap-first order; stops at the first class yielding rows.
  int separate_all(std::span<const double> x, NodeTrace& tr, SolveResult& res) {
    const auto& sep = opts_.separation;
    auto kur = separate_kuratowski(*ctx_, x, sep, rng_);
    std::vector<KuratowskiSubdivision> subs = kur.subdivisions;
    if (int n = add_rows(kur, tr, res)) return n;
    if (ctx_->config.cycle_model()) {
      if (cfg_.cycle_edge) {
        auto rep = separate_cycle_edge(*ctx_, x, sep);
        if (int n = add_rows(rep, tr, res)) return n;
      }
      if (cfg_.two_cycles_path != TwoCyclesPath::Off) {
        auto rep = separate_two_cycles_path(*ctx_, x, sep, cfg_.two_cycles_path, cache_);
        if (int n = add_rows(rep, tr, res)) return n;
      }
      if (cfg_.kuratowski_cycle) {
        auto rep = separate_kuratowski_cycle(*ctx_, x, sep, subs, rng_);
        if (int n = add_rows(rep, tr, res)) return n;
      }
      if (cfg_.cycle_clique) {
        auto rep = separate_cycle_clique(*ctx_, x, sep, true, cache_);
        if (int n = add_rows(rep, tr, res)) return n;
      }
    }
    if (cfg_.generalized_euler) {
      auto rep = separate_generalized_euler(*ctx_, x, sep, rng_);
      if (int n = add_rows(rep, tr, res)) return n;
    }
    return 0;
  }

  const Graph& graph_;
  VariantConfig cfg_;
  SolveLimits limits_;
  SolverOptions opts_;
  SolveObserver obs_;
  std::mt19937_64 rng_;
  std::optional<ModelContext> ctx_;
  std::optional<Simplex<double>> lp_;
  SeparationCache cache_;
  int synced_ = 0;
  std::vector<int> fixed_;
  bool integral_weights_ = true;
  bool has_incumbent_ = false;
  EdgeMask incumbent_;
  Rational incumbent_value_ = 0;
  long lp_iterations_ = 0;
  std::chrono::steady_clock::time_point start_;
};

inline SolveResult solve_mps(const Graph& g, const VariantConfig& cfg, SolveLimits limits = {},
                             SolverOptions opts = {}, SolveObserver obs = {}) {
  return BranchAndCut(g, cfg, limits, std::move(opts), std::move(obs)).run();
}

}  // namespace mps
