#pragma once

#include <mps/model.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <span>
#include <unordered_map>
#include <vector>

namespace mps {

struct SeparationOptions {
  double rounding_threshold = 0.5;
  double violation_tol = 1e-6;
  int kuratowski_subdivisions = 5;
  int max_rows_per_class = 50;
  /// Keep rounding-derived Kuratowski rows even when the fractional point satisfies them.
  bool keep_nonviolated_kuratowski = false;
  std::vector<int> euler_girth_targets{5, 6, 8};
  int max_cut_restarts = 3;
  int paths_per_pair = 10;
};

struct SeparatedRow {
  Row row;
  double violation = 0;
  bool nonviolated = false;  ///< kept from rounding although not violated
};

struct SeparationReport {
  std::vector<SeparatedRow> rows;
  std::vector<KuratowskiSubdivision> subdivisions;
  long candidates = 0;
  double seconds = 0;

  /// Most violated first; ties keep discovery order.
  void limit(int cap) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SeparatedRow& a, const SeparatedRow& b) { return a.violation > b.violation; });
    if (cap >= 0 && static_cast<int>(rows.size()) > cap) rows.resize(static_cast<std::size_t>(cap));
  }

  void merge(SeparationReport&& other) {
    for (auto& r : other.rows) rows.push_back(std::move(r));
    for (auto& k : other.subdivisions) subdivisions.push_back(std::move(k));
    candidates += other.candidates;
    seconds += other.seconds;
  }
};

/// Per-context memo of inner-node sets and cycle conflicts. Not synchronized:
/// use one cache per thread.
class SeparationCache {
 public:
  const std::vector<NodeId>& inner(const ModelContext& ctx, int a, int b) {
    auto key = pair_key(a, b);
    auto it = inner_.find(key);
    if (it == inner_.end())
      it = inner_.emplace(key, inner_nodes(ctx.cycles[static_cast<std::size_t>(a)],
                                           ctx.cycles[static_cast<std::size_t>(b)])).first;
    return it->second;
  }

  bool conflict(const ModelContext& ctx, int a, int b) {
    auto key = pair_key(a, b);
    auto it = conflict_.find(key);
    if (it == conflict_.end())
      it = conflict_.emplace(key, conflicting_cycles(ctx.cycles[static_cast<std::size_t>(a)],
                                                     ctx.cycles[static_cast<std::size_t>(b)])).first;
    return it->second;
  }

 private:
  static std::uint64_t pair_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  }
  std::unordered_map<std::uint64_t, std::vector<NodeId>> inner_;
  std::unordered_map<std::uint64_t, bool> conflict_;
};

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline double value(std::span<const double> x, int var) { return var < 0 ? 0.0 : x[static_cast<std::size_t>(var)]; }

/// Up to k distinct subdivisions in the subgraph `kept`: one with the identity
/// deletion order, the rest with shuffled orders.
inline std::vector<KuratowskiSubdivision> extract_several(const Graph& g, const EdgeMask& kept, int k,
                                                          std::mt19937_64& rng) {
  std::vector<KuratowskiSubdivision> out;
  if (k <= 0 || is_planar(g, kept)) return out;
  std::vector<EdgeId> order = edges_of(kept);
  std::set<std::vector<EdgeId>> seen;
  for (int attempt = 0; attempt < k; ++attempt) {
    if (attempt > 0) std::shuffle(order.begin(), order.end(), rng);
    auto sub = extract_kuratowski(g, kept, order);
    if (seen.insert(sub.edges).second) out.push_back(std::move(sub));
  }
  return out;
}

inline void push_if_violated(SeparationReport& rep, Row row, std::span<const double> x, double tol) {
  row.normalize();
  double v = row.violation<double>(x);
  ++rep.candidates;
  if (v > tol) rep.rows.push_back({std::move(row), v, false});
}

}  // namespace detail

/// Rounds s at the threshold, tests planarity and emits Kuratowski rows for up
/// to k subdivisions of the rounded graph. Exact on integral points.
inline SeparationReport separate_kuratowski(const ModelContext& ctx, std::span<const double> x,
                                            const SeparationOptions& opts, std::mt19937_64& rng) {
  detail::Stopwatch sw;
  SeparationReport rep;
  const Graph& g = ctx.graph;
  EdgeMask kept(static_cast<std::size_t>(g.num_edges()));
  for (EdgeId e = 0; e < g.num_edges(); ++e) kept[e] = detail::value(x, ctx.s_var[e]) < opts.rounding_threshold;
  rep.subdivisions = detail::extract_several(g, kept, opts.kuratowski_subdivisions, rng);
  for (const auto& k : rep.subdivisions) {
    Row row = kuratowski_row(ctx, k);
    row.normalize();
    double v = row.violation<double>(x);
    ++rep.candidates;
    if (v > opts.violation_tol)
      rep.rows.push_back({std::move(row), v, false});
    else if (opts.keep_nonviolated_kuratowski)
      rep.rows.push_back({std::move(row), v, true});
  }
  rep.limit(opts.max_rows_per_class);
  rep.seconds = sw.seconds();
  return rep;
}

namespace detail {

/// Drops nodes whose removal increases the violation of the generalized Euler
/// row at girth target mu; returns the surviving edges.
inline std::vector<EdgeId> prune_by_contribution(const ModelContext& ctx, std::span<const double> x,
                                                 std::vector<EdgeId> edges, int mu) {
  const Graph& g = ctx.graph;
  const double bonus = static_cast<double>(mu) / (mu - 2);
  EdgeMask in(static_cast<std::size_t>(g.num_edges()), false);
  for (EdgeId e : edges) in[e] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      int deg = 0;
      double s = 0;
      for (const auto& inc : g.incident(v))
        if (in[inc.edge]) {
          ++deg;
          s += value(x, ctx.s_var[inc.edge]);
        }
      if (deg == 0) continue;
      if (deg - s - bonus < -1e-12) {
        for (const auto& inc : g.incident(v)) in[inc.edge] = false;
        changed = true;
      }
    }
  }
  return edges_of(in);
}

inline void emit_euler_candidate(SeparationReport& rep, const ModelContext& ctx, std::span<const double> x,
                                 const std::vector<EdgeId>& edges, double tol, std::set<std::vector<EdgeId>>& seen) {
  if (edges.empty() || !seen.insert(edges).second) return;
  if (!girth(ctx.graph, ctx.graph.mask_of(edges))) return;
  push_if_violated(rep, generalized_euler_row(ctx, edges), x, tol);
}

/// Length of a shortest path between u and v in the subgraph, or INT_MAX.
inline int bfs_distance(const Graph& g, const EdgeMask& mask, NodeId u, NodeId v, int limit) {
  if (u == v) return 0;
  std::vector<int> dist(static_cast<std::size_t>(g.num_nodes()), -1);
  std::vector<NodeId> frontier{u};
  dist[u] = 0;
  for (int d = 0; d < limit && !frontier.empty(); ++d) {
    std::vector<NodeId> next;
    for (NodeId a : frontier)
      for (const auto& inc : g.incident(a)) {
        if (!mask[inc.edge] || dist[inc.neighbor] >= 0) continue;
        dist[inc.neighbor] = d + 1;
        if (inc.neighbor == v) return d + 1;
        next.push_back(inc.neighbor);
      }
    frontier = std::move(next);
  }
  return std::numeric_limits<int>::max();
}

}  // namespace detail

/// Generalized Euler separation: a bipartite subgraph from a local-search max
/// cut with weights 1 - s, and greedy girth-mu subgraphs adding edges in
/// ascending s, each post-processed by node contribution.
inline SeparationReport separate_generalized_euler(const ModelContext& ctx, std::span<const double> x,
                                                   const SeparationOptions& opts, std::mt19937_64& rng) {
  detail::Stopwatch sw;
  SeparationReport rep;
  const Graph& g = ctx.graph;
  const int n = g.num_nodes();
  std::set<std::vector<EdgeId>> seen;
  auto weight = [&](EdgeId e) { return 1.0 - detail::value(x, ctx.s_var[e]); };

  for (int restart = 0; restart < std::max(1, opts.max_cut_restarts); ++restart) {
    std::vector<char> side(static_cast<std::size_t>(n));
    std::bernoulli_distribution coin(0.5);
    for (auto& s : side) s = coin(rng);
    bool improved = true;
    while (improved) {
      improved = false;
      for (NodeId v = 0; v < n; ++v) {
        double gain = 0;
        for (const auto& inc : g.incident(v)) gain += side[inc.neighbor] == side[v] ? weight(inc.edge) : -weight(inc.edge);
        if (gain > 1e-12) {
          side[v] = !side[v];
          improved = true;
        }
      }
    }
    std::vector<EdgeId> cut;
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (side[g.edge(e).u] != side[g.edge(e).v]) cut.push_back(e);
    detail::emit_euler_candidate(rep, ctx, x, detail::prune_by_contribution(ctx, x, cut, 4), opts.violation_tol, seen);
  }

  std::vector<EdgeId> order(static_cast<std::size_t>(g.num_edges()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    return detail::value(x, ctx.s_var[a]) < detail::value(x, ctx.s_var[b]);
  });
  for (int mu : opts.euler_girth_targets) {
    if (mu < 3) continue;
    EdgeMask h(static_cast<std::size_t>(g.num_edges()), false);
    for (EdgeId e : order) {
      const Edge& ed = g.edge(e);
      // Adding e closes a cycle of length dist + 1.
      if (detail::bfs_distance(g, h, ed.u, ed.v, mu - 2) >= mu - 1) h[e] = true;
    }
    detail::emit_euler_candidate(rep, ctx, x, detail::prune_by_contribution(ctx, x, edges_of(h), mu),
                                 opts.violation_tol, seen);
  }
  rep.limit(opts.max_rows_per_class);
  rep.seconds = sw.seconds();
  return rep;
}

/// Exact over the enumerated cycles: every violated s_e + c_a <= 1.
inline SeparationReport separate_cycle_edge(const ModelContext& ctx, std::span<const double> x,
                                            const SeparationOptions& opts) {
  detail::Stopwatch sw;
  SeparationReport rep;
  for (std::size_t a = 0; a < ctx.cycles.size(); ++a) {
    double c = detail::value(x, ctx.c_var[a]);
    if (c <= opts.violation_tol) continue;
    for (EdgeId e : ctx.cycles[a].edges()) {
      ++rep.candidates;
      double v = detail::value(x, ctx.s_var[e]) + c - 1.0;
      if (v > opts.violation_tol) {
        Row r = cycle_edge_row(ctx, static_cast<int>(a), e);
        r.normalize();
        rep.rows.push_back({std::move(r), v, false});
      }
    }
  }
  rep.limit(opts.max_rows_per_class);
  rep.seconds = sw.seconds();
  return rep;
}

/// Conflicting-cycle clique rows: all violated pairs, or greedy maximal cliques
/// grown in descending c order.
inline SeparationReport separate_cycle_clique(const ModelContext& ctx, std::span<const double> x,
                                              const SeparationOptions& opts, bool maximal, SeparationCache& cache) {
  detail::Stopwatch sw;
  SeparationReport rep;
  std::vector<int> pos;
  for (std::size_t a = 0; a < ctx.cycles.size(); ++a)
    if (detail::value(x, ctx.c_var[a]) > opts.violation_tol) pos.push_back(static_cast<int>(a));
  auto c = [&](int a) { return detail::value(x, ctx.c_var[a]); };
  std::stable_sort(pos.begin(), pos.end(), [&](int a, int b) { return c(a) > c(b); });
  std::set<std::vector<int>> seen;
  auto emit = [&](std::vector<int> clique) {
    std::sort(clique.begin(), clique.end());
    if (clique.size() < 2 || !seen.insert(clique).second) return;
    detail::push_if_violated(rep, cycle_clique_row(ctx, clique), x, opts.violation_tol);
  };
  if (!maximal) {
    for (std::size_t i = 0; i < pos.size(); ++i)
      for (std::size_t j = i + 1; j < pos.size(); ++j) {
        if (c(pos[i]) + c(pos[j]) <= 1.0 + opts.violation_tol) continue;
        if (cache.conflict(ctx, pos[i], pos[j])) emit({pos[i], pos[j]});
      }
  } else {
    for (std::size_t s = 0; s < pos.size(); ++s) {
      std::vector<int> clique{pos[s]};
      for (std::size_t j = 0; j < pos.size(); ++j) {
        if (j == s) continue;
        bool all = std::all_of(clique.begin(), clique.end(), [&](int a) { return cache.conflict(ctx, a, pos[j]); });
        if (all) clique.push_back(pos[j]);
      }
      emit(std::move(clique));
    }
  }
  rep.limit(opts.max_rows_per_class);
  rep.seconds = sw.seconds();
  return rep;
}

namespace detail {

/// Dijkstra with s-weights from `sources`, never passing through `blocked`
/// nodes except as the final target; forbidden edges are skipped. Returns the
/// node path to the closest target, or empty.
inline std::vector<NodeId> shortest_path_to(const ModelContext& ctx, std::span<const double> x,
                                            const std::vector<NodeId>& sources, const std::vector<char>& is_target,
                                            const std::vector<char>& blocked, const EdgeMask& forbidden) {
  const Graph& g = ctx.graph;
  const int n = g.num_nodes();
  std::vector<double> dist(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  std::vector<NodeId> prev(static_cast<std::size_t>(n), -1);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (NodeId s : sources) {
    dist[s] = 0;
    pq.emplace(0.0, s);
  }
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    if (is_target[v] && prev[v] >= 0) {
      std::vector<NodeId> path{v};
      while (prev[path.back()] >= 0) path.push_back(prev[path.back()]);
      std::reverse(path.begin(), path.end());
      return path;
    }
    if (prev[v] >= 0 && blocked[v]) continue;
    for (const auto& inc : g.incident(v)) {
      if (forbidden[inc.edge]) continue;
      NodeId w = inc.neighbor;
      if (std::find(sources.begin(), sources.end(), w) != sources.end()) continue;
      double nd = d + std::max(0.0, value(x, ctx.s_var[inc.edge]));
      if (nd < dist[w]) {
        dist[w] = nd;
        prev[w] = v;
        pq.emplace(nd, w);
      }
    }
  }
  return {};
}

}  // namespace detail

/// Two-cycles-path rows for cycle pairs sharing an edge with c_a + c_b > 1,
/// plus violated conflicting 2-cliques.
inline SeparationReport separate_two_cycles_path(const ModelContext& ctx, std::span<const double> x,
                                                 const SeparationOptions& opts, TwoCyclesPath mode,
                                                 SeparationCache& cache) {
  detail::Stopwatch sw;
  SeparationReport rep;
  const Graph& g = ctx.graph;
  const int n = g.num_nodes();
  auto c = [&](int a) { return detail::value(x, ctx.c_var[a]); };
  std::set<std::pair<int, int>> done;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    std::vector<int> ce;
    for (int a : ctx.cycles_of_edge[e])
      if (c(a) > opts.violation_tol) ce.push_back(a);
    for (std::size_t i = 0; i < ce.size(); ++i)
      for (std::size_t j = i + 1; j < ce.size(); ++j) {
        int a = std::min(ce[i], ce[j]), b = std::max(ce[i], ce[j]);
        double excess = c(a) + c(b) - 1.0;
        if (excess <= opts.violation_tol || !done.emplace(a, b).second) continue;
        const auto& nu = cache.inner(ctx, a, b);
        if (nu.empty()) continue;
        const Cycle& ca = ctx.cycles[static_cast<std::size_t>(a)];
        const Cycle& cb = ctx.cycles[static_cast<std::size_t>(b)];
        std::vector<char> on_cycles(static_cast<std::size_t>(n), 0);
        for (NodeId v : ca.nodes()) on_cycles[v] = 1;
        for (NodeId v : cb.nodes()) on_cycles[v] = 1;
        std::vector<std::vector<NodeId>> source_sets;
        if (mode == TwoCyclesPath::Separate)
          for (NodeId v : nu) source_sets.push_back({v});
        else
          source_sets.push_back(nu);
        for (const auto& sources : source_sets) {
          std::vector<char> target = on_cycles;
          for (NodeId v : sources) target[v] = 0;
          if (mode == TwoCyclesPath::Combined)
            for (NodeId v : nu) target[v] = 0;
          EdgeMask forbidden(static_cast<std::size_t>(g.num_edges()), false);
          for (EdgeId f : ca.edges()) forbidden[f] = true;
          for (EdgeId f : cb.edges()) forbidden[f] = true;
          for (int it = 0; it < opts.paths_per_pair; ++it) {
            auto path = detail::shortest_path_to(ctx, x, sources, target, on_cycles, forbidden);
            ++rep.candidates;
            if (path.size() < 2) break;
            Row row = two_cycles_path_row(ctx, a, b, path);
            row.normalize();
            double v = row.violation<double>(x);
            if (v <= opts.violation_tol) break;
            rep.rows.push_back({std::move(row), v, false});
            // Discard the path edge with the largest s and search again.
            EdgeId worst = -1;
            double ws = -1;
            for (std::size_t k = 0; k + 1 < path.size(); ++k) {
              EdgeId pe = *g.find_edge(path[k], path[k + 1]);
              double sv = detail::value(x, ctx.s_var[pe]);
              if (sv > ws) {
                ws = sv;
                worst = pe;
              }
            }
            forbidden[worst] = true;
          }
        }
      }
  }
  rep.limit(opts.max_rows_per_class);
  rep.merge(separate_cycle_clique(ctx, x, opts, false, cache));
  rep.seconds = sw.seconds();
  return rep;
}

/// Kuratowski-cycle rows: for each subdivision, greedily add cycles with
/// positive gain (increase in violation), ties to the smaller cycle id.
/// Subdivisions come from `subdivisions` plus a cycle-aware rounding that also
/// keeps edges of cycles with c above the threshold.
inline SeparationReport separate_kuratowski_cycle(const ModelContext& ctx, std::span<const double> x,
                                                  const SeparationOptions& opts,
                                                  std::span<const KuratowskiSubdivision> subdivisions,
                                                  std::mt19937_64& rng) {
  detail::Stopwatch sw;
  SeparationReport rep;
  const Graph& g = ctx.graph;
  auto c = [&](int a) { return detail::value(x, ctx.c_var[a]); };
  auto s = [&](EdgeId e) { return detail::value(x, ctx.s_var[e]); };

  std::vector<KuratowskiSubdivision> pool(subdivisions.begin(), subdivisions.end());
  EdgeMask kept(static_cast<std::size_t>(g.num_edges()));
  for (EdgeId e = 0; e < g.num_edges(); ++e) kept[e] = s(e) < opts.rounding_threshold;
  for (std::size_t a = 0; a < ctx.cycles.size(); ++a)
    if (c(static_cast<int>(a)) > 1.0 - opts.rounding_threshold)
      for (EdgeId e : ctx.cycles[a].edges()) kept[e] = true;
  for (auto& k : detail::extract_several(g, kept, opts.kuratowski_subdivisions, rng)) pool.push_back(std::move(k));

  std::set<std::pair<std::vector<EdgeId>, std::vector<int>>> seen;
  for (const auto& k : pool) {
    EdgeMask in_k = g.mask_of(k.edges);
    std::vector<int> cand;
    for (std::size_t a = 0; a < ctx.cycles.size(); ++a) {
      if (c(static_cast<int>(a)) <= opts.violation_tol) continue;
      const auto& ed = ctx.cycles[a].edges();
      if (std::any_of(ed.begin(), ed.end(), [&](EdgeId e) { return in_k[e]; })) cand.push_back(static_cast<int>(a));
    }
    EdgeMask covered(static_cast<std::size_t>(g.num_edges()), false);
    std::vector<int> chosen;
    std::vector<char> used(cand.size(), 0);
    while (true) {
      int best = -1;
      double best_gain = 1e-12;
      for (std::size_t i = 0; i < cand.size(); ++i) {
        if (used[i]) continue;
        double gain = c(cand[i]) - 1.0;
        for (EdgeId e : ctx.cycles[static_cast<std::size_t>(cand[i])].edges())
          if (in_k[e] && !covered[e]) gain += s(e);
        if (gain > best_gain) {  // cand is in ascending id order, so ties keep the smaller id
          best_gain = gain;
          best = static_cast<int>(i);
        }
      }
      if (best < 0) break;
      used[best] = 1;
      chosen.push_back(cand[best]);
      for (EdgeId e : ctx.cycles[static_cast<std::size_t>(cand[best])].edges()) covered[e] = true;
    }
    ++rep.candidates;
    if (chosen.empty()) continue;
    std::vector<int> key = chosen;
    std::sort(key.begin(), key.end());
    if (!seen.emplace(k.edges, key).second) continue;
    Row row = kuratowski_cycle_row(ctx, k, chosen);
    row.normalize();
    double v = row.violation<double>(x);
    if (v > opts.violation_tol) rep.rows.push_back({std::move(row), v, false});
  }
  rep.limit(opts.max_rows_per_class);
  rep.seconds = sw.seconds();
  return rep;
}

}  // namespace mps
