#pragma once

#include <mps/graph.hpp>
#include <mps/lp.hpp>
#include <mps/planarity.hpp>

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mps {

enum class PseudoTree { Off, NoPropagation, Propagation };
enum class TwoCyclesPath { Off, Combined, Separate };

class VariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Algorithmic variant, mirroring the whitespace-separated flag strings
/// ("eps", "e", "c10 t0 i w0", ...).
struct VariantConfig {
  bool generalized_euler = false;          // e
  std::optional<int> cycle_factor;         // c{r}: at least 100 r cycle variables
  PseudoTree pseudo_tree = PseudoTree::Off;  // t0 / t1
  bool integral_cycles = false;            // i
  bool cycle_edge = false;                 // s
  TwoCyclesPath two_cycles_path = TwoCyclesPath::Off;  // w0 / w1
  bool kuratowski_cycle = false;           // k
  bool cycle_clique = false;               // q
  /// Fixes D instead of deriving it from cycle_factor.
  std::optional<int> fixed_max_cycle_length;

  bool cycle_model() const { return cycle_factor.has_value() || fixed_max_cycle_length.has_value(); }
  std::size_t min_cycle_count() const { return cycle_factor ? static_cast<std::size_t>(*cycle_factor) * 100 : 0; }
  bool two_cliques() const { return two_cycles_path != TwoCyclesPath::Off; }

  void validate() const {
    if (cycle_factor && *cycle_factor < 1) throw VariantError("c{r} needs r >= 1");
    if (fixed_max_cycle_length && *fixed_max_cycle_length < 3) throw VariantError("D must be at least 3");
    if (cycle_model()) return;
    if (pseudo_tree != PseudoTree::Off) throw VariantError("t0/t1 require a cycle model (c{r})");
    if (integral_cycles) throw VariantError("i requires a cycle model (c{r})");
    if (cycle_edge) throw VariantError("s requires a cycle model (c{r})");
    if (two_cycles_path != TwoCyclesPath::Off) throw VariantError("w0/w1 require a cycle model (c{r})");
    if (kuratowski_cycle) throw VariantError("k requires a cycle model (c{r})");
    if (cycle_clique) throw VariantError("q requires a cycle model (c{r})");
  }

  friend bool operator==(const VariantConfig&, const VariantConfig&) = default;
};

/// The LP/ILP model of one instance plus the symbol tables mapping graph
/// objects to variables.
struct ModelContext {
  Graph graph;
  VariantConfig config;
  int max_cycle_length = 0;  ///< D; 0 for the plain Kuratowski model
  bool cycles_capped = false;
  std::vector<Cycle> cycles;
  std::vector<int> s_var;                  ///< per edge
  std::vector<int> c_var;                  ///< per cycle
  std::vector<int> t_var;                  ///< per node, -1 when absent
  std::vector<std::array<int, 2>> arc_var; ///< per edge: {u->v, v->u}, -1 when absent
  std::vector<std::vector<int>> cycles_of_edge;
  LinearModel lp;
  int base_rows = 0;  ///< rows created by build_model; later rows are cuts

  explicit ModelContext(Graph g) : graph(std::move(g)) {}

  /// Adds a row unless an identical one is already present. Returns true if added.
  bool add_row(Row r) {
    r.normalize();
    std::size_t h = r.hash();
    auto [lo, hi] = pool_.equal_range(h);
    for (auto it = lo; it != hi; ++it)
      if (lp.rows()[static_cast<std::size_t>(it->second)] == r) return false;
    int id = lp.add_row(std::move(r));
    pool_.emplace(h, id);
    return true;
  }

  /// s(F) at a point.
  template <class T>
  T s_sum(std::span<const EdgeId> edges, std::span<const T> values) const {
    T sum = 0;
    for (EdgeId e : edges) sum += values[static_cast<std::size_t>(s_var[e])];
    return sum;
  }

  /// c(d): sum of cycle variables of length d.
  template <class T>
  T c_length_sum(int d, std::span<const T> values) const {
    T sum = 0;
    for (std::size_t i = 0; i < cycles.size(); ++i)
      if (cycles[i].length() == d) sum += values[static_cast<std::size_t>(c_var[i])];
    return sum;
  }

  int cycle_index(const Cycle& c) const {
    auto it = std::lower_bound(cycles.begin(), cycles.end(), c);
    if (it == cycles.end() || !(*it == c)) return -1;
    return static_cast<int>(it - cycles.begin());
  }

 private:
  std::unordered_multimap<std::size_t, int> pool_;
};

namespace detail {

inline void add_term(Row& r, int var, const Rational& coef) {
  if (var >= 0 && coef != 0) r.terms.push_back({var, coef});
}

/// Nodes that lie in a connected component of g containing a cycle.
inline std::vector<char> nodes_in_cyclic_components(const Graph& g) {
  int count = 0;
  auto comp = connected_components(g, g.all_edges(), &count);
  std::vector<int> nodes(static_cast<std::size_t>(count), 0), edges(static_cast<std::size_t>(count), 0);
  for (NodeId v = 0; v < g.num_nodes(); ++v) ++nodes[comp[v]];
  for (const auto& e : g.edges()) ++edges[comp[e.u]];
  std::vector<char> out(static_cast<std::size_t>(g.num_nodes()), 0);
  for (NodeId v = 0; v < g.num_nodes(); ++v) out[v] = edges[comp[v]] >= nodes[comp[v]];
  return out;
}

}  // namespace detail

/// Euler bound s(E) >= m - (3n - 6) + [bipartite](n - 2).
inline Row euler_row(const ModelContext& ctx) {
  const Graph& g = ctx.graph;
  Row r;
  r.cls = RowClass::Euler;
  r.sense = Sense::GreaterEqual;
  for (EdgeId e = 0; e < g.num_edges(); ++e) detail::add_term(r, ctx.s_var[e], 1);
  int n = g.num_nodes();
  r.rhs = Rational(g.num_edges() - (3 * n - 6) + (is_bipartite(g) ? n - 2 : 0));
  return r;
}

/// Edge capacity: sum of cycles through e + 2 s_e <= 2.
inline Row edge_capacity_row(const ModelContext& ctx, EdgeId e) {
  Row r;
  r.cls = RowClass::EdgeCapacity;
  r.sense = Sense::LessEqual;
  r.rhs = 2;
  detail::add_term(r, ctx.s_var[e], 2);
  for (int a : ctx.cycles_of_edge[e]) detail::add_term(r, ctx.c_var[a], 1);
  return r;
}

/// (D-1) s(E) + sum (D+1-d) c(d) - 2 sum t_v >= (D-1) m - (D+1)(n-2).
inline Row cycle_constraint_row(const ModelContext& ctx) {
  const Graph& g = ctx.graph;
  const int D = ctx.max_cycle_length;
  Row r;
  r.cls = RowClass::CycleConstraint;
  r.sense = Sense::GreaterEqual;
  for (EdgeId e = 0; e < g.num_edges(); ++e) detail::add_term(r, ctx.s_var[e], D - 1);
  for (std::size_t a = 0; a < ctx.cycles.size(); ++a)
    detail::add_term(r, ctx.c_var[a], D + 1 - ctx.cycles[a].length());
  for (int t : ctx.t_var) detail::add_term(r, t, -2);
  r.rhs = Rational((D - 1) * g.num_edges() - (D + 1) * (g.num_nodes() - 2));
  return r;
}

/// t_vw + t_wv + s_e <= 1.
inline Row tree_arc_row(const ModelContext& ctx, EdgeId e) {
  Row r;
  r.cls = RowClass::TreeArc;
  r.sense = Sense::LessEqual;
  r.rhs = 1;
  detail::add_term(r, ctx.arc_var[e][0], 1);
  detail::add_term(r, ctx.arc_var[e][1], 1);
  detail::add_term(r, ctx.s_var[e], 1);
  return r;
}

/// Out-arcs of v sum to at least t_v.
inline Row tree_propagation_row(const ModelContext& ctx, NodeId v) {
  Row r;
  r.cls = RowClass::TreePropagation;
  r.sense = Sense::GreaterEqual;
  r.rhs = 0;
  for (const auto& inc : ctx.graph.incident(v)) {
    const Edge& e = ctx.graph.edge(inc.edge);
    detail::add_term(r, ctx.arc_var[inc.edge][e.u == v ? 0 : 1], 1);
  }
  detail::add_term(r, ctx.t_var[v], -1);
  return r;
}

/// t_v - (arcs into v) - s(delta(v)) >= 2 - deg(v). Arc terms are absent
/// without propagation.
inline Row tree_label_row(const ModelContext& ctx, NodeId v) {
  Row r;
  r.cls = RowClass::TreeLabel;
  r.sense = Sense::GreaterEqual;
  r.rhs = Rational(2 - ctx.graph.degree(v));
  detail::add_term(r, ctx.t_var[v], 1);
  for (const auto& inc : ctx.graph.incident(v)) {
    const Edge& e = ctx.graph.edge(inc.edge);
    detail::add_term(r, ctx.arc_var[inc.edge][e.u == v ? 1 : 0], -1);
    detail::add_term(r, ctx.s_var[inc.edge], -1);
  }
  return r;
}

/// Builds the Kuratowski model, optionally extended to the cycle model with
/// pseudo-tree variables. Cut classes are added later by separation.
inline ModelContext build_model(const Graph& g, const VariantConfig& cfg, CycleLimits limits = {}) {
  cfg.validate();
  ModelContext ctx(g);
  ctx.config = cfg;
  const int m = g.num_edges();
  ctx.s_var.resize(static_cast<std::size_t>(m));
  for (EdgeId e = 0; e < m; ++e) {
    const Edge& ed = g.edge(e);
    ctx.s_var[e] = ctx.lp.add_variable({"s_" + std::to_string(ed.u) + "_" + std::to_string(ed.v), VarKind::EdgeDeletion,
                                        Rational(0), Rational(1), ed.weight, true});
  }
  ctx.t_var.assign(static_cast<std::size_t>(g.num_nodes()), -1);
  ctx.arc_var.assign(static_cast<std::size_t>(m), {-1, -1});
  ctx.cycles_of_edge.assign(static_cast<std::size_t>(m), {});

  if (cfg.cycle_model()) {
    if (cfg.fixed_max_cycle_length) {
      ctx.max_cycle_length = *cfg.fixed_max_cycle_length;
      ctx.cycles = enumerate_cycles_up_to(g, ctx.max_cycle_length, limits.max_cycles);
    } else {
      auto sel = choose_max_cycle_length(g, cfg.min_cycle_count(), limits);
      ctx.max_cycle_length = sel.max_length;
      ctx.cycles = std::move(sel.cycles);
      ctx.cycles_capped = sel.capped;
    }
    ctx.c_var.resize(ctx.cycles.size());
    for (std::size_t a = 0; a < ctx.cycles.size(); ++a) {
      ctx.c_var[a] = ctx.lp.add_variable(
          {"c" + std::to_string(a), VarKind::Cycle, Rational(0), Rational(1), Rational(0), cfg.integral_cycles});
      for (EdgeId e : ctx.cycles[a].edges()) ctx.cycles_of_edge[e].push_back(static_cast<int>(a));
    }
    if (cfg.pseudo_tree != PseudoTree::Off) {
      auto cyclic = detail::nodes_in_cyclic_components(g);
      for (NodeId v = 0; v < g.num_nodes(); ++v)
        if (cyclic[v])
          ctx.t_var[v] = ctx.lp.add_variable(
              {"t_" + std::to_string(v), VarKind::TreeNode, Rational(0), Rational(1), Rational(0), cfg.integral_cycles});
      if (cfg.pseudo_tree == PseudoTree::Propagation)
        for (EdgeId e = 0; e < m; ++e) {
          const Edge& ed = g.edge(e);
          if (!cyclic[ed.u]) continue;
          for (int dir = 0; dir < 2; ++dir) {
            NodeId a = dir == 0 ? ed.u : ed.v, b = dir == 0 ? ed.v : ed.u;
            ctx.arc_var[e][dir] = ctx.lp.add_variable({"t_" + std::to_string(a) + "_" + std::to_string(b),
                                                       VarKind::TreeArc, Rational(0), Rational(1), Rational(0),
                                                       cfg.integral_cycles});
          }
        }
    }
  }

  if (g.num_nodes() >= 3) ctx.add_row(euler_row(ctx));
  if (cfg.cycle_model()) {
    for (EdgeId e = 0; e < m; ++e) ctx.add_row(edge_capacity_row(ctx, e));
    if (g.num_nodes() >= 3) ctx.add_row(cycle_constraint_row(ctx));
    if (cfg.pseudo_tree == PseudoTree::Propagation)
      for (EdgeId e = 0; e < m; ++e)
        if (ctx.arc_var[e][0] >= 0) ctx.add_row(tree_arc_row(ctx, e));
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (ctx.t_var[v] < 0) continue;
      if (cfg.pseudo_tree == PseudoTree::Propagation) ctx.add_row(tree_propagation_row(ctx, v));
      ctx.add_row(tree_label_row(ctx, v));
    }
  }
  ctx.base_rows = ctx.lp.num_rows();
  return ctx;
}

/// s(E(K)) >= 1.
inline Row kuratowski_row(const ModelContext& ctx, const KuratowskiSubdivision& k) {
  Row r;
  r.cls = RowClass::Kuratowski;
  r.sense = Sense::GreaterEqual;
  r.rhs = 1;
  for (EdgeId e : k.edges) detail::add_term(r, ctx.s_var.at(static_cast<std::size_t>(e)), 1);
  return r;
}

/// s(E(H)) >= |E(H)| - (|V(H)| - 2) g / (g - 2) with g the girth of H.
inline Row generalized_euler_row(const ModelContext& ctx, std::span<const EdgeId> edges) {
  const Graph& g = ctx.graph;
  EdgeMask mask = g.mask_of(edges);
  auto gam = girth(g, mask);
  if (!gam) throw std::invalid_argument("generalized Euler row needs a subgraph with a cycle");
  int nodes = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    if (active_degree(g, mask, v) > 0) ++nodes;
  int count = 0;
  Row r;
  r.cls = RowClass::GeneralizedEuler;
  r.sense = Sense::GreaterEqual;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (mask[e]) {
      detail::add_term(r, ctx.s_var[e], 1);
      ++count;
    }
  r.rhs = Rational(count) - Rational((nodes - 2) * *gam, *gam - 2);
  r.rhs.canonicalize();
  return r;
}

/// s_e + c_a <= 1 for e on cycle a.
inline Row cycle_edge_row(const ModelContext& ctx, int cycle, EdgeId e) {
  if (!ctx.cycles.at(static_cast<std::size_t>(cycle)).contains_edge(e))
    throw std::invalid_argument("edge is not on the cycle");
  Row r;
  r.cls = RowClass::CycleEdge;
  r.sense = Sense::LessEqual;
  r.rhs = 1;
  detail::add_term(r, ctx.s_var[e], 1);
  detail::add_term(r, ctx.c_var[cycle], 1);
  return r;
}

namespace detail {

/// Edge ids along a node path; throws if the path is not simple or uses a non-edge.
inline std::vector<EdgeId> path_edges(const Graph& g, std::span<const NodeId> path) {
  if (path.size() < 2) throw std::invalid_argument("path needs at least one edge");
  std::vector<NodeId> seen(path.begin(), path.end());
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) throw std::invalid_argument("path is not simple");
  std::vector<EdgeId> out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto e = g.find_edge(path[i], path[i + 1]);
    if (!e) throw std::invalid_argument("path uses a non-edge");
    out.push_back(*e);
  }
  return out;
}

}  // namespace detail

/// s(E(p)) >= c_a + c_b - 1 for a path p from an inner node of a and b to
/// another node of a or b that avoids their edges.
inline Row two_cycles_path_row(const ModelContext& ctx, int a, int b, std::span<const NodeId> path) {
  const Cycle& ca = ctx.cycles.at(static_cast<std::size_t>(a));
  const Cycle& cb = ctx.cycles.at(static_cast<std::size_t>(b));
  auto pe = detail::path_edges(ctx.graph, path);
  auto nu = inner_nodes(ca, cb);
  if (!std::binary_search(nu.begin(), nu.end(), path.front()))
    throw std::invalid_argument("path must start at an inner node");
  NodeId end = path.back();
  if (!ca.contains_node(end) && !cb.contains_node(end))
    throw std::invalid_argument("path must end on one of the cycles");
  for (EdgeId e : pe)
    if (ca.contains_edge(e) || cb.contains_edge(e)) throw std::invalid_argument("path uses a cycle edge");
  Row r;
  r.cls = RowClass::TwoCyclesPath;
  r.sense = Sense::GreaterEqual;
  r.rhs = -1;
  for (EdgeId e : pe) detail::add_term(r, ctx.s_var[e], 1);
  detail::add_term(r, ctx.c_var[a], -1);
  detail::add_term(r, ctx.c_var[b], -1);
  return r;
}

/// True iff p1, p2 are conflicting paths with respect to cycle a.
inline bool conflicting_paths(const Graph& g, const Cycle& a, std::span<const NodeId> p1, std::span<const NodeId> p2) {
  try {
    detail::path_edges(g, p1);
    detail::path_edges(g, p2);
  } catch (const std::invalid_argument&) {
    return false;
  }
  auto on_cycle = [&](NodeId v) { return a.contains_node(v); };
  for (auto p : {p1, p2}) {
    if (!on_cycle(p.front()) || !on_cycle(p.back())) return false;
    for (std::size_t i = 1; i + 1 < p.size(); ++i)
      if (on_cycle(p[i])) return false;
  }
  std::vector<NodeId> n1(p1.begin(), p1.end()), n2(p2.begin(), p2.end());
  std::sort(n1.begin(), n1.end());
  std::sort(n2.begin(), n2.end());
  std::vector<NodeId> common;
  std::set_intersection(n1.begin(), n1.end(), n2.begin(), n2.end(), std::back_inserter(common));
  if (!common.empty()) return false;
  // Components of the cycle after removing p1's endpoints: walk the cyclic order.
  const auto& cyc = a.nodes();
  const int L = a.length();
  auto pos = [&](NodeId v) { return static_cast<int>(std::find(cyc.begin(), cyc.end(), v) - cyc.begin()); };
  int i1 = pos(p1.front()), j1 = pos(p1.back());
  auto strictly_between = [&](int x) {  // on the arc from i1 to j1 going forward
    int dx = (x - i1 + L) % L, dj = (j1 - i1 + L) % L;
    return dx > 0 && dx < dj;
  };
  int x = pos(p2.front()), y = pos(p2.back());
  if (x == i1 || x == j1 || y == i1 || y == j1) return false;
  return strictly_between(x) != strictly_between(y);
}

/// s(E(p1) + E(p2)) >= c_a for conflicting paths.
inline Row cycle_two_paths_row(const ModelContext& ctx, int a, std::span<const NodeId> p1, std::span<const NodeId> p2) {
  const Cycle& ca = ctx.cycles.at(static_cast<std::size_t>(a));
  if (!conflicting_paths(ctx.graph, ca, p1, p2)) throw std::invalid_argument("paths are not conflicting w.r.t. the cycle");
  Row r;
  r.cls = RowClass::CycleTwoPaths;
  r.sense = Sense::GreaterEqual;
  r.rhs = 0;
  for (auto p : {p1, p2})
    for (EdgeId e : detail::path_edges(ctx.graph, p)) detail::add_term(r, ctx.s_var[e], 1);
  detail::add_term(r, ctx.c_var[a], -1);
  return r;
}

/// s(edges of K on no cycle of C) >= sum c_a + 1 - |C|.
inline Row kuratowski_cycle_row(const ModelContext& ctx, const KuratowskiSubdivision& k, std::span<const int> cyc) {
  Row r;
  r.cls = cyc.empty() ? RowClass::Kuratowski : RowClass::KuratowskiCycle;
  r.sense = Sense::GreaterEqual;
  r.rhs = Rational(1 - static_cast<int>(cyc.size()));
  for (EdgeId e : k.edges) {
    bool covered = std::any_of(cyc.begin(), cyc.end(),
                               [&](int a) { return ctx.cycles.at(static_cast<std::size_t>(a)).contains_edge(e); });
    if (!covered) detail::add_term(r, ctx.s_var[e], 1);
  }
  for (int a : cyc) detail::add_term(r, ctx.c_var[a], -1);
  return r;
}

/// sum over pairwise conflicting cycles c_a <= 1.
inline Row cycle_clique_row(const ModelContext& ctx, std::span<const int> clique) {
  for (std::size_t i = 0; i < clique.size(); ++i)
    for (std::size_t j = i + 1; j < clique.size(); ++j)
      if (!conflicting_cycles(ctx.cycles.at(static_cast<std::size_t>(clique[i])),
                              ctx.cycles.at(static_cast<std::size_t>(clique[j]))))
        throw std::invalid_argument("cycles are not pairwise conflicting");
  Row r;
  r.cls = RowClass::CycleClique;
  r.sense = Sense::LessEqual;
  r.rhs = 1;
  for (int a : clique) detail::add_term(r, ctx.c_var[a], 1);
  return r;
}

/// Sum over d of (d - 2) c(d); bounded by 2n - 4 at every feasible point.
template <class T>
T cycle_face_load(const ModelContext& ctx, std::span<const T> values) {
  T sum = 0;
  for (std::size_t a = 0; a < ctx.cycles.size(); ++a)
    sum += T(ctx.cycles[a].length() - 2) * values[static_cast<std::size_t>(ctx.c_var[a])];
  return sum;
}

template <class T>
bool check_face_load_bound(const ModelContext& ctx, std::span<const T> values, double tol = 1e-6) {
  T lhs = cycle_face_load(ctx, values);
  T rhs = T(2 * ctx.graph.num_nodes() - 4);
  if constexpr (std::is_same_v<T, Rational>)
    return lhs <= rhs;
  else
    return lhs <= rhs + tol;
}

/// First row violated by more than tol (or exactly, for rationals), if any.
template <class T>
std::optional<int> first_violated_row(const LinearModel& lp, std::span<const T> values, double tol = 1e-9) {
  for (int i = 0; i < lp.num_rows(); ++i) {
    T v = lp.rows()[i].template violation<T>(values);
    if constexpr (std::is_same_v<T, Rational>) {
      if (v > 0) return i;
    } else if (v > tol) {
      return i;
    }
  }
  return std::nullopt;
}

/// Integral model point for a planar subgraph: s from the deleted edges,
/// c from face cycles, t from pseudo-tree peeling. Requires the kept
/// subgraph to be connected with a block that is neither an edge nor a cycle.
inline std::vector<Rational> planar_witness(const ModelContext& ctx, const EdgeMask& deleted) {
  const Graph& g = ctx.graph;
  std::vector<Rational> x(static_cast<std::size_t>(ctx.lp.num_vars()), Rational(0));
  EdgeMask kept(deleted.size());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    kept[e] = !deleted[e];
    if (deleted[e]) x[ctx.s_var[e]] = 1;
  }
  if (ctx.config.cycle_model()) {
    auto res = test_planarity(g, kept);
    if (!std::holds_alternative<Embedding>(res)) throw std::invalid_argument("kept subgraph is not planar");
    const auto& emb = std::get<Embedding>(res);
    for (const auto& c : assign_cycles_to_faces(g, emb)) {
      if (!c || c->length() > ctx.max_cycle_length) continue;
      int idx = ctx.cycle_index(*c);
      if (idx >= 0) x[ctx.c_var[idx]] = 1;
    }
  }
  if (ctx.config.pseudo_tree != PseudoTree::Off) {
    const int n = g.num_nodes();
    std::vector<char> labeled(static_cast<std::size_t>(n), 0);
    auto unlabeled_neighbors = [&](NodeId v, EdgeId* via) {
      int cnt = 0;
      for (const auto& inc : g.incident(v))
        if (kept[inc.edge] && !labeled[inc.neighbor]) {
          ++cnt;
          if (via) *via = inc.edge;
        }
      return cnt;
    };
    if (ctx.config.pseudo_tree == PseudoTree::NoPropagation) {
      for (NodeId v = 0; v < n; ++v)
        if (ctx.t_var[v] >= 0 && active_degree(g, kept, v) == 1) x[ctx.t_var[v]] = 1;
    } else {
      bool progress = true;
      while (progress) {
        progress = false;
        for (NodeId v = 0; v < n; ++v) {
          if (labeled[v] || ctx.t_var[v] < 0) continue;
          EdgeId via = -1;
          if (unlabeled_neighbors(v, &via) != 1) continue;
          labeled[v] = 1;
          x[ctx.t_var[v]] = 1;
          const Edge& e = g.edge(via);
          x[ctx.arc_var[via][e.u == v ? 0 : 1]] = 1;
          progress = true;
        }
      }
    }
  }
  return x;
}

}  // namespace mps
