#pragma once

#include <mps/graph.hpp>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/properties.hpp>

#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace mps {

/// A directed traversal of an edge (half-edge).
struct Dart {
  NodeId from;
  NodeId to;
  EdgeId edge;
};

/// Boundary walk of a face; its degree is the number of half-edges.
struct Face {
  std::vector<Dart> darts;
  int degree() const { return static_cast<int>(darts.size()); }
};

/// Combinatorial embedding of the active edges of a host graph: one cyclic edge
/// order per node.
class Embedding {
 public:
  Embedding(const Graph& g, EdgeMask mask, std::vector<std::vector<EdgeId>> rotation)
      : graph_(&g), mask_(std::move(mask)), rotation_(std::move(rotation)) {
    build_faces();
  }

  const Graph& graph() const { return *graph_; }
  const EdgeMask& mask() const { return mask_; }
  const std::vector<EdgeId>& rotation(NodeId v) const { return rotation_.at(static_cast<std::size_t>(v)); }
  const std::vector<Face>& faces() const { return faces_; }
  /// Face index of the half-edge `from -> other end` of `e`.
  int face_of(EdgeId e, NodeId from) const {
    const Edge& ed = graph_->edge(e);
    return dart_face_[static_cast<std::size_t>(2 * e + (from == ed.u ? 0 : 1))];
  }

  /// Face walks of the rotation system restricted to `sub` (a subset of the active edges).
  std::vector<Face> faces_of_restriction(const EdgeMask& sub) const { return walk_faces(sub, nullptr); }

 private:
  std::vector<Face> walk_faces(const EdgeMask& active, std::vector<int>* dart_face) const {
    const Graph& g = *graph_;
    const int n = g.num_nodes();
    std::vector<std::vector<EdgeId>> rot(static_cast<std::size_t>(n));
    std::vector<std::map<EdgeId, std::size_t>> pos(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v)
      for (EdgeId e : rotation_[v])
        if (active[e]) {
          pos[v][e] = rot[v].size();
          rot[v].push_back(e);
        }
    std::vector<char> used(2 * static_cast<std::size_t>(g.num_edges()), 0);
    if (dart_face) dart_face->assign(2 * static_cast<std::size_t>(g.num_edges()), -1);
    std::vector<Face> faces;
    auto dart_index = [&](EdgeId e, NodeId from) { return 2 * e + (from == g.edge(e).u ? 0 : 1); };
    for (EdgeId e0 = 0; e0 < g.num_edges(); ++e0) {
      if (!active[e0]) continue;
      for (int side = 0; side < 2; ++side) {
        NodeId from = side == 0 ? g.edge(e0).u : g.edge(e0).v;
        if (used[dart_index(e0, from)]) continue;
        Face f;
        EdgeId e = e0;
        NodeId u = from;
        while (!used[dart_index(e, u)]) {
          used[dart_index(e, u)] = 1;
          if (dart_face) (*dart_face)[dart_index(e, u)] = static_cast<int>(faces.size());
          NodeId v = g.edge(e).other(u);
          f.darts.push_back({u, v, e});
          const auto& rv = rot[v];
          EdgeId next = rv[(pos[v].at(e) + 1) % rv.size()];
          u = v;
          e = next;
        }
        faces.push_back(std::move(f));
      }
    }
    return faces;
  }

  void build_faces() { faces_ = walk_faces(mask_, &dart_face_); }

  const Graph* graph_;
  EdgeMask mask_;
  std::vector<std::vector<EdgeId>> rotation_;
  std::vector<Face> faces_;
  std::vector<int> dart_face_;
};

enum class KuratowskiKind { K5, K33 };

struct KuratowskiSubdivision {
  KuratowskiKind kind;
  std::vector<EdgeId> edges;  ///< sorted
  std::vector<NodeId> branch_nodes;
};

namespace detail {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                         boost::property<boost::vertex_index_t, int>,
                                         boost::property<boost::edge_index_t, int>>;

inline BoostGraph to_boost(const Graph& g, const EdgeMask& mask, std::vector<EdgeId>& local_to_edge) {
  BoostGraph bg(static_cast<std::size_t>(g.num_nodes()));
  local_to_edge.clear();
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!mask[e]) continue;
    auto [d, ok] = boost::add_edge(static_cast<std::size_t>(g.edge(e).u), static_cast<std::size_t>(g.edge(e).v),
                                   static_cast<int>(local_to_edge.size()), bg);
    (void)d;
    (void)ok;
    local_to_edge.push_back(e);
  }
  return bg;
}

}  // namespace detail

inline bool is_planar(const Graph& g, const EdgeMask& mask) {
  std::vector<EdgeId> local;
  auto bg = detail::to_boost(g, mask, local);
  return boost::boyer_myrvold_planarity_test(bg);
}

inline bool is_planar(const Graph& g) { return is_planar(g, g.all_edges()); }

/// Structural check: do exactly the given edges form a subdivision of K5 or K3,3?
inline std::optional<KuratowskiSubdivision> classify_kuratowski(const Graph& g, std::span<const EdgeId> edges) {
  EdgeMask mask = g.mask_of(edges);
  std::vector<int> deg(static_cast<std::size_t>(g.num_nodes()), 0);
  for (EdgeId e : edges) {
    ++deg[g.edge(e).u];
    ++deg[g.edge(e).v];
  }
  std::vector<NodeId> branch;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (deg[v] == 0 || deg[v] == 2) continue;
    if (deg[v] == 1) return std::nullopt;
    branch.push_back(v);
  }
  KuratowskiKind kind;
  if (branch.size() == 5 && std::all_of(branch.begin(), branch.end(), [&](NodeId v) { return deg[v] == 4; }))
    kind = KuratowskiKind::K5;
  else if (branch.size() == 6 && std::all_of(branch.begin(), branch.end(), [&](NodeId v) { return deg[v] == 3; }))
    kind = KuratowskiKind::K33;
  else
    return std::nullopt;
  std::vector<int> branch_index(static_cast<std::size_t>(g.num_nodes()), -1);
  for (std::size_t i = 0; i < branch.size(); ++i) branch_index[branch[i]] = static_cast<int>(i);
  const std::size_t k = branch.size();
  std::vector<std::vector<int>> paths(k, std::vector<int>(k, 0));
  std::vector<char> edge_used(static_cast<std::size_t>(g.num_edges()), 0);
  std::size_t covered = 0;
  for (NodeId b : branch) {
    for (const auto& [w0, e0] : g.incident(b)) {
      if (!mask[e0] || edge_used[e0]) continue;
      NodeId prev = b, cur = w0;
      EdgeId e = e0;
      edge_used[e] = 1;
      ++covered;
      while (branch_index[cur] < 0) {
        EdgeId nxt = -1;
        NodeId nn = -1;
        for (const auto& [w, f] : g.incident(cur))
          if (mask[f] && f != e) {
            nxt = f;
            nn = w;
          }
        if (nxt < 0 || edge_used[nxt]) return std::nullopt;
        edge_used[nxt] = 1;
        ++covered;
        prev = cur;
        cur = nn;
        e = nxt;
      }
      (void)prev;
      int i = branch_index[b], j = branch_index[cur];
      if (i == j) return std::nullopt;
      ++paths[i][j];
      ++paths[j][i];
    }
  }
  if (covered != edges.size()) return std::nullopt;  // stray cycles of degree-2 nodes
  if (kind == KuratowskiKind::K5) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (i != j && paths[i][j] != 1) return std::nullopt;
  } else {
    // Side of branch 0 = branch nodes not joined to it.
    std::vector<int> side(k, -1);
    side[0] = 0;
    for (std::size_t j = 1; j < k; ++j) side[j] = paths[0][j] == 1 ? 1 : (paths[0][j] == 0 ? 0 : -1);
    if (std::count(side.begin(), side.end(), 0) != 3 || std::count(side.begin(), side.end(), 1) != 3)
      return std::nullopt;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (i != j && paths[i][j] != (side[i] != side[j] ? 1 : 0)) return std::nullopt;
  }
  KuratowskiSubdivision ks{kind, {edges.begin(), edges.end()}, branch};
  std::sort(ks.edges.begin(), ks.edges.end());
  return ks;
}

/// Minimal non-planar edge subset of the active edges by iterative deletion in
/// `order` (ascending edge id when empty). Precondition: active edges non-planar.
inline KuratowskiSubdivision extract_kuratowski(const Graph& g, const EdgeMask& mask,
                                                std::span<const EdgeId> order = {}) {
  if (is_planar(g, mask)) throw std::logic_error("extract_kuratowski called on a planar graph");
  EdgeMask cur = mask;
  std::vector<EdgeId> seq(order.begin(), order.end());
  if (seq.empty()) seq = edges_of(mask);
  for (EdgeId e : seq) {
    if (!cur[e]) continue;
    cur[e] = false;
    if (is_planar(g, cur)) cur[e] = true;
  }
  auto ks = classify_kuratowski(g, edges_of(cur));
  if (!ks) throw std::logic_error("edge-minimal non-planar subgraph is not a Kuratowski subdivision");
  return *ks;
}

inline KuratowskiSubdivision extract_kuratowski(const Graph& g) { return extract_kuratowski(g, g.all_edges()); }

/// Planar embedding of the active edges, or a Kuratowski subdivision certifying non-planarity.
inline std::variant<Embedding, KuratowskiSubdivision> test_planarity(const Graph& g, const EdgeMask& mask) {
  std::vector<EdgeId> local;
  auto bg = detail::to_boost(g, mask, local);
  using EdgeDesc = boost::graph_traits<detail::BoostGraph>::edge_descriptor;
  std::vector<std::vector<EdgeDesc>> storage(static_cast<std::size_t>(g.num_nodes()));
  auto emb = boost::make_iterator_property_map(storage.begin(), get(boost::vertex_index, bg));
  if (!boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                           boost::boyer_myrvold_params::embedding = emb))
    return extract_kuratowski(g, mask);
  auto eidx = get(boost::edge_index, bg);
  std::vector<std::vector<EdgeId>> rotation(static_cast<std::size_t>(g.num_nodes()));
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    for (const auto& d : storage[v]) rotation[v].push_back(local[static_cast<std::size_t>(eidx[d])]);
  return Embedding(g, mask, std::move(rotation));
}

inline std::variant<Embedding, KuratowskiSubdivision> test_planarity(const Graph& g) {
  return test_planarity(g, g.all_edges());
}

/// Number of faces per face degree.
using FaceDegreeCensus = std::map<int, int>;

inline FaceDegreeCensus face_degree_census(const Embedding& emb) {
  FaceDegreeCensus census;
  for (const auto& f : emb.faces()) ++census[f.degree()];
  return census;
}

/// Injective face -> cycle map (indexed like `emb.faces()`), each cycle lying on
/// its face's boundary. Every face's candidates are the boundary cycles of the
/// block faces it contains; a bipartite matching picks distinct ones.
/// Precondition: active edges connected and some block is neither an edge nor a cycle.
inline std::vector<std::optional<Cycle>> assign_cycles_to_faces(const Graph& g, const Embedding& emb) {
  const EdgeMask& mask = emb.mask();
  if (!is_connected(g, mask, true)) throw std::invalid_argument("assign_cycles_to_faces: graph not connected");
  auto blocks = biconnected_components(g, mask);
  bool has_rich_block = false;
  for (const auto& b : blocks) {
    if (b.size() < 2) continue;
    std::map<NodeId, int> deg;
    for (EdgeId e : b) {
      ++deg[g.edge(e).u];
      ++deg[g.edge(e).v];
    }
    bool is_cycle = std::all_of(deg.begin(), deg.end(), [](const auto& p) { return p.second == 2; });
    if (!is_cycle) has_rich_block = true;
  }
  if (!has_rich_block)
    throw std::invalid_argument("assign_cycles_to_faces: every block is an edge or a cycle");

  std::vector<Cycle> cycles;
  std::vector<std::vector<int>> candidates(emb.faces().size());
  for (const auto& b : blocks) {
    if (b.size() < 3) continue;
    EdgeMask sub = g.mask_of(b);
    for (const Face& bf : emb.faces_of_restriction(sub)) {
      std::vector<NodeId> nodes;
      for (const Dart& d : bf.darts) nodes.push_back(d.from);
      Cycle c = Cycle::from_nodes(g, nodes);
      auto it = std::find(cycles.begin(), cycles.end(), c);
      int id = static_cast<int>(it - cycles.begin());
      if (it == cycles.end()) cycles.push_back(std::move(c));
      int hf = emb.face_of(bf.darts.front().edge, bf.darts.front().from);
      auto& cand = candidates[static_cast<std::size_t>(hf)];
      if (std::find(cand.begin(), cand.end(), id) == cand.end()) cand.push_back(id);
    }
  }
  // Kuhn's augmenting-path matching.
  std::vector<int> cycle_owner(cycles.size(), -1), face_cycle(emb.faces().size(), -1);
  for (std::size_t f = 0; f < candidates.size(); ++f) {
    std::vector<char> seen(cycles.size(), 0);
    auto augment = [&](auto&& self, int face) -> bool {
      for (int c : candidates[static_cast<std::size_t>(face)]) {
        if (seen[c]) continue;
        seen[c] = 1;
        if (cycle_owner[c] < 0 || self(self, cycle_owner[c])) {
          cycle_owner[c] = face;
          face_cycle[static_cast<std::size_t>(face)] = c;
          return true;
        }
      }
      return false;
    };
    augment(augment, static_cast<int>(f));
  }
  std::vector<std::optional<Cycle>> out(emb.faces().size());
  for (std::size_t f = 0; f < out.size(); ++f)
    if (face_cycle[f] >= 0) out[f] = cycles[static_cast<std::size_t>(face_cycle[f])];
  return out;
}

/// Greedy maximal planar subgraph: edges are tried in `order` and kept while planar.
inline EdgeMask maximal_planar_subgraph(const Graph& g, std::span<const EdgeId> order) {
  EdgeMask kept(static_cast<std::size_t>(g.num_edges()), false);
  for (EdgeId e : order) {
    if (kept[e]) continue;
    kept[e] = true;
    if (!is_planar(g, kept)) kept[e] = false;
  }
  return kept;
}

inline EdgeMask maximal_planar_subgraph(const Graph& g) {
  std::vector<EdgeId> order(static_cast<std::size_t>(g.num_edges()));
  std::iota(order.begin(), order.end(), 0);
  return maximal_planar_subgraph(g, order);
}

}  // namespace mps
