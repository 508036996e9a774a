#pragma once

#include <mps/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mps {

using NodeId = int;
using EdgeId = int;

/// Active-edge selector over a host graph. Edge ids stay those of the host.
using EdgeMask = std::vector<bool>;

struct Edge {
  NodeId u;
  NodeId v;
  Rational weight;

  NodeId other(NodeId x) const { return x == u ? v : u; }
};

struct Incidence {
  NodeId neighbor;
  EdgeId edge;
};

/// Undirected simple graph with strictly positive rational edge weights.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int num_nodes) : adjacency_(static_cast<std::size_t>(num_nodes)) {}

  int num_nodes() const { return static_cast<int>(adjacency_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  NodeId add_node() {
    adjacency_.emplace_back();
    return num_nodes() - 1;
  }

  EdgeId add_edge(NodeId u, NodeId v, Rational weight = 1) {
    if (u < 0 || v < 0 || u >= num_nodes() || v >= num_nodes())
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop " + std::to_string(u));
    weight.canonicalize();
    if (weight <= 0) throw std::invalid_argument("edge weight must be positive");
    if (find_edge(u, v)) {
      throw std::invalid_argument("parallel edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    EdgeId id = num_edges();
    edges_.push_back({u, v, std::move(weight)});
    adjacency_[u].push_back({v, id});
    adjacency_[v].push_back({u, id});
    index_.emplace(key(u, v), id);
    return id;
  }

  const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Incidence> incident(NodeId v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  int degree(NodeId v) const { return static_cast<int>(incident(v).size()); }

  std::optional<EdgeId> find_edge(NodeId u, NodeId v) const {
    auto it = index_.find(key(u, v));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool integral_weights() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight.get_den() == 1; });
  }

  Rational total_weight(std::span<const EdgeId> es) const {
    Rational sum = 0;
    for (EdgeId e : es) sum += edge(e).weight;
    return sum;
  }

  EdgeMask all_edges() const { return EdgeMask(edges_.size(), true); }

  EdgeMask mask_of(std::span<const EdgeId> es) const {
    EdgeMask m(edges_.size(), false);
    for (EdgeId e : es) m.at(static_cast<std::size_t>(e)) = true;
    return m;
  }

 private:
  static std::uint64_t key(NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) | static_cast<std::uint32_t>(v);
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
  std::unordered_map<std::uint64_t, EdgeId> index_;
};

inline std::vector<EdgeId> edges_of(const EdgeMask& mask) {
  std::vector<EdgeId> out;
  for (std::size_t e = 0; e < mask.size(); ++e)
    if (mask[e]) out.push_back(static_cast<EdgeId>(e));
  return out;
}

inline int active_degree(const Graph& g, const EdgeMask& mask, NodeId v) {
  int d = 0;
  for (const auto& inc : g.incident(v)) d += mask[inc.edge] ? 1 : 0;
  return d;
}

/// Component label per node over the active edges (isolated nodes get their own).
inline std::vector<int> connected_components(const Graph& g, const EdgeMask& mask, int* count = nullptr) {
  std::vector<int> comp(static_cast<std::size_t>(g.num_nodes()), -1);
  int c = 0;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (const auto& inc : g.incident(v)) {
        if (!mask[inc.edge] || comp[inc.neighbor] >= 0) continue;
        comp[inc.neighbor] = c;
        stack.push_back(inc.neighbor);
      }
    }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

/// True iff the active edges span a connected graph on the nodes they touch
/// (ignoring nodes without active edges when `ignore_isolated`).
inline bool is_connected(const Graph& g, const EdgeMask& mask, bool ignore_isolated = false) {
  int count = 0;
  auto comp = connected_components(g, mask, &count);
  if (!ignore_isolated) return count <= 1;
  int seen = -1;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (active_degree(g, mask, v) == 0) continue;
    if (seen < 0) seen = comp[v];
    else if (comp[v] != seen) return false;
  }
  return true;
}

/// Biconnected components over active edges, each given as its edge list.
/// Bridges form single-edge blocks.
inline std::vector<std::vector<EdgeId>> biconnected_components(const Graph& g, const EdgeMask& mask) {
  const int n = g.num_nodes();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<EdgeId> edge_stack;
  std::vector<std::vector<EdgeId>> blocks;
  int timer = 0;
  struct Frame {
    NodeId v;
    EdgeId via;
    std::size_t next;
  };
  for (NodeId root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto inc = g.incident(f.v);
      if (f.next < inc.size()) {
        const auto& [w, e] = inc[f.next++];
        if (!mask[e] || e == f.via) continue;
        if (disc[w] < 0) {
          edge_stack.push_back(e);
          disc[w] = low[w] = timer++;
          stack.push_back({w, e, 0});
        } else if (disc[w] < disc[f.v]) {
          edge_stack.push_back(e);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      Frame done = f;
      stack.pop_back();
      if (stack.empty()) break;
      NodeId parent = stack.back().v;
      low[parent] = std::min(low[parent], low[done.v]);
      if (low[done.v] >= disc[parent]) {
        std::vector<EdgeId> block;
        while (true) {
          EdgeId e = edge_stack.back();
          edge_stack.pop_back();
          block.push_back(e);
          if (e == done.via) break;
        }
        std::sort(block.begin(), block.end());
        blocks.push_back(std::move(block));
      }
    }
  }
  return blocks;
}

/// Length of a shortest cycle over the active edges; nullopt for forests.
inline std::optional<int> girth(const Graph& g, const EdgeMask& mask) {
  const int n = g.num_nodes();
  int best = n + 1;
  std::vector<int> dist(n), parent_edge(n);
  for (NodeId root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[root] = 0;
    parent_edge[root] = -1;
    std::queue<NodeId> q;
    q.push(root);
    while (!q.empty()) {
      NodeId v = q.front();
      q.pop();
      if (2 * dist[v] + 1 >= best) break;
      for (const auto& [w, e] : g.incident(v)) {
        if (!mask[e] || e == parent_edge[v]) continue;
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          parent_edge[w] = e;
          q.push(w);
        } else {
          best = std::min(best, dist[v] + dist[w] + 1);
        }
      }
    }
  }
  if (best > n) return std::nullopt;
  return best;
}

inline std::optional<int> girth(const Graph& g) { return girth(g, g.all_edges()); }

inline bool is_bipartite(const Graph& g, const EdgeMask& mask) {
  std::vector<int> color(static_cast<std::size_t>(g.num_nodes()), -1);
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::vector<NodeId> stack{s};
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (const auto& [w, e] : g.incident(v)) {
        if (!mask[e]) continue;
        if (color[w] < 0) {
          color[w] = 1 - color[v];
          stack.push_back(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

inline bool is_bipartite(const Graph& g) { return is_bipartite(g, g.all_edges()); }

/// Rotation/reflection canonical form of a cyclic node sequence: smallest node
/// first, then the smaller of its two neighbours second.
inline std::vector<NodeId> canonical_cycle_order(std::vector<NodeId> nodes) {
  if (nodes.size() < 3) return nodes;
  auto it = std::min_element(nodes.begin(), nodes.end());
  std::rotate(nodes.begin(), it, nodes.end());
  if (nodes[1] > nodes.back()) std::reverse(nodes.begin() + 1, nodes.end());
  return nodes;
}

/// A simple cycle of a host graph, stored canonically so that equal cycles
/// compare equal regardless of starting node and orientation.
class Cycle {
 public:
  Cycle() = default;

  static Cycle from_nodes(const Graph& g, std::vector<NodeId> nodes) {
    if (nodes.size() < 3) throw std::invalid_argument("cycle needs at least 3 nodes");
    std::vector<NodeId> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("cycle repeats a node");
    Cycle c;
    c.nodes_ = canonical_cycle_order(std::move(nodes));
    for (std::size_t i = 0; i < c.nodes_.size(); ++i) {
      auto e = g.find_edge(c.nodes_[i], c.nodes_[(i + 1) % c.nodes_.size()]);
      if (!e) throw std::invalid_argument("cycle uses a non-edge");
      c.edges_.push_back(*e);
    }
    std::sort(c.edges_.begin(), c.edges_.end());
    c.sorted_nodes_ = std::move(sorted);
    return c;
  }

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<NodeId>& sorted_nodes() const { return sorted_nodes_; }
  const std::vector<EdgeId>& edges() const { return edges_; }
  int length() const { return static_cast<int>(nodes_.size()); }

  bool contains_edge(EdgeId e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }
  bool contains_node(NodeId v) const { return std::binary_search(sorted_nodes_.begin(), sorted_nodes_.end(), v); }

  /// The two cycle neighbours of `v` (which must lie on the cycle).
  std::pair<NodeId, NodeId> neighbors(NodeId v) const {
    auto it = std::find(nodes_.begin(), nodes_.end(), v);
    if (it == nodes_.end()) throw std::invalid_argument("node not on cycle");
    std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
    NodeId a = nodes_[(i + nodes_.size() - 1) % nodes_.size()];
    NodeId b = nodes_[(i + 1) % nodes_.size()];
    return {std::min(a, b), std::max(a, b)};
  }

  friend bool operator==(const Cycle& a, const Cycle& b) { return a.nodes_ == b.nodes_; }
  friend auto operator<=>(const Cycle& a, const Cycle& b) {
    if (a.nodes_.size() != b.nodes_.size()) return a.nodes_.size() <=> b.nodes_.size();
    return a.nodes_ <=> b.nodes_;
  }

 private:
  std::vector<NodeId> nodes_;
  std::vector<NodeId> sorted_nodes_;
  std::vector<EdgeId> edges_;
};

/// Ordered sequence up to rotation and reversal.
class CyclicOrder {
 public:
  explicit CyclicOrder(std::vector<NodeId> elements) : elements_(canonical_cycle_order(std::move(elements))) {}

  /// Restriction to `subset` (sorted), keeping relative order.
  CyclicOrder restricted_to(std::span<const NodeId> subset) const {
    std::vector<NodeId> kept;
    for (NodeId x : elements_)
      if (std::binary_search(subset.begin(), subset.end(), x)) kept.push_back(x);
    return CyclicOrder(std::move(kept));
  }

  const std::vector<NodeId>& elements() const { return elements_; }
  friend bool operator==(const CyclicOrder&, const CyclicOrder&) = default;

 private:
  std::vector<NodeId> elements_;
};

struct CycleLimits {
  std::size_t max_cycles = 200000;
  int max_length = 30;
};

class CycleBudgetExceeded : public std::runtime_error {
 public:
  CycleBudgetExceeded() : std::runtime_error("cycle enumeration budget exceeded") {}
};

/// All simple cycles of length 3..max_length, each once, sorted by (length, nodes).
/// Throws CycleBudgetExceeded when more than `cap` cycles exist.
inline std::vector<Cycle> enumerate_cycles_up_to(const Graph& g, int max_length,
                                                 std::size_t cap = CycleLimits{}.max_cycles) {
  if (max_length < 3) throw std::invalid_argument("maximum cycle length must be at least 3");
  std::vector<Cycle> out;
  const int n = g.num_nodes();
  std::vector<char> on_path(static_cast<std::size_t>(n), 0);
  std::vector<NodeId> path;
  // DFS from each anchor through larger ids only; a cycle is emitted from its
  // smallest node in the orientation whose second node is smaller than its last.
  auto dfs = [&](auto&& self, NodeId anchor, NodeId v) -> void {
    for (const auto& [w, e] : g.incident(v)) {
      if (w == anchor) {
        if (path.size() >= 3 && path[1] < path.back()) {
          if (out.size() >= cap) throw CycleBudgetExceeded();
          out.push_back(Cycle::from_nodes(g, path));
        }
        continue;
      }
      if (w < anchor || on_path[w] || static_cast<int>(path.size()) >= max_length) continue;
      on_path[w] = 1;
      path.push_back(w);
      self(self, anchor, w);
      path.pop_back();
      on_path[w] = 0;
    }
  };
  for (NodeId anchor = 0; anchor < n; ++anchor) {
    path.assign(1, anchor);
    on_path[anchor] = 1;
    dfs(dfs, anchor, anchor);
    on_path[anchor] = 0;
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct CycleSelection {
  int max_length = 3;
  std::vector<Cycle> cycles;
  bool capped = false;  ///< a count or length cap froze the length early
};

/// Smallest D >= 3 with at least `min_count` cycles of length <= D. Stops at the
/// node count (no longer cycles exist) or at the caps, keeping the last complete level.
inline CycleSelection choose_max_cycle_length(const Graph& g, std::size_t min_count,
                                              const CycleLimits& limits = {}) {
  if (min_count < 1) throw std::invalid_argument("minimum cycle count must be positive");
  CycleSelection sel;
  const int hard_max = std::max(3, g.num_nodes());
  for (int d = 3;; ++d) {
    if (d > limits.max_length) {
      sel.capped = true;
      break;
    }
    try {
      sel.cycles = enumerate_cycles_up_to(g, d, limits.max_cycles);
      sel.max_length = d;
    } catch (const CycleBudgetExceeded&) {
      sel.capped = true;
      if (d == 3) {
        // Not even the triangles fit; keep a truncated triangle set.
        sel.max_length = 3;
        sel.cycles.clear();
        std::vector<Cycle> partial;
        for (NodeId a = 0; a < g.num_nodes() && partial.size() < limits.max_cycles; ++a)
          for (const auto& [b, e1] : g.incident(a))
            for (const auto& [c, e2] : g.incident(b))
              if (a < b && b < c && g.find_edge(a, c) && partial.size() < limits.max_cycles)
                partial.push_back(Cycle::from_nodes(g, {a, b, c}));
        std::sort(partial.begin(), partial.end());
        sel.cycles = std::move(partial);
      }
      break;
    }
    if (sel.cycles.size() >= min_count || d >= hard_max) break;
  }
  return sel;
}

/// Common nodes whose two incident cycle edges coincide in both cycles.
inline std::vector<NodeId> inner_nodes(const Cycle& a, const Cycle& b) {
  std::vector<NodeId> common;
  std::set_intersection(a.sorted_nodes().begin(), a.sorted_nodes().end(), b.sorted_nodes().begin(),
                        b.sorted_nodes().end(), std::back_inserter(common));
  std::vector<NodeId> out;
  for (NodeId v : common)
    if (a.neighbors(v) == b.neighbors(v)) out.push_back(v);
  return out;
}

/// True iff the cyclic orders the two cycles induce on their common nodes differ
/// even up to reversal (requires at least four common nodes).
inline bool conflicting_cycles(const Cycle& a, const Cycle& b) {
  std::vector<NodeId> common;
  std::set_intersection(a.sorted_nodes().begin(), a.sorted_nodes().end(), b.sorted_nodes().begin(),
                        b.sorted_nodes().end(), std::back_inserter(common));
  if (common.size() < 4) return false;
  return CyclicOrder(a.nodes()).restricted_to(common) != CyclicOrder(b.nodes()).restricted_to(common);
}

}  // namespace mps
