#pragma once

#include <mps/graph.hpp>
#include <mps/planarity.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

namespace mps {

inline Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

/// Complete multipartite graph; parts occupy consecutive node ids.
inline Graph complete_multipartite(std::span<const int> parts) {
  int n = std::accumulate(parts.begin(), parts.end(), 0);
  Graph g(n);
  std::vector<int> part_of;
  for (std::size_t p = 0; p < parts.size(); ++p) part_of.insert(part_of.end(), static_cast<std::size_t>(parts[p]), static_cast<int>(p));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (part_of[u] != part_of[v]) g.add_edge(u, v);
  return g;
}

inline Graph complete_bipartite(int a, int b) {
  int parts[] = {a, b};
  return complete_multipartite(parts);
}

inline Graph cycle_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

/// C_n(j1, j2, ...): node i adjacent to i +- j for every jump j.
inline Graph circulant(int n, std::span<const int> jumps) {
  Graph g(n);
  for (int j : jumps) {
    if (j <= 0 || 2 * j > n) throw std::invalid_argument("circulant jump must lie in [1, n/2]");
    for (int i = 0; i < n; ++i) {
      int k = (i + j) % n;
      if (!g.find_edge(i, k)) g.add_edge(i, k);
    }
  }
  return g;
}

inline Graph petersen_graph() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

/// K_k with every edge subdivided by floor(mu / 3) extra nodes.
inline Graph subdivided_complete(int k, int mu) {
  int xi = mu / 3;
  Graph g(k);
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) {
      NodeId prev = u;
      for (int i = 0; i < xi; ++i) {
        NodeId w = g.add_node();
        g.add_edge(prev, w);
        prev = w;
      }
      g.add_edge(prev, v);
    }
  return g;
}

inline Graph gnp(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

/// Uniform-ish d-regular simple graph via the pairing model with restarts.
inline Graph random_regular(int n, int d, std::mt19937_64& rng, int attempts = 1000) {
  if (d < 0 || d >= n || (n * d) % 2 != 0) throw std::invalid_argument("no simple d-regular graph on n nodes");
  for (int a = 0; a < attempts; ++a) {
    std::vector<NodeId> points;
    for (int v = 0; v < n; ++v) points.insert(points.end(), static_cast<std::size_t>(d), v);
    std::shuffle(points.begin(), points.end(), rng);
    Graph g(n);
    bool ok = true;
    for (std::size_t i = 0; ok && i < points.size(); i += 2) {
      NodeId u = points[i], v = points[i + 1];
      if (u == v || g.find_edge(u, v)) ok = false;
      else g.add_edge(u, v);
    }
    if (ok) return g;
  }
  throw std::runtime_error("random_regular: pairing model did not produce a simple graph");
}

/// Connected planar graph: random spanning tree, then random extra edges
/// kept whenever planarity survives.
inline Graph random_connected_planar(int n, int extra_edges, std::mt19937_64& rng) {
  Graph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.find_edge(u, v)) pairs.emplace_back(u, v);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  int added = 0;
  for (auto [u, v] : pairs) {
    if (added >= extra_edges) break;
    g.add_edge(u, v);
    if (is_planar(g)) {
      ++added;
      continue;
    }
    Graph h(n);
    for (EdgeId e = 0; e + 1 < g.num_edges(); ++e) h.add_edge(g.edge(e).u, g.edge(e).v, g.edge(e).weight);
    g = std::move(h);
  }
  return g;
}

/// G(n, p) conditioned on being connected, non-planar and at most max_edges.
inline Graph random_nonplanar_gnp(int n, double p, int max_edges, std::mt19937_64& rng, int attempts = 100000) {
  for (int a = 0; a < attempts; ++a) {
    Graph g = gnp(n, p, rng);
    if (g.num_edges() > max_edges || !is_connected(g, g.all_edges())) continue;
    if (!is_planar(g)) return g;
  }
  throw std::runtime_error("random_nonplanar_gnp: no sample met the conditions");
}

/// Builds a graph from a generator expression:
///   K5, K3,3 or K2,2,2 (complete / multipartite), K5^9 (subdivided complete),
///   C16(1,2,8) (circulant), cycle(n), path(n), petersen,
///   gnp(n,p), nonplanar_gnp(n,p,max_edges), planar(n,extra), regular(n,d).
/// Random families draw from a generator seeded with `seed`.
inline Graph generate(const std::string& expr, std::uint64_t seed = 1) {
  std::smatch m;
  auto ints = [](const std::string& list) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < list.size()) {
      std::size_t comma = list.find(',', pos);
      if (comma == std::string::npos) comma = list.size();
      out.push_back(std::stoi(list.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    return out;
  };
  std::mt19937_64 rng(seed);
  static const std::regex complete(R"(K(\d+))"), multi(R"(K(\d+(?:,\d+)+))"), subdiv(R"(K(\d+)\^(\d+))"),
      circ(R"(C(\d+)\((\d+(?:,\d+)*)\))"), call(R"((\w+)\(([\d.,]*)\))");
  if (expr == "petersen") return petersen_graph();
  if (std::regex_match(expr, m, complete)) return complete_graph(std::stoi(m[1]));
  if (std::regex_match(expr, m, multi)) return complete_multipartite(ints(m[1]));
  if (std::regex_match(expr, m, subdiv)) return subdivided_complete(std::stoi(m[1]), std::stoi(m[2]));
  if (std::regex_match(expr, m, circ)) return circulant(std::stoi(m[1]), ints(m[2]));
  if (std::regex_match(expr, m, call)) {
    std::string name = m[1];
    std::vector<std::string> args;
    std::string list = m[2];
    for (std::size_t pos = 0; pos <= list.size() && !list.empty();) {
      std::size_t comma = list.find(',', pos);
      if (comma == std::string::npos) comma = list.size();
      args.push_back(list.substr(pos, comma - pos));
      pos = comma + 1;
    }
    auto need = [&](std::size_t k) {
      if (args.size() != k) throw std::invalid_argument(name + " expects " + std::to_string(k) + " arguments");
    };
    if (name == "cycle") {
      need(1);
      return cycle_graph(std::stoi(args[0]));
    }
    if (name == "path") {
      need(1);
      return path_graph(std::stoi(args[0]));
    }
    if (name == "gnp") {
      need(2);
      return gnp(std::stoi(args[0]), std::stod(args[1]), rng);
    }
    if (name == "nonplanar_gnp") {
      need(3);
      return random_nonplanar_gnp(std::stoi(args[0]), std::stod(args[1]), std::stoi(args[2]), rng);
    }
    if (name == "planar") {
      need(2);
      return random_connected_planar(std::stoi(args[0]), std::stoi(args[1]), rng);
    }
    if (name == "regular") {
      need(2);
      return random_regular(std::stoi(args[0]), std::stoi(args[1]), rng);
    }
  }
  throw std::invalid_argument("unknown generator expression '" + expr + "'");
}

}  // namespace mps
