#pragma once

#include <algorithm>
#include <cstddef>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "glueconn/error.hpp"
#include "glueconn/matrix.hpp"

namespace glueconn {

using Vertex = std::size_t;

/// Undirected edge stored canonically with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

inline std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

/// Undirected simple unweighted graph on vertices 0..N-1. Immutable once built;
/// edges are kept sorted in canonical (min,max) order.
class Graph {
public:
  Graph() = default;

  /// Validating constructor. Rejects self-loops, out-of-range endpoints and
  /// duplicate edges (including reversed duplicates) with Error(spec).
  Graph(std::size_t vertex_count, const std::vector<std::pair<Vertex, Vertex>>& edge_list)
      : n_(vertex_count), adj_(vertex_count) {
    edges_.reserve(edge_list.size());
    for (const auto& [a, b] : edge_list) {
      if (a >= n_ || b >= n_)
        throw Error(ErrorKind::spec, "edge (" + std::to_string(a) + "," + std::to_string(b) +
                                         ") references a vertex outside 0.." +
                                         std::to_string(n_ == 0 ? 0 : n_ - 1));
      if (a == b) throw Error(ErrorKind::spec, "self-loop at vertex " + std::to_string(a));
      edges_.push_back(make_edge(a, b));
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto it = std::adjacent_find(edges_.begin(), edges_.end()); it != edges_.end())
      throw Error(ErrorKind::spec, "duplicate edge " + to_string(*it));
    for (const Edge& e : edges_) {
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  }

  static Graph from_edges(std::size_t vertex_count, const std::vector<Edge>& edges) {
    return Graph(vertex_count, to_pairs(edges));
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
  std::size_t degree(Vertex v) const { return adj_.at(v).size(); }

  bool has_edge(Vertex a, Vertex b) const {
    if (a >= n_ || b >= n_ || a == b) return false;
    return std::binary_search(edges_.begin(), edges_.end(), make_edge(a, b));
  }

  friend bool operator==(const Graph& x, const Graph& y) {
    return x.n_ == y.n_ && x.edges_ == y.edges_;
  }

private:
  static std::vector<std::pair<Vertex, Vertex>> to_pairs(const std::vector<Edge>& edges) {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edges.size());
    for (const Edge& e : edges) out.emplace_back(e.u, e.v);
    return out;
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
};

inline Graph build_graph(std::size_t vertex_count,
                         const std::vector<std::pair<Vertex, Vertex>>& edge_list) {
  return Graph(vertex_count, edge_list);
}

/// Sorted set of distinct vertices of some graph.
class VertexSet {
public:
  VertexSet() = default;

  /// Validates every member against `g`; repeated members are rejected.
  VertexSet(const Graph& g, std::vector<Vertex> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (auto it = std::adjacent_find(members_.begin(), members_.end()); it != members_.end())
      throw Error(ErrorKind::spec, "vertex " + std::to_string(*it) + " listed twice");
    if (!members_.empty() && members_.back() >= g.vertex_count())
      throw Error(ErrorKind::spec, "vertex " + std::to_string(members_.back()) +
                                       " is not in a graph of order " +
                                       std::to_string(g.vertex_count()));
  }

  static VertexSet range(const Graph& g, Vertex first, Vertex last) {
    std::vector<Vertex> m;
    for (Vertex v = first; v < last; ++v) m.push_back(v);
    return VertexSet(g, std::move(m));
  }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Vertex v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
  }
  const std::vector<Vertex>& members() const noexcept { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
  std::vector<Vertex> members_;
};

/// L = D - A.
inline SymMatrix laplacian(const Graph& g) {
  SymMatrix l(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) l.set(v, v, static_cast<double>(g.degree(v)));
  for (const Edge& e : g.edges()) l.set(e.u, e.v, -1.0);
  return l;
}

inline SymMatrix adjacency(const Graph& g) {
  SymMatrix a(g.vertex_count());
  for (const Edge& e : g.edges()) a.set(e.u, e.v, 1.0);
  return a;
}

/// Component label per vertex, labels numbered in order of first appearance.
inline std::vector<std::size_t> component_labels(const Graph& g) {
  constexpr std::size_t unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(g.vertex_count(), unseen);
  std::size_t next = 0;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (label[s] != unseen) continue;
    std::queue<Vertex> q;
    q.push(s);
    label[s] = next;
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop();
      for (Vertex w : g.neighbors(v))
        if (label[w] == unseen) {
          label[w] = next;
          q.push(w);
        }
    }
    ++next;
  }
  return label;
}

inline std::size_t component_count(const Graph& g) {
  const auto labels = component_labels(g);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

inline bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0)
    throw Error(ErrorKind::domain, "connectivity is undefined for the empty graph");
  return component_count(g) == 1;
}

/// Number of edges with one endpoint in `s1` and the other in `s2`.
inline std::size_t cut(const Graph& g, const VertexSet& s1, const VertexSet& s2) {
  if (s1.empty() || s2.empty()) throw Error(ErrorKind::precondition, "cut of an empty vertex set");
  for (Vertex v : s1)
    if (s2.contains(v))
      throw Error(ErrorKind::precondition,
                  "cut sets overlap at vertex " + std::to_string(v));
  std::size_t count = 0;
  for (const Edge& e : g.edges())
    if ((s1.contains(e.u) && s2.contains(e.v)) || (s1.contains(e.v) && s2.contains(e.u)))
      ++count;
  return count;
}

inline VertexSet complement_set(const Graph& g, const VertexSet& s) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!s.contains(v)) out.push_back(v);
  return VertexSet(g, std::move(out));
}

/// cut(S, V\S) without the nonempty-complement requirement of cut().
inline std::size_t boundary_size(const Graph& g, const VertexSet& s) {
  std::size_t count = 0;
  for (const Edge& e : g.edges())
    if (s.contains(e.u) != s.contains(e.v)) ++count;
  return count;
}

}  // namespace glueconn
