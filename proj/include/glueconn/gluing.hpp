#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glueconn/error.hpp"
#include "glueconn/graph.hpp"

namespace glueconn {

/// Bridge B between two disjoint graphs: pair i joins pairs[i].first in G1
/// to pairs[i].second in G2. k = pairs.size().
struct BridgeSpec {
  std::vector<std::pair<Vertex, Vertex>> pairs;

  std::size_t k() const noexcept { return pairs.size(); }
};

/// Shared full subgraph Y: position i of both lists names the same vertex of Y.
struct InterfaceSpec {
  std::vector<Vertex> y_in_g1;
  std::vector<Vertex> y_in_g2;

  std::size_t size() const noexcept { return y_in_g1.size(); }
};

enum class GlueKind { bridge, interface };

struct GlueResult {
  Graph graph;
  std::vector<Vertex> map_g1;  // G1 vertex -> combined vertex
  std::vector<Vertex> map_g2;  // G2 vertex -> combined vertex
  GlueKind kind = GlueKind::bridge;
  /// Bridge edges present in `graph`, in the order they were added.
  std::vector<Edge> bridge_edges;
  /// Orders of the glued inputs, kept for the bound formulas.
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t interface_size = 0;
};

struct BridgeOptions {
  /// Definition-level relaxation: let one vertex anchor several bridge edges.
  bool allow_shared_anchors = false;
};

inline void validate(const Graph& g1, const Graph& g2, const BridgeSpec& bridge,
                     const BridgeOptions& opts = {}) {
  std::vector<Vertex> side1, side2;
  std::vector<std::pair<Vertex, Vertex>> seen;
  for (const auto& [a, b] : bridge.pairs) {
    const std::string pair = "bridge pair (" + std::to_string(a) + "," + std::to_string(b) + ")";
    if (a >= g1.vertex_count()) throw Error(ErrorKind::spec, pair + ": no such vertex in G1");
    if (b >= g2.vertex_count()) throw Error(ErrorKind::spec, pair + ": no such vertex in G2");
    if (std::find(seen.begin(), seen.end(), std::pair{a, b}) != seen.end())
      throw Error(ErrorKind::spec, pair + ": listed twice");
    if (!opts.allow_shared_anchors) {
      if (std::find(side1.begin(), side1.end(), a) != side1.end())
        throw Error(ErrorKind::spec, pair + ": G1 anchor already used by another bridge edge");
      if (std::find(side2.begin(), side2.end(), b) != side2.end())
        throw Error(ErrorKind::spec, pair + ": G2 anchor already used by another bridge edge");
    }
    side1.push_back(a);
    side2.push_back(b);
    seen.emplace_back(a, b);
  }
}

/// Disjoint union of G1 and G2 plus the k bridge edges. G1 keeps its labels,
/// G2 is shifted by |V(G1)|.
inline GlueResult bridge_glue(const Graph& g1, const Graph& g2, const BridgeSpec& bridge,
                              const BridgeOptions& opts = {}) {
  validate(g1, g2, bridge, opts);
  const std::size_t n1 = g1.vertex_count();
  const std::size_t n2 = g2.vertex_count();

  GlueResult r;
  r.kind = GlueKind::bridge;
  r.n1 = n1;
  r.n2 = n2;
  r.map_g1.resize(n1);
  r.map_g2.resize(n2);
  for (Vertex v = 0; v < n1; ++v) r.map_g1[v] = v;
  for (Vertex v = 0; v < n2; ++v) r.map_g2[v] = n1 + v;

  std::vector<Edge> edges = g1.edges();
  for (const Edge& e : g2.edges()) edges.push_back(make_edge(n1 + e.u, n1 + e.v));
  for (const auto& [a, b] : bridge.pairs) {
    const Edge e = make_edge(a, n1 + b);
    edges.push_back(e);
    r.bridge_edges.push_back(e);
  }
  r.graph = Graph::from_edges(n1 + n2, edges);
  return r;
}

inline void validate(const Graph& g1, const Graph& g2, const InterfaceSpec& iface) {
  if (iface.y_in_g1.size() != iface.y_in_g2.size())
    throw Error(ErrorKind::spec, "interface lists differ in length (" +
                                     std::to_string(iface.y_in_g1.size()) + " vs " +
                                     std::to_string(iface.y_in_g2.size()) + ")");
  auto check_list = [](const Graph& g, const std::vector<Vertex>& ys, const char* name) {
    for (std::size_t i = 0; i < ys.size(); ++i) {
      if (ys[i] >= g.vertex_count())
        throw Error(ErrorKind::spec, std::string("interface vertex ") + std::to_string(ys[i]) +
                                         " is not in " + name);
      for (std::size_t j = 0; j < i; ++j)
        if (ys[j] == ys[i])
          throw Error(ErrorKind::spec, std::string("interface vertex ") + std::to_string(ys[i]) +
                                           " repeated in " + name);
    }
  };
  check_list(g1, iface.y_in_g1, "G1");
  check_list(g2, iface.y_in_g2, "G2");

  // Y must be induced identically in both graphs.
  const std::size_t m = iface.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const bool in1 = g1.has_edge(iface.y_in_g1[i], iface.y_in_g1[j]);
      const bool in2 = g2.has_edge(iface.y_in_g2[i], iface.y_in_g2[j]);
      if (in1 != in2)
        throw Error(ErrorKind::spec,
                    "interface is not a common full subgraph: pair (" +
                        std::to_string(iface.y_in_g1[i]) + "," + std::to_string(iface.y_in_g2[i]) +
                        ") and (" + std::to_string(iface.y_in_g1[j]) + "," +
                        std::to_string(iface.y_in_g2[j]) + ") are " +
                        (in1 ? "adjacent in G1 but not in G2" : "adjacent in G2 but not in G1"));
    }
}

/// Identifies Y in both graphs. Combined layout: G1\Y (ascending), then Y in
/// interface order, then G2\Y (ascending).
inline GlueResult interface_glue(const Graph& g1, const Graph& g2, const InterfaceSpec& iface) {
  validate(g1, g2, iface);
  const std::size_t n1 = g1.vertex_count();
  const std::size_t n2 = g2.vertex_count();
  const std::size_t m = iface.size();
  constexpr Vertex unset = static_cast<Vertex>(-1);

  GlueResult r;
  r.kind = GlueKind::interface;
  r.n1 = n1;
  r.n2 = n2;
  r.interface_size = m;
  r.map_g1.assign(n1, unset);
  r.map_g2.assign(n2, unset);

  const std::size_t own1 = n1 - m;
  for (std::size_t i = 0; i < m; ++i) {
    r.map_g1[iface.y_in_g1[i]] = own1 + i;
    r.map_g2[iface.y_in_g2[i]] = own1 + i;
  }
  Vertex next = 0;
  for (Vertex v = 0; v < n1; ++v)
    if (r.map_g1[v] == unset) r.map_g1[v] = next++;
  next = own1 + m;
  for (Vertex v = 0; v < n2; ++v)
    if (r.map_g2[v] == unset) r.map_g2[v] = next++;

  std::vector<Edge> edges;
  edges.reserve(g1.edge_count() + g2.edge_count());
  for (const Edge& e : g1.edges()) edges.push_back(make_edge(r.map_g1[e.u], r.map_g1[e.v]));
  for (const Edge& e : g2.edges()) {
    const Edge c = make_edge(r.map_g2[e.u], r.map_g2[e.v]);
    // Y-internal edges are already present from G1.
    if (c.u >= own1 && c.v < own1 + m) continue;
    edges.push_back(c);
  }
  r.graph = Graph::from_edges(n1 + n2 - m, edges);
  return r;
}

/// Drops the `count` most recently added bridge edges; subgraph edges are kept.
inline GlueResult remove_bridge_edges(const GlueResult& result, std::size_t count) {
  if (count > result.bridge_edges.size())
    throw Error(ErrorKind::precondition, "cannot remove " + std::to_string(count) +
                                             " bridge edges; only " +
                                             std::to_string(result.bridge_edges.size()) +
                                             " present");
  GlueResult out = result;
  const std::vector<Edge> removed(result.bridge_edges.end() - static_cast<std::ptrdiff_t>(count),
                                  result.bridge_edges.end());
  out.bridge_edges.resize(result.bridge_edges.size() - count);
  std::vector<Edge> kept;
  kept.reserve(result.graph.edge_count());
  for (const Edge& e : result.graph.edges())
    if (std::find(removed.begin(), removed.end(), e) == removed.end()) kept.push_back(e);
  out.graph = Graph::from_edges(result.graph.vertex_count(), kept);
  return out;
}

}  // namespace glueconn
