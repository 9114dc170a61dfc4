#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "glueconn/error.hpp"
#include "glueconn/gluing.hpp"
#include "glueconn/graph.hpp"
#include "glueconn/spectral.hpp"

namespace glueconn {

/// Absolute slack tolerance for declaring an upper bound satisfied.
inline constexpr double kBoundTolerance = 1e-9;

enum class BoundKind { cut, bridge, interface };

inline const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::cut: return "cut";
    case BoundKind::bridge: return "bridge";
    case BoundKind::interface: return "interface";
  }
  return "unknown";
}

struct BoundReport {
  BoundKind bound_kind = BoundKind::cut;
  double bound_value = 0.0;
  double fiedler_value = 0.0;
  bool satisfied = false;
  double slack = 0.0;  // bound_value - fiedler_value
  std::string note;
};

inline BoundReport make_report(BoundKind kind, double bound, double lambda2, std::string note = {}) {
  BoundReport r;
  r.bound_kind = kind;
  r.bound_value = bound;
  r.fiedler_value = lambda2;
  r.slack = bound - lambda2;
  r.satisfied = r.slack >= -kBoundTolerance;
  r.note = std::move(note);
  return r;
}

/// lambda_2 <= cut(S1, S1^c)/|S1| + cut(S2, S2^c)/|S2| for disjoint nonempty S1, S2.
inline double cut_bound_value(const Graph& g, const VertexSet& s1, const VertexSet& s2) {
  if (s1.empty() || s2.empty())
    throw Error(ErrorKind::precondition, "cut bound needs two nonempty vertex sets");
  for (Vertex v : s1)
    if (s2.contains(v))
      throw Error(ErrorKind::precondition, "cut bound sets overlap at vertex " + std::to_string(v));
  return static_cast<double>(cut(g, s1, complement_set(g, s1))) / static_cast<double>(s1.size()) +
         static_cast<double>(cut(g, s2, complement_set(g, s2))) / static_cast<double>(s2.size());
}

inline BoundReport cut_bound(const Graph& g, const VertexSet& s1, const VertexSet& s2) {
  const double bound = cut_bound_value(g, s1, s2);
  return make_report(BoundKind::cut, bound, fiedler(g).fiedler_value);
}

/// k/n1 + k/n2.
inline double bridge_bound(std::size_t n1, std::size_t n2, std::size_t k) {
  if (n1 == 0 || n2 == 0)
    throw Error(ErrorKind::precondition, "bridge bound needs two nonempty graphs");
  const double kd = static_cast<double>(k);
  return kd / static_cast<double>(n1) + kd / static_cast<double>(n2);
}

inline BoundReport verify_bridge_bound(const Graph& g1, const Graph& g2, const BridgeSpec& bridge,
                                       const BridgeOptions& opts = {}) {
  const GlueResult glued = bridge_glue(g1, g2, bridge, opts);
  const double bound = bridge_bound(g1.vertex_count(), g2.vertex_count(), bridge.k());
  return make_report(BoundKind::bridge, bound, fiedler(glued.graph).fiedler_value);
}

/// Bound for a glued result that still records its inputs' orders (e.g.
/// after remove_bridge_edges).
inline BoundReport verify_bridge_bound(const GlueResult& glued) {
  if (glued.kind != GlueKind::bridge)
    throw Error(ErrorKind::precondition, "not a bridge-glued graph");
  const double bound = bridge_bound(glued.n1, glued.n2, glued.bridge_edges.size());
  return make_report(BoundKind::bridge, bound, fiedler(glued.graph).fiedler_value);
}

struct InterfaceBoundDetail {
  BoundReport report;
  BlockDecomposition block1;
  BlockDecomposition block2;
  GroundedEigen grounded1;
  GroundedEigen grounded2;
  GlueResult glued;
};

inline constexpr const char* kInterfaceBoundNote =
    "bound = max(lambda_1(A1), lambda_1(A2)), smallest eigenvalues of the grounded Laplacians";

/// Glues along Y and compares lambda_2 of the result with the larger of the
/// two grounded smallest eigenvalues. Both inputs must be connected.
inline InterfaceBoundDetail verify_interface_bound_detail(const Graph& g1, const Graph& g2,
                                                          const InterfaceSpec& iface) {
  validate(g1, g2, iface);
  if (g1.vertex_count() == 0 || !is_connected(g1))
    throw Error(ErrorKind::precondition,
                "G1 is disconnected; its grounded Laplacian need not be positive definite");
  if (g2.vertex_count() == 0 || !is_connected(g2))
    throw Error(ErrorKind::precondition,
                "G2 is disconnected; its grounded Laplacian need not be positive definite");

  InterfaceBoundDetail d;
  d.block1 = block_decompose(g1, iface.y_in_g1);
  d.block2 = block_decompose(g2, iface.y_in_g2);
  d.grounded1 = grounded_smallest_eigenpair(d.block1);
  d.grounded2 = grounded_smallest_eigenpair(d.block2);
  d.glued = interface_glue(g1, g2, iface);
  const double bound = std::max(d.grounded1.value, d.grounded2.value);
  d.report = make_report(BoundKind::interface, bound, fiedler(d.glued.graph).fiedler_value,
                         kInterfaceBoundNote);
  return d;
}

inline BoundReport verify_interface_bound(const Graph& g1, const Graph& g2,
                                          const InterfaceSpec& iface) {
  return verify_interface_bound_detail(g1, g2, iface).report;
}

}  // namespace glueconn
