#include <gtest/gtest.h>

#include <random>

#include "glueconn/gluing.hpp"
#include "glueconn/spectral.hpp"
#include "support/oracles.hpp"
#include "support/worked_examples.hpp"

using namespace glueconn;
using namespace glueconn::testing;

namespace {

Graph path_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph(n, e);
}

Graph cycle_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Graph(n, e);
}

Graph star_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex v = 1; v < n; ++v) e.emplace_back(0, v);
  return Graph(n, e);
}

Graph complete_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) e.emplace_back(a, b);
  return Graph(n, e);
}

std::vector<Graph> small_families(std::mt19937_64& rng) {
  std::vector<Graph> out;
  for (std::size_t n = 2; n <= 10; ++n) {
    out.push_back(path_graph(n));
    out.push_back(star_graph(n));
    out.push_back(complete_graph(n));
    if (n >= 3) out.push_back(cycle_graph(n));
    for (int r = 0; r < 6; ++r) out.push_back(random_graph(rng, n, 0.3));
  }
  return out;
}

void check_report_invariants(const Graph& g, const SpectralReport& r) {
  const std::size_t n = g.vertex_count();
  EXPECT_NEAR(r.eigenvalues[0], 0.0, 1e-9);
  EXPECT_NEAR(norm2(r.fiedler_vector), 1.0, 1e-12);
  double along = 0.0;
  for (double x : r.fiedler_vector) along += x;
  EXPECT_NEAR(along, 0.0, 1e-8);
  for (double x : r.fiedler_vector) {
    if (std::abs(x) > 1e-8) {
      EXPECT_GT(x, 0.0);
      break;
    }
  }
  EXPECT_EQ(r.connected(), is_connected(g));
  EXPECT_EQ(r.zero_multiplicity, component_count(g));
  double sum = 0.0;
  for (double lam : r.eigenvalues) sum += lam;
  EXPECT_NEAR(sum, 2.0 * static_cast<double>(g.edge_count()), 1e-8);
  // The Fiedler vector is an eigenvector for lambda_2.
  const auto lv = multiply(laplacian(g), r.fiedler_vector);
  for (std::size_t i = 0; i < n; ++i)
    EXPECT_NEAR(lv[i], r.fiedler_value * r.fiedler_vector[i], 1e-8 * std::max(1.0, r.largest()));
}

}  // namespace

TEST(Fiedler, PathOnThreeVertices) {
  const auto r = fiedler(example1_g1());
  EXPECT_NEAR(r.fiedler_value, 1.0, 1e-12);
  EXPECT_NEAR(r.eigenvalues[2], 3.0, 1e-12);
  // (1, 0, -1)/sqrt(2) with the first entry positive.
  EXPECT_NEAR(r.fiedler_vector[0], std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(r.fiedler_vector[1], 0.0, 1e-12);
}

TEST(Fiedler, ExampleTwoOneAndThreeBridges) {
  const auto one = bridge_glue(example2_g1(), example2_g2(), example2_one_bridge());
  const auto three = bridge_glue(example2_g1(), example2_g2(), example2_three_bridges());
  EXPECT_NEAR(fiedler(one.graph).fiedler_value, 0.2208, 1e-4);
  EXPECT_NEAR(fiedler(three.graph).fiedler_value, 0.6614, 1e-4);
}

TEST(Fiedler, RejectsFewerThanTwoVertices) {
  try {
    fiedler(Graph(1, {}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain);
  }
}

TEST(Fiedler, DisconnectedGraphVectorIsOrthogonalToOnes) {
  const Graph g(5, {{0, 1}, {2, 3}});
  const auto r = fiedler(g);
  EXPECT_EQ(r.zero_multiplicity, 3u);
  check_report_invariants(g, r);
}

TEST(Fiedler, InvariantsOnSmallFamilies) {
  std::mt19937_64 rng(77);
  for (const Graph& g : small_families(rng)) check_report_invariants(g, fiedler(g));
}

TEST(Fiedler, CompleteGraphLambda2IsOrder) {
  for (std::size_t n = 2; n <= 8; ++n)
    EXPECT_NEAR(fiedler(complete_graph(n)).fiedler_value, static_cast<double>(n), 1e-10);
}

TEST(Fiedler, EdgeAdditionNeverDecreasesLambda2) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const Graph g = random_graph(rng, n, 0.3);
    const double before = fiedler(g).fiedler_value;
    for (Vertex a = 0; a < n; ++a)
      for (Vertex b = a + 1; b < n; ++b) {
        if (g.has_edge(a, b)) continue;
        auto edges = g.edges();
        edges.push_back({a, b});
        EXPECT_GE(fiedler(Graph::from_edges(n, edges)).fiedler_value, before - 1e-9);
      }
  }
}

TEST(BlockDecompose, TwoVertexPath) {
  const auto d = block_decompose(Graph(2, {{0, 1}}), std::vector<Vertex>{1});
  EXPECT_EQ(d.a_block, SymMatrix{{1}});
  EXPECT_EQ(d.b_block(0, 0), -1.0);
  EXPECT_EQ(d.d_block, SymMatrix{{1}});
  EXPECT_DOUBLE_EQ(grounded_smallest_eig(d), 1.0);
}

TEST(BlockDecompose, PathGroundedAtMiddle) {
  const auto d = block_decompose(example1_g1(), std::vector<Vertex>{1});
  EXPECT_EQ(d.a_block, (SymMatrix{{1, 0}, {0, 1}}));
  EXPECT_EQ(d.d_block, SymMatrix{{2}});
  EXPECT_DOUBLE_EQ(grounded_smallest_eig(d), 1.0);
}

TEST(BlockDecompose, TriangleGroundedAtOneVertex) {
  const auto d = block_decompose(Graph(3, {{0, 1}, {1, 2}, {0, 2}}), std::vector<Vertex>{2});
  EXPECT_EQ(d.a_block, (SymMatrix{{2, -1}, {-1, 2}}));
  EXPECT_EQ(d.d_block, SymMatrix{{2}});
}

TEST(BlockDecompose, RejectsEmptyAndFullInterface) {
  const Graph p3 = example1_g1();
  EXPECT_THROW(block_decompose(p3, std::vector<Vertex>{}), Error);
  EXPECT_THROW(block_decompose(p3, std::vector<Vertex>{0, 1, 2}), Error);
}

TEST(BlockDecompose, ReassemblesPermutedLaplacian) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const Graph g = random_connected_graph(rng, n);
    std::uniform_int_distribution<std::size_t> md(1, n - 1);
    const auto y = random_subset(rng, n, md(rng));
    const auto d = block_decompose(g, y);
    const auto order = d.ordering();
    const SymMatrix l = laplacian(g);
    const SymMatrix back = d.reassemble();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(back(i, j), l(order[i], order[j]));
    const auto ge = grounded_smallest_eigenpair(d);
    EXPECT_TRUE(ge.positive_definite);
    EXPECT_GT(ge.value, 1e-10);
  }
}

TEST(GroundedSmallestEig, DisconnectedComponentUntouchedByInterface) {
  const Graph g(4, {{0, 1}, {2, 3}});
  const auto ge = grounded_smallest_eigenpair(block_decompose(g, std::vector<Vertex>{0}));
  EXPECT_NEAR(ge.value, 0.0, 1e-12);
  EXPECT_FALSE(ge.positive_definite);
}

// For v = [u1; 0_Y; u2] in the glued layout, v'Lv splits into the two
// grounded quadratic forms.
TEST(GroundedSmallestEig, PaddedEigenvectorsSplitTheQuadraticForm) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> size(2, 8);
    const std::size_t n1 = size(rng), n2 = size(rng);
    std::uniform_int_distribution<std::size_t> md(1, std::min(n1, n2) - 1);
    const std::size_t m = md(rng);
    const auto inst = random_interface_instance(rng, n1, n2, m);
    const auto glued = interface_glue(inst.g1, inst.g2, InterfaceSpec{inst.y1, inst.y2});
    const auto d1 = block_decompose(inst.g1, inst.y1);
    const auto d2 = block_decompose(inst.g2, inst.y2);
    const auto e1 = grounded_smallest_eigenpair(d1);
    const auto e2 = grounded_smallest_eigenpair(d2);

    const double c1 = coef(rng), c2 = coef(rng);
    std::vector<double> v(glued.graph.vertex_count(), 0.0);
    std::vector<double> u1(e1.vector), u2(e2.vector);
    for (double& x : u1) x *= c1;
    for (double& x : u2) x *= c2;
    for (std::size_t i = 0; i < d1.interior.size(); ++i) v[glued.map_g1[d1.interior[i]]] = u1[i];
    for (std::size_t i = 0; i < d2.interior.size(); ++i) v[glued.map_g2[d2.interior[i]]] = u2[i];

    const double lhs = dot(v, multiply(laplacian(glued.graph), v));
    const double rhs = dot(u1, multiply(d1.a_block, u1)) + dot(u2, multiply(d2.a_block, u2));
    EXPECT_NEAR(lhs, rhs, 1e-8);
    EXPECT_NEAR(rhs, c1 * c1 * e1.value + c2 * c2 * e2.value, 1e-8);
  }
}
