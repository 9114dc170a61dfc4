#include <gtest/gtest.h>

#include <random>

#include "glueconn/bounds.hpp"
#include "glueconn/consensus.hpp"
#include "glueconn/gluing.hpp"
#include "support/oracles.hpp"
#include "support/worked_examples.hpp"

using namespace glueconn;
using namespace glueconn::testing;

namespace {

void expect_sum_conserved(const Trajectory& tr) {
  const auto first = tr.states.row(0);
  double s0 = 0.0, scale = 1.0;
  for (double v : first) {
    s0 += v;
    scale += std::abs(v);
  }
  for (std::size_t s = 0; s < tr.samples(); ++s) {
    double sum = 0.0;
    for (double v : tr.states.row(s)) sum += v;
    ASSERT_NEAR(sum, s0, 1e-9 * scale) << "step " << s;
  }
}

}  // namespace

TEST(Simulate, ConsensusStateStaysPut) {
  const Graph g = example2_g1();
  const std::vector<double> x0(6, 1.75);
  const auto tr = simulate(g, x0, {.dt = 0.05, .horizon = 5.0, .method = Integrator::rk4});
  for (std::size_t s = 0; s < tr.samples(); ++s)
    for (double v : tr.states.row(s)) EXPECT_EQ(v, 1.75);
  EXPECT_EQ(tr.disagreement.back(), 0.0);
}

TEST(Simulate, PathConvergesToMean) {
  const auto tr = simulate(example1_g1(), example1_x0_g1(),
                           {.dt = 0.03, .horizon = 30.0, .method = Integrator::rk4});
  EXPECT_DOUBLE_EQ(tr.consensus_value, 2.0);
  for (double v : tr.states.row(tr.samples() - 1)) EXPECT_NEAR(v, 2.0, 1e-9);
  expect_sum_conserved(tr);
  EXPECT_EQ(tr.times.front(), 0.0);
  EXPECT_NEAR(tr.times.back(), 30.0, 1e-9);
  EXPECT_EQ(tr.samples(), 1001u);
}

TEST(Simulate, ExampleOneGluedConvergesToMean) {
  const auto glued = bridge_glue(example1_g1(), example1_g2(), example1_one_bridge());
  const auto tr = simulate(glued.graph, example1_x0(),
                           {.dt = 0.02, .horizon = 80.0, .method = Integrator::rk4});
  EXPECT_NEAR(tr.consensus_value, 1.0 / 3.0, 1e-15);
  for (double v : tr.states.row(tr.samples() - 1)) EXPECT_NEAR(v, 1.0 / 3.0, 1e-6);
}

TEST(Simulate, InitialRowIsInput) {
  const auto x0 = example2_x0();
  const auto g = bridge_glue(example2_g1(), example2_g2(), example2_one_bridge()).graph;
  const auto tr = simulate(g, x0, {.dt = 0.05, .horizon = 1.0, .method = Integrator::forward_euler});
  for (std::size_t i = 0; i < x0.size(); ++i) EXPECT_EQ(tr.states(0, i), x0[i]);
}

TEST(Simulate, RejectsUnstableStepWithLimit) {
  const Graph g = example1_g1();  // lambda_max = 3
  try {
    simulate(g, example1_x0_g1(), {.dt = 0.7, .horizon = 5.0, .method = Integrator::forward_euler});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::stability);
    EXPECT_NE(std::string(e.what()).find("0.663333"), std::string::npos) << e.what();
  }
  EXPECT_NO_THROW(
      simulate(g, example1_x0_g1(), {.dt = 0.66, .horizon = 5.0, .method = Integrator::forward_euler}));
  EXPECT_THROW(simulate(g, example1_x0_g1(), {.dt = 0.95, .horizon = 5.0, .method = Integrator::rk4}),
               Error);
}

TEST(Simulate, RejectsLengthMismatchAndBadTimes) {
  const Graph g = example1_g1();
  EXPECT_THROW(simulate(g, std::vector<double>{1, 2}, {}), Error);
  EXPECT_THROW(simulate(g, example1_x0_g1(), {.dt = 0.0, .horizon = 1.0}), Error);
  EXPECT_THROW(simulate(g, example1_x0_g1(), {.dt = 0.1, .horizon = 0.05}), Error);
}

TEST(Simulate, DisagreementNonIncreasingAndSumConserved) {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const Graph g = random_connected_graph(rng, n);
    std::vector<double> x0(n);
    for (double& v : x0) v = u(rng);
    const double lmax = eigenvalues(laplacian(g)).back();
    for (Integrator m : {Integrator::forward_euler, Integrator::rk4}) {
      const double dt = (m == Integrator::rk4 ? 2.7 : 1.95) / lmax;
      const auto tr = simulate(g, x0, {.dt = dt, .horizon = 200 * dt, .method = m});
      expect_sum_conserved(tr);
      for (std::size_t s = 1; s < tr.samples(); ++s)
        ASSERT_LE(tr.disagreement[s], tr.disagreement[s - 1] + 1e-9);
    }
  }
}

TEST(Simulate, Rk4MatchesClosedForm) {
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const Graph g = random_connected_graph(rng, n);
    std::vector<double> x0(n);
    for (double& v : x0) v = u(rng);
    const SymMatrix l = laplacian(g);
    const double lmax = eigenvalues(l).back();
    const auto tr = simulate(g, x0, {.dt = 0.05 / lmax, .horizon = 10.0, .method = Integrator::rk4});
    for (std::size_t s = 0; s < tr.samples(); s += 7) {
      const auto exact = consensus_closed_form(l, x0, tr.times[s]);
      for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(tr.states(s, i), exact[i], 1e-6);
    }
  }
}

TEST(Simulate, ConvergesWithinTenTimeConstants) {
  std::mt19937_64 rng(72);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const Graph g = random_connected_graph(rng, n);
    std::vector<double> x0(n);
    for (double& v : x0) v = u(rng);
    const auto spec = fiedler(g);
    const auto tr = simulate(g, x0, {.dt = 0.1 / spec.largest(), .horizon = 10.0 / spec.fiedler_value,
                                     .method = Integrator::rk4});
    EXPECT_LE(tr.disagreement.back(), 1e-3 * tr.disagreement.front());
  }
}

TEST(TimeConstant, CompleteGraphOnTwoVertices) {
  const Graph k2(2, {{0, 1}});
  const std::vector<double> x0{1.0, -1.0};
  const auto tr = simulate(k2, x0, {.dt = 0.005, .horizon = 12.0, .method = Integrator::rk4});
  const auto est = estimate_time_constant(tr, k2);
  EXPECT_NEAR(est.tau_predicted, 0.5, 1e-12);
  EXPECT_NEAR(est.tau_measured, 0.5, 0.005);
  EXPECT_LT(est.relative_error, 0.01);
}

TEST(TimeConstant, ExampleTwoBridges) {
  const auto one = bridge_glue(example2_g1(), example2_g2(), example2_one_bridge()).graph;
  const auto three = bridge_glue(example2_g1(), example2_g2(), example2_three_bridges()).graph;
  const auto s1 = fiedler(one), s3 = fiedler(three);
  const auto e1 = estimate_time_constant(simulate(one, example2_x0(), default_config(s1)), one);
  const auto e3 = estimate_time_constant(simulate(three, example2_x0(), default_config(s3)), three);
  EXPECT_NEAR(e1.tau_predicted, 4.53, 0.01);
  EXPECT_NEAR(e3.tau_predicted, 1.512, 0.01);
  EXPECT_LT(e1.relative_error, 0.15);
  EXPECT_LT(e3.relative_error, 0.15);
  EXPECT_LT(e3.tau_measured, e1.tau_measured);
}

TEST(TimeConstant, RateMatchesLambda2OnRandomGraphs) {
  std::mt19937_64 rng(64);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + trial % 8;
    const Graph g = random_connected_graph(rng, n);
    std::vector<double> x0(n);
    for (double& v : x0) v = u(rng);
    const auto spec = fiedler(g);
    const auto est = estimate_time_constant(simulate(g, x0, default_config(spec)), spec.fiedler_value);
    EXPECT_LT(est.relative_error, 0.15) << "trial " << trial;
  }
}

TEST(TimeConstant, Errors) {
  const Graph split(4, {{0, 1}, {2, 3}});
  const std::vector<double> x0{1, 2, 3, 4};
  const auto tr = simulate(split, x0, {.dt = 0.05, .horizon = 20.0});
  EXPECT_THROW(estimate_time_constant(tr, split), Error);

  const Graph p3 = example1_g1();
  const auto short_run = simulate(p3, example1_x0_g1(), {.dt = 0.05, .horizon = 0.5});
  try {
    estimate_time_constant(short_run, p3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("increase the horizon"), std::string::npos);
  }

  const auto flat = simulate(p3, std::vector<double>{1, 1, 1}, {.dt = 0.05, .horizon = 5.0});
  EXPECT_THROW(estimate_time_constant(flat, p3), Error);
}

TEST(CompareScenarios, ExampleOneRows) {
  const Graph g1 = example1_g1(), g2 = example1_g2();
  const auto k1 = bridge_glue(g1, g2, example1_one_bridge());
  const auto k2 = bridge_glue(g1, g2, example1_two_bridges());
  const std::vector<Scenario> sc{
      {"G1", g1, example1_x0_g1(), {}, {}},
      {"G2", g2, example1_x0_g2(), {}, {}},
      {"k=1", k1.graph, example1_x0(), {}, 2.0 / 3.0},
      {"k=2", k2.graph, example1_x0(), {}, 4.0 / 3.0},
  };
  const auto rows = compare_scenarios(sc);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].label, "G1");
  EXPECT_EQ(rows[3].label, "k=2");
  EXPECT_NEAR(rows[0].lambda2, 1.0, 1e-12);
  EXPECT_NEAR(rows[1].lambda2, 1.0, 1e-12);
  EXPECT_NEAR(rows[2].lambda2, example1_one_bridge_lambda2_closed_form(), 1e-10);
  EXPECT_LE(rows[3].lambda2, 4.0 / 3.0);
  EXPECT_NEAR(rows[0].consensus_value, 2.0, 1e-15);
  EXPECT_NEAR(rows[1].consensus_value, -4.0 / 3.0, 1e-15);
  for (const auto& r : rows) EXPECT_TRUE(r.ok) << r.error;
  EXPECT_LT(rows[3].tau_measured, rows[2].tau_measured);
}

TEST(CompareScenarios, SingleRowAndErrorIsolation) {
  const std::vector<Scenario> one{{"p3", example1_g1(), example1_x0_g1(), {}, {}}};
  EXPECT_EQ(compare_scenarios(one).size(), 1u);

  const std::vector<Scenario> mixed{
      {"bad", Graph(4, {{0, 1}, {2, 3}}), {1, 2, 3, 4}, {}, {}},
      {"good", example1_g1(), example1_x0_g1(), {}, {}},
  };
  const auto rows = compare_scenarios(mixed);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_FALSE(rows[0].ok);
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_TRUE(rows[1].ok);
}

TEST(CompareScenarios, ExampleTwoRows) {
  const auto k1 = bridge_glue(example2_g1(), example2_g2(), example2_one_bridge());
  const auto k3 = bridge_glue(example2_g1(), example2_g2(), example2_three_bridges());
  const auto rows = compare_scenarios({{"k=1", k1.graph, example2_x0(), {}, bridge_bound(6, 4, 1)},
                                       {"k=3", k3.graph, example2_x0(), {}, bridge_bound(6, 4, 3)}});
  EXPECT_NEAR(rows[0].lambda2, 0.2208, 1e-4);
  EXPECT_NEAR(rows[1].lambda2, 0.6614, 1e-4);
  EXPECT_NEAR(rows[0].tau_predicted, 4.53, 0.01);
  EXPECT_NEAR(rows[1].tau_predicted, 1.51, 0.01);
}
