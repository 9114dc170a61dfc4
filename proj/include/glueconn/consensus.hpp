#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstddef>
#include <future>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "glueconn/error.hpp"
#include "glueconn/graph.hpp"
#include "glueconn/matrix.hpp"
#include "glueconn/spectral.hpp"

namespace glueconn {

enum class Integrator { forward_euler, rk4 };

inline const char* to_string(Integrator m) {
  return m == Integrator::rk4 ? "rk4" : "euler";
}

/// Largest stable dt * lambda_max for each scheme on xdot = -Lx. Forward
/// Euler is stable below 2; the RK4 stability interval on the negative real
/// axis ends near 2.785.
inline constexpr double kEulerStabilityFactor = 1.99;
inline constexpr double kRk4StabilityFactor = 2.78;

struct SimConfig {
  double dt = 0.01;       // seconds
  double horizon = 10.0;  // seconds
  Integrator method = Integrator::rk4;
};

struct Trajectory {
  std::vector<double> times;
  Matrix states;  // (steps+1) x N
  double consensus_value = 0.0;
  std::vector<double> disagreement;  // ||x(t) - mean * 1||_2 per sample

  std::size_t agents() const noexcept { return states.cols(); }
  std::size_t samples() const noexcept { return times.size(); }
};

inline double disagreement_of(std::span<const double> x, double mean) {
  double s = 0.0;
  for (double v : x) s += (v - mean) * (v - mean);
  return std::sqrt(s);
}

/// Largest dt accepted for `method` on a graph whose top Laplacian eigenvalue is `lambda_max`.
inline double stability_limit(Integrator method, double lambda_max) {
  if (lambda_max <= 0.0) return std::numeric_limits<double>::infinity();
  return (method == Integrator::rk4 ? kRk4StabilityFactor : kEulerStabilityFactor) / lambda_max;
}

/// rk4 with dt = 0.1 / lambda_max, horizon long enough for ~25 time constants.
inline SimConfig default_config(const SpectralReport& spec) {
  SimConfig cfg;
  const double lmax = spec.largest();
  cfg.method = Integrator::rk4;
  cfg.dt = lmax > 0.0 ? 0.1 / lmax : 0.01;
  cfg.horizon = spec.connected() ? 25.0 / spec.fiedler_value : 100.0 * cfg.dt;
  return cfg;
}

namespace detail {

// y = -L x using adjacency lists.
inline void consensus_rhs(const Graph& g, std::span<const double> x, std::span<double> y) {
  for (Vertex i = 0; i < g.vertex_count(); ++i) {
    double s = 0.0;
    for (Vertex j : g.neighbors(i)) s += x[j] - x[i];
    y[i] = s;
  }
}

}  // namespace detail

/// Integrates xdot = -L x from x0 with a fixed step. The sample count is
/// ceil(horizon / dt) + 1; the last sample sits at steps * dt.
inline Trajectory simulate(const Graph& g, std::span<const double> x0, const SimConfig& cfg,
                           std::optional<double> lambda_max = std::nullopt) {
  const std::size_t n = g.vertex_count();
  if (x0.size() != n)
    throw Error(ErrorKind::precondition, "initial condition has " + std::to_string(x0.size()) +
                                             " entries but the graph has " + std::to_string(n) +
                                             " agents");
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
    throw Error(ErrorKind::precondition, "dt must be positive");
  if (!(cfg.horizon >= cfg.dt) || !std::isfinite(cfg.horizon))
    throw Error(ErrorKind::precondition, "horizon must be at least dt");

  const double lmax = lambda_max ? *lambda_max
                                 : (n == 0 ? 0.0 : eigenvalues(laplacian(g)).back());
  const double limit = stability_limit(cfg.method, lmax);
  if (cfg.dt > limit)
    throw Error(ErrorKind::stability, "dt = " + std::to_string(cfg.dt) + " exceeds the " +
                                          to_string(cfg.method) + " stability limit " +
                                          std::to_string(limit) + " (lambda_max = " +
                                          std::to_string(lmax) + "); suggested dt " +
                                          std::to_string(0.1 / lmax));

  const auto steps = static_cast<std::size_t>(std::ceil(cfg.horizon / cfg.dt - 1e-9));
  Trajectory tr;
  tr.times.resize(steps + 1);
  tr.states = Matrix(steps + 1, n);
  tr.disagreement.resize(steps + 1);

  double sum = 0.0;
  for (double v : x0) sum += v;
  tr.consensus_value = n == 0 ? 0.0 : sum / static_cast<double>(n);

  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  const double h = cfg.dt;

  auto record = [&](std::size_t s) {
    tr.times[s] = static_cast<double>(s) * h;
    auto row = tr.states.row(s);
    std::copy(x.begin(), x.end(), row.begin());
    tr.disagreement[s] = disagreement_of(x, tr.consensus_value);
  };
  record(0);

  for (std::size_t s = 1; s <= steps; ++s) {
    if (cfg.method == Integrator::forward_euler) {
      detail::consensus_rhs(g, x, k1);
      for (std::size_t i = 0; i < n; ++i) x[i] += h * k1[i];
    } else {
      detail::consensus_rhs(g, x, k1);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
      detail::consensus_rhs(g, tmp, k2);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
      detail::consensus_rhs(g, tmp, k3);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
      detail::consensus_rhs(g, tmp, k4);
      for (std::size_t i = 0; i < n; ++i)
        x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    record(s);
  }
  return tr;
}

struct FitWindow {
  /// Fit starts once disagreement falls below start_fraction * initial.
  double start_fraction = 0.1;
  /// Fit stops once disagreement falls below stop_fraction * initial.
  double stop_fraction = 1e-8;
  /// Required total decay, as a fraction of the initial disagreement.
  double required_decay = 1e-2;
};

struct TimeConstantEstimate {
  double tau_measured = 0.0;
  double tau_predicted = 0.0;
  double relative_error = 0.0;
  double fit_start = 0.0;
  double fit_end = 0.0;
  std::size_t fit_points = 0;
};

/// Least-squares slope of log(disagreement) against time over the tail window.
/// tau_measured = -1/slope, tau_predicted = 1/lambda_2.
inline TimeConstantEstimate estimate_time_constant(const Trajectory& tr, double lambda2,
                                                   const FitWindow& window = {}) {
  if (!(lambda2 > kZeroEigenvalueTolerance))
    throw Error(ErrorKind::precondition,
                "graph is disconnected; disagreement does not decay to zero");
  if (tr.samples() < 3) throw Error(ErrorKind::precondition, "trajectory too short to fit");
  const double d0 = tr.disagreement.front();
  if (d0 <= 0.0)
    throw Error(ErrorKind::precondition, "initial state is already at consensus; nothing to fit");

  double dmin = d0;
  for (double d : tr.disagreement) dmin = std::min(dmin, d);
  if (dmin > window.required_decay * d0)
    throw Error(ErrorKind::precondition,
                "disagreement decayed only to " + std::to_string(dmin / d0) +
                    " of its initial value; increase the horizon");

  const double hi = window.start_fraction * d0;
  const double lo = window.stop_fraction * d0;
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  std::size_t m = 0;
  TimeConstantEstimate est;
  for (std::size_t s = 0; s < tr.samples(); ++s) {
    const double d = tr.disagreement[s];
    if (d > hi) {
      if (m > 0) break;  // re-entering above the window ends the tail
      continue;
    }
    if (d < lo || d <= 0.0) break;
    const double t = tr.times[s];
    const double y = std::log(d);
    if (m == 0) est.fit_start = t;
    est.fit_end = t;
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
    ++m;
  }
  if (m < 3)
    throw Error(ErrorKind::precondition,
                "fit window holds fewer than 3 samples; reduce dt or increase the horizon");
  const double md = static_cast<double>(m);
  const double denom = md * stt - st * st;
  const double slope = (md * sty - st * sy) / denom;
  if (!(slope < 0.0))
    throw Error(ErrorKind::numerical, "disagreement is not decaying in the fit window");

  est.fit_points = m;
  est.tau_measured = -1.0 / slope;
  est.tau_predicted = 1.0 / lambda2;
  est.relative_error = std::abs(est.tau_measured - est.tau_predicted) / est.tau_predicted;
  return est;
}

inline TimeConstantEstimate estimate_time_constant(const Trajectory& tr, const Graph& g,
                                                   const FitWindow& window = {}) {
  if (g.vertex_count() < 2 || !is_connected(g))
    throw Error(ErrorKind::precondition,
                "graph is disconnected; disagreement does not decay to zero");
  return estimate_time_constant(tr, fiedler(g).fiedler_value, window);
}

struct Scenario {
  std::string label;
  Graph graph;
  std::vector<double> x0;
  std::optional<SimConfig> config;  // default_config() when absent
  std::optional<double> bound;      // analytical upper bound, when the gluing provenance is known
};

struct ComparisonRow {
  std::string label;
  bool ok = false;
  std::string error;
  double lambda2 = 0.0;
  std::optional<double> bound;
  double tau_predicted = 0.0;
  double tau_measured = 0.0;
  double relative_error = 0.0;
  double consensus_value = 0.0;
  Trajectory trajectory;
};

inline ComparisonRow run_scenario(const Scenario& sc) {
  ComparisonRow row;
  row.label = sc.label;
  row.bound = sc.bound;
  try {
    const SpectralReport spec = fiedler(sc.graph);
    row.lambda2 = spec.fiedler_value;
    const SimConfig cfg = sc.config.value_or(default_config(spec));
    row.trajectory = simulate(sc.graph, sc.x0, cfg, spec.largest());
    row.consensus_value = row.trajectory.consensus_value;
    const auto est = estimate_time_constant(row.trajectory, spec.fiedler_value);
    row.tau_predicted = est.tau_predicted;
    row.tau_measured = est.tau_measured;
    row.relative_error = est.relative_error;
    row.ok = true;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

/// Runs every scenario (concurrently) and returns rows in input order. A
/// failing scenario yields a row with ok == false and does not stop the rest.
inline std::vector<ComparisonRow> compare_scenarios(const std::vector<Scenario>& scenarios) {
  std::vector<std::future<ComparisonRow>> pending;
  pending.reserve(scenarios.size());
  for (const Scenario& sc : scenarios)
    pending.push_back(std::async(std::launch::async, [&sc] { return run_scenario(sc); }));
  std::vector<ComparisonRow> rows;
  rows.reserve(scenarios.size());
  for (auto& f : pending) rows.push_back(f.get());
  return rows;
}

}  // namespace glueconn
