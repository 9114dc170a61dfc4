// glueconn: command-line front end for graph gluing, spectral analysis,
// Fiedler-value bounds and consensus simulation.
//
//   glueconn analyze  <graph-file>
//   glueconn glue     <scenario-file>
//   glueconn bounds   <scenario-file>
//   glueconn simulate <scenario-file> [--compare]

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "glueconn/glueconn.hpp"

namespace fs = std::filesystem;
using namespace glueconn;

namespace {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kParse = 2,
  kDomain = 3,
  kSpec = 4,
  kPrecondition = 5,
  kStability = 6,
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return kParse;
    case ErrorKind::domain: return kDomain;
    case ErrorKind::spec: return kSpec;
    case ErrorKind::precondition: return kPrecondition;
    case ErrorKind::stability: return kStability;
    case ErrorKind::numerical: return kInternal;
  }
  return kInternal;
}

enum class Format { text, kv };

struct CommonFlags {
  bool one_indexed = false;
  Format format = Format::text;
};

void emit(const io::KeyValueReport& report, Format format, std::ostream& out = std::cout) {
  if (format == Format::kv) {
    report.write(out);
    return;
  }
  std::size_t width = 0;
  for (const auto& [k, v] : report.entries()) width = std::max(width, k.size());
  for (const auto& [k, v] : report.entries())
    out << std::left << std::setw(static_cast<int>(width) + 2) << (k + ":") << v << '\n';
}

std::string label_list(const std::vector<Vertex>& vs, bool one_indexed) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(vs[i] + (one_indexed ? 1 : 0));
  }
  return s;
}

void add_bound(io::KeyValueReport& r, const std::string& prefix, const BoundReport& b) {
  r.add(prefix + ".kind", to_string(b.bound_kind));
  r.add(prefix + ".bound", b.bound_value);
  r.add(prefix + ".lambda2", b.fiedler_value);
  r.add(prefix + ".slack", b.slack);
  r.add(prefix + ".satisfied", b.satisfied);
  if (!b.note.empty()) r.add(prefix + ".note", b.note);
}

struct LoadedScenario {
  io::ScenarioFile file;
  Graph g1;
  std::optional<Graph> g2;
};

LoadedScenario load(const std::string& path, const CommonFlags& flags) {
  const io::ReadOptions opts{flags.one_indexed};
  LoadedScenario s;
  s.file = io::load_scenario(path, opts);
  s.g1 = io::load_graph(s.file.graph1, opts);
  if (s.file.graph2) s.g2 = io::load_graph(*s.file.graph2, opts);
  return s;
}

InterfaceSpec interface_of(const io::ScenarioFile& f) {
  InterfaceSpec iface;
  for (const auto& [a, b] : f.pairs) {
    iface.y_in_g1.push_back(a);
    iface.y_in_g2.push_back(b);
  }
  return iface;
}

GlueResult glue(const LoadedScenario& s, bool allow_shared_anchors) {
  switch (s.file.op) {
    case io::GlueOp::bridge:
      return bridge_glue(s.g1, *s.g2, BridgeSpec{s.file.pairs}, {allow_shared_anchors});
    case io::GlueOp::interface:
      return interface_glue(s.g1, *s.g2, interface_of(s.file));
    case io::GlueOp::none: break;
  }
  throw Error(ErrorKind::parse, "scenario has no 'op' line; nothing to glue");
}

fs::path output_dir(const std::optional<std::string>& flag, const io::ScenarioFile& f) {
  if (flag) return *flag;
  if (f.out_dir) return *f.out_dir;
  return fs::current_path();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::precondition, path.string() + ": cannot write");
  out << content;
}

// ---- analyze -----------------------------------------------------------------

// Round-off (e.g. the zero eigenvalue) would otherwise print as 1e-16 noise.
std::vector<double> snapped(std::vector<double> v, double scale) {
  for (double& x : v)
    if (std::abs(x) < 1e-12 * std::max(1.0, scale)) x = 0.0;
  return v;
}

int cmd_analyze(const std::string& graph_path, const CommonFlags& flags) {
  const Graph g = io::load_graph(graph_path, {flags.one_indexed});
  const SpectralReport spec = fiedler(g);
  io::KeyValueReport r;
  r.add("vertices", g.vertex_count());
  r.add("edges", g.edge_count());
  r.add("connected", spec.connected());
  r.add("components", spec.zero_multiplicity);
  r.add("spectrum", std::span<const double>(snapped(spec.eigenvalues, spec.largest())));
  r.add("lambda2", spec.fiedler_value);
  r.add("fiedler_vector", std::span<const double>(snapped(spec.fiedler_vector, 1.0)));
  emit(r, flags.format);
  return kOk;
}

// ---- glue --------------------------------------------------------------------

int cmd_glue(const std::string& scenario_path, const CommonFlags& flags,
             const std::optional<std::string>& out_path, bool allow_shared_anchors) {
  const LoadedScenario s = load(scenario_path, flags);
  const GlueResult r = glue(s, allow_shared_anchors);
  const fs::path target = out_path ? fs::path(*out_path)
                                   : output_dir(std::nullopt, s.file) / "combined.graph";
  write_file(target, io::graph_to_string(r.graph, flags.one_indexed));

  io::KeyValueReport rep;
  rep.add("op", r.kind == GlueKind::bridge ? "bridge" : "interface");
  rep.add("vertices", r.graph.vertex_count());
  rep.add("edges", r.graph.edge_count());
  rep.add("g1.vertices", s.g1.vertex_count());
  rep.add("g1.edges", s.g1.edge_count());
  rep.add("g2.vertices", s.g2->vertex_count());
  rep.add("g2.edges", s.g2->edge_count());
  if (r.kind == GlueKind::bridge) rep.add("bridge_edges", r.bridge_edges.size());
  else rep.add("interface_vertices", r.interface_size);
  rep.add("map_g1", label_list(r.map_g1, flags.one_indexed));
  rep.add("map_g2", label_list(r.map_g2, flags.one_indexed));
  rep.add("output", target.string());
  emit(rep, flags.format);
  return kOk;
}

// ---- bounds ------------------------------------------------------------------

void dump_violation(const fs::path& dir, const LoadedScenario& s, const GlueResult& glued) {
  fs::create_directories(dir);
  write_file(dir / "g1.graph", io::graph_to_string(s.g1));
  write_file(dir / "g2.graph", io::graph_to_string(*s.g2));
  write_file(dir / "combined.graph", io::graph_to_string(glued.graph));
  std::ostringstream spectra;
  for (const Graph* g : {&s.g1, &*s.g2, &glued.graph}) {
    for (double v : eigenvalues(laplacian(*g))) spectra << io::format_number(v, 17) << ' ';
    spectra << '\n';
  }
  write_file(dir / "spectra.txt", spectra.str());
}

int cmd_bounds(const std::string& scenario_path, const CommonFlags& flags,
               bool allow_shared_anchors, const std::optional<std::string>& dump_dir) {
  const LoadedScenario s = load(scenario_path, flags);
  if (s.file.op == io::GlueOp::none)
    throw Error(ErrorKind::parse, "scenario has no 'op' line; no gluing bound applies");

  io::KeyValueReport rep;
  std::vector<BoundReport> reports;
  GlueResult glued;
  if (s.file.op == io::GlueOp::bridge) {
    const BridgeSpec bridge{s.file.pairs};
    glued = bridge_glue(s.g1, *s.g2, bridge, {allow_shared_anchors});
    reports.push_back(verify_bridge_bound(s.g1, *s.g2, bridge, {allow_shared_anchors}));
    const Graph& g = glued.graph;
    reports.push_back(cut_bound(g, VertexSet::range(g, 0, s.g1.vertex_count()),
                                VertexSet::range(g, s.g1.vertex_count(), g.vertex_count())));
    rep.add("op", "bridge");
    rep.add("k", bridge.k());
  } else {
    const auto detail = verify_interface_bound_detail(s.g1, *s.g2, interface_of(s.file));
    glued = detail.glued;
    reports.push_back(detail.report);
    rep.add("op", "interface");
    rep.add("interface_vertices", glued.interface_size);
    rep.add("lambda1_A1", detail.grounded1.value);
    rep.add("lambda1_A2", detail.grounded2.value);
  }
  rep.add("n1", s.g1.vertex_count());
  rep.add("n2", s.g2->vertex_count());

  bool all_ok = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    add_bound(rep, "bound" + std::to_string(i + 1), reports[i]);
    all_ok = all_ok && reports[i].satisfied;
  }
  emit(rep, flags.format);
  if (flags.format == Format::text)
    for (const auto& b : reports)
      std::cout << to_string(b.bound_kind) << " bound: lambda2 = "
                << io::format_fixed(b.fiedler_value) << " <= " << io::format_fixed(b.bound_value)
                << (b.satisfied ? "  [ok]" : "  [VIOLATED]") << '\n';
  if (!all_ok) {
    const fs::path dir = dump_dir ? fs::path(*dump_dir)
                                  : output_dir(std::nullopt, s.file) / "bound_violation";
    dump_violation(dir, s, glued);
    std::cerr << "error: a bound was violated beyond tolerance " << kBoundTolerance
              << "; diagnostics written to " << dir << '\n';
    return kInternal;
  }
  return kOk;
}

// ---- simulate ----------------------------------------------------------------

std::vector<double> gather(const std::vector<double>& x, const std::vector<Vertex>& map) {
  std::vector<double> out(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) out[i] = x.at(map[i]);
  return out;
}

std::string summary_table(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(12) << "scenario" << std::right << std::setw(10) << "lambda2"
      << std::setw(10) << "bound" << std::setw(10) << "tau_pred" << std::setw(10) << "tau_meas"
      << std::setw(10) << "rel_err" << std::setw(12) << "consensus" << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(12) << r.label << std::right << std::setw(10) << io::format_fixed(r.lambda2) << std::setw(10)
        << (r.bound ? io::format_fixed(*r.bound) : std::string("-"));
    if (r.ok) {
      out << std::setw(10) << io::format_fixed(r.tau_predicted) << std::setw(10)
          << io::format_fixed(r.tau_measured) << std::setw(10) << io::format_fixed(r.relative_error)
          << std::setw(12) << io::format_fixed(r.consensus_value) << '\n';
    } else {
      out << "  error: " << r.error << '\n';
    }
  }
  return out.str();
}

std::string summary_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << "scenario,lambda2,bound,tau_predicted,tau_measured,relative_error,consensus_value\n";
  for (const auto& r : rows) {
    out << r.label << ',' << io::format_number(r.lambda2) << ','
        << (r.bound ? io::format_number(*r.bound) : std::string()) << ',';
    if (r.ok)
      out << io::format_number(r.tau_predicted) << ',' << io::format_number(r.tau_measured) << ','
          << io::format_number(r.relative_error) << ',' << io::format_number(r.consensus_value);
    else
      out << ",,,";
    out << '\n';
  }
  return out.str();
}

int cmd_simulate(const std::string& scenario_path, const CommonFlags& flags,
                 const std::optional<std::string>& out_flag, bool compare,
                 bool allow_shared_anchors) {
  const LoadedScenario s = load(scenario_path, flags);
  if (!s.file.x0) throw Error(ErrorKind::parse, scenario_path + ": scenario has no 'x0' line");
  const std::vector<double>& x0 = *s.file.x0;
  const fs::path out_dir = output_dir(out_flag, s.file);

  std::optional<GlueResult> glued;
  std::optional<double> bound;
  if (s.file.op != io::GlueOp::none) {
    if (s.file.op == io::GlueOp::bridge) {
      glued = glue(s, allow_shared_anchors);
      bound = bridge_bound(glued->n1, glued->n2, glued->bridge_edges.size());
    } else {
      const auto detail = verify_interface_bound_detail(s.g1, *s.g2, interface_of(s.file));
      glued = detail.glued;
      bound = detail.report.bound_value;
    }
  }
  const Graph& target = glued ? glued->graph : s.g1;
  if (x0.size() != target.vertex_count())
    throw Error(ErrorKind::precondition, "x0 has " + std::to_string(x0.size()) +
                                             " entries; the simulated graph has " +
                                             std::to_string(target.vertex_count()) + " vertices");

  auto config_for = [&](const SpectralReport& spec) {
    SimConfig cfg = default_config(spec);
    if (s.file.dt) cfg.dt = *s.file.dt;
    if (s.file.horizon) cfg.horizon = *s.file.horizon;
    if (s.file.method) cfg.method = *s.file.method;
    return cfg;
  };

  if (!compare) {
    const SpectralReport spec = fiedler(target);
    const SimConfig cfg = config_for(spec);
    const Trajectory tr = simulate(target, x0, cfg, spec.largest());
    std::ostringstream csv;
    io::write_trajectory_csv(csv, tr);
    const fs::path csv_path = out_dir / "trajectory.csv";
    write_file(csv_path, csv.str());

    io::KeyValueReport rep;
    rep.add("agents", target.vertex_count());
    rep.add("method", to_string(cfg.method));
    rep.add("dt", cfg.dt);
    rep.add("horizon", cfg.horizon);
    rep.add("consensus_value", tr.consensus_value);
    rep.add("final_disagreement", tr.disagreement.back());
    rep.add("lambda2", spec.fiedler_value);
    if (bound) rep.add("bound", *bound);
    rep.add("trajectory", csv_path.string());
    int code = kOk;
    try {
      const auto est = estimate_time_constant(tr, spec.fiedler_value);
      rep.add("tau_predicted", est.tau_predicted);
      rep.add("tau_measured", est.tau_measured);
      rep.add("relative_error", est.relative_error);
      rep.add("fit_start", est.fit_start);
      rep.add("fit_end", est.fit_end);
    } catch (const Error& e) {
      rep.add("tau_error", e.what());
      code = exit_code_for(e.kind());
    }
    emit(rep, flags.format);
    return code;
  }

  // Comparison: each input graph on its share of x0, then the glued graph.
  std::vector<Scenario> scenarios;
  if (glued) {
    scenarios.push_back({"G1", s.g1, gather(x0, glued->map_g1), {}, {}});
    scenarios.push_back({"G2", *s.g2, gather(x0, glued->map_g2), {}, {}});
    scenarios.push_back({"combined", glued->graph, x0, {}, bound});
  } else {
    scenarios.push_back({"G1", s.g1, x0, {}, {}});
  }
  // Shared step and horizon so the series line up on one time axis.
  SimConfig shared;
  shared.dt = std::numeric_limits<double>::infinity();
  shared.horizon = 0.0;
  for (const auto& sc : scenarios) {
    const auto spec = fiedler(sc.graph);
    const SimConfig c = config_for(spec);
    shared.dt = std::min(shared.dt, c.dt);
    shared.horizon = std::max(shared.horizon, c.horizon);
    shared.method = c.method;
  }
  for (auto& sc : scenarios) sc.config = shared;

  const auto rows = compare_scenarios(scenarios);
  fs::create_directories(out_dir);
  for (const auto& r : rows) {
    if (r.trajectory.samples() == 0) continue;
    std::ostringstream csv;
    io::write_trajectory_csv(csv, r.trajectory);
    write_file(out_dir / ("trajectory_" + r.label + ".csv"), csv.str());
  }
  write_file(out_dir / "compare_summary.csv", summary_csv(rows));

  if (flags.format == Format::kv) {
    io::KeyValueReport rep;
    rep.add("method", to_string(shared.method));
    rep.add("dt", shared.dt);
    rep.add("horizon", shared.horizon);
    for (const auto& r : rows) {
      rep.add(r.label + ".ok", r.ok);
      rep.add(r.label + ".lambda2", r.lambda2);
      if (r.bound) rep.add(r.label + ".bound", *r.bound);
      if (r.ok) {
        rep.add(r.label + ".tau_predicted", r.tau_predicted);
        rep.add(r.label + ".tau_measured", r.tau_measured);
        rep.add(r.label + ".relative_error", r.relative_error);
        rep.add(r.label + ".consensus_value", r.consensus_value);
      } else {
        rep.add(r.label + ".error", r.error);
      }
    }
    rep.write(std::cout);
  } else {
    std::cout << summary_table(rows);
  }
  const bool all_ok = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.ok; });
  return all_ok ? kOk : kPrecondition;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph gluing, algebraic connectivity bounds and consensus simulation"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string format = "text";
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--one-indexed", flags.one_indexed,
                  "Vertex labels in input files (and printed maps) start at 1");
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "kv"}))
        ->capture_default_str();
  };

  std::string path;
  std::optional<std::string> out;
  std::optional<std::string> dump_dir;
  bool compare = false;
  bool shared_anchors = false;

  auto* analyze = app.add_subcommand("analyze", "Spectrum and Fiedler pair of one graph");
  analyze->add_option("graph", path, "Graph file")->required();
  add_common(analyze);

  auto* glue_cmd = app.add_subcommand("glue", "Write the glued graph described by a scenario");
  glue_cmd->add_option("scenario", path, "Scenario file")->required();
  glue_cmd->add_option("-o,--out", out, "Output graph file (default <out>/combined.graph)");
  glue_cmd->add_flag("--allow-shared-anchors", shared_anchors,
                     "Let one vertex anchor several bridge edges");
  add_common(glue_cmd);

  auto* bounds = app.add_subcommand("bounds", "Check the gluing bounds on lambda_2");
  bounds->add_option("scenario", path, "Scenario file")->required();
  bounds->add_option("--dump-dir", dump_dir, "Where to write diagnostics if a bound fails");
  bounds->add_flag("--allow-shared-anchors", shared_anchors,
                   "Let one vertex anchor several bridge edges");
  add_common(bounds);

  auto* sim = app.add_subcommand("simulate", "Simulate consensus and fit the time constant");
  sim->add_option("scenario", path, "Scenario file")->required();
  sim->add_option("-o,--out-dir", out, "Directory for CSV output");
  sim->add_flag("--compare", compare, "Simulate G1, G2 and the glued graph side by side");
  sim->add_flag("--allow-shared-anchors", shared_anchors,
                "Let one vertex anchor several bridge edges");
  add_common(sim);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }
  flags.format = format == "kv" ? Format::kv : Format::text;

  try {
    if (*analyze) return cmd_analyze(path, flags);
    if (*glue_cmd) return cmd_glue(path, flags, out, shared_anchors);
    if (*bounds) return cmd_bounds(path, flags, shared_anchors, dump_dir);
    if (*sim) return cmd_simulate(path, flags, out, compare, shared_anchors);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
