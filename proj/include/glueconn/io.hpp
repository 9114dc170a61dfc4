#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glueconn/consensus.hpp"
#include "glueconn/error.hpp"
#include "glueconn/graph.hpp"

namespace glueconn::io {

/// Shortest round-trippable-enough text for a double: 9 significant digits.
inline std::string format_number(double v, int significant = 9) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, v);
  return buf;
}

inline std::string format_fixed(double v, int decimals = 4) {
  if (std::abs(v) < 0.5 * std::pow(10.0, -decimals)) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

struct ReadOptions {
  bool one_indexed = false;
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column = 0;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

class LineContext {
public:
  LineContext(std::string source, std::size_t line) : source_(std::move(source)), line_(line) {}

  [[noreturn]] void fail(std::size_t column, const std::string& msg) const {
    throw Error(ErrorKind::parse, source_ + ":" + std::to_string(line_) + ":" +
                                      std::to_string(column) + ": " + msg);
  }

  std::size_t parse_count(const Token& t, const char* what) const {
    std::size_t v = 0;
    const auto* end = t.text.data() + t.text.size();
    auto [p, ec] = std::from_chars(t.text.data(), end, v);
    if (ec != std::errc{} || p != end)
      fail(t.column, std::string("expected a non-negative integer for ") + what + ", got '" +
                         std::string(t.text) + "'");
    return v;
  }

  double parse_real(const Token& t, const char* what) const {
    const std::string s(t.text);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || !std::isfinite(v))
      fail(t.column, std::string("expected a real number for ") + what + ", got '" + s + "'");
    return v;
  }

  Vertex parse_vertex(const Token& t, bool one_indexed) const {
    std::size_t v = parse_count(t, "vertex");
    if (one_indexed) {
      if (v == 0) fail(t.column, "vertex 0 is invalid with one-indexed labels");
      --v;
    }
    return v;
  }

private:
  std::string source_;
  std::size_t line_;
};

}  // namespace detail

/// Reads the `graph <N>` / `edge <u> <v>` text format. Structural problems
/// (bad tokens, out-of-range endpoints, self-loops, duplicates) are reported
/// as Error(parse) carrying source:line:column.
inline Graph read_graph(std::istream& in, const std::string& source = "<input>",
                        const ReadOptions& opts = {}) {
  std::optional<std::size_t> order;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::set<Edge> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    const detail::LineContext ctx(source, lineno);
    const auto& key = tokens[0];
    if (key.text == "graph") {
      if (order) ctx.fail(key.column, "second 'graph' header");
      if (tokens.size() != 2) ctx.fail(key.column, "expected 'graph <N>'");
      order = ctx.parse_count(tokens[1], "vertex count");
    } else if (key.text == "edge") {
      if (!order) ctx.fail(key.column, "'edge' before the 'graph <N>' header");
      if (tokens.size() != 3)
        ctx.fail(tokens.size() < 3 ? tokens.back().column + tokens.back().text.size()
                                   : tokens[3].column,
                 "expected 'edge <u> <v>'");
      const Vertex u = ctx.parse_vertex(tokens[1], opts.one_indexed);
      const Vertex v = ctx.parse_vertex(tokens[2], opts.one_indexed);
      if (u >= *order) ctx.fail(tokens[1].column, "vertex out of range for graph of order " + std::to_string(*order));
      if (v >= *order) ctx.fail(tokens[2].column, "vertex out of range for graph of order " + std::to_string(*order));
      if (u == v) ctx.fail(tokens[1].column, "self-loop");
      if (!seen.insert(make_edge(u, v)).second) ctx.fail(tokens[1].column, "duplicate edge");
      edges.emplace_back(u, v);
    } else {
      ctx.fail(key.column, "unknown record '" + std::string(key.text) + "'");
    }
  }
  if (!order) throw Error(ErrorKind::parse, source + ": missing 'graph <N>' header");
  return Graph(*order, edges);
}

inline Graph read_graph_string(const std::string& text, const ReadOptions& opts = {}) {
  std::istringstream in(text);
  return read_graph(in, "<string>", opts);
}

inline Graph load_graph(const std::filesystem::path& path, const ReadOptions& opts = {}) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, path.string() + ": cannot open graph file");
  return read_graph(in, path.string(), opts);
}

/// Canonical text form: header, then edges in ascending (u,v) order.
inline void write_graph(std::ostream& out, const Graph& g, bool one_indexed = false) {
  const std::size_t off = one_indexed ? 1 : 0;
  out << "graph " << g.vertex_count() << '\n';
  for (const Edge& e : g.edges()) out << "edge " << e.u + off << ' ' << e.v + off << '\n';
}

inline std::string graph_to_string(const Graph& g, bool one_indexed = false) {
  std::ostringstream out;
  write_graph(out, g, one_indexed);
  return out.str();
}

enum class GlueOp { none, bridge, interface };

/// Line-oriented scenario description. Relative graph paths resolve against
/// the scenario file's directory.
struct ScenarioFile {
  std::filesystem::path graph1;
  std::optional<std::filesystem::path> graph2;
  GlueOp op = GlueOp::none;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::optional<std::vector<double>> x0;
  std::optional<double> dt;
  std::optional<double> horizon;
  std::optional<Integrator> method;
  std::optional<std::filesystem::path> out_dir;
};

inline ScenarioFile read_scenario(std::istream& in, const std::string& source,
                                  const std::filesystem::path& base_dir,
                                  const ReadOptions& opts = {}) {
  ScenarioFile sc;
  bool have_graph1 = false;
  std::string line;
  std::size_t lineno = 0;
  auto resolve = [&](std::string_view p) {
    std::filesystem::path path{std::string(p)};
    return path.is_absolute() ? path : base_dir / path;
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto tokens = detail::tokenize(line);
    if (tokens.empty()) continue;
    const detail::LineContext ctx(source, lineno);
    const auto& key = tokens[0];
    auto expect_args = [&](std::size_t n, const char* usage) {
      if (tokens.size() != n + 1) ctx.fail(key.column, std::string("expected '") + usage + "'");
    };
    if (key.text == "graph1") {
      expect_args(1, "graph1 <path>");
      sc.graph1 = resolve(tokens[1].text);
      have_graph1 = true;
    } else if (key.text == "graph2") {
      expect_args(1, "graph2 <path>");
      sc.graph2 = resolve(tokens[1].text);
    } else if (key.text == "op") {
      expect_args(1, "op bridge|interface");
      if (tokens[1].text == "bridge") sc.op = GlueOp::bridge;
      else if (tokens[1].text == "interface") sc.op = GlueOp::interface;
      else ctx.fail(tokens[1].column, "op must be 'bridge' or 'interface'");
    } else if (key.text == "pair") {
      expect_args(2, "pair <u> <v>");
      sc.pairs.emplace_back(ctx.parse_vertex(tokens[1], opts.one_indexed),
                            ctx.parse_vertex(tokens[2], opts.one_indexed));
    } else if (key.text == "x0") {
      if (tokens.size() < 2) ctx.fail(key.column, "expected 'x0 <v0> <v1> ...'");
      std::vector<double> x;
      for (std::size_t i = 1; i < tokens.size(); ++i) x.push_back(ctx.parse_real(tokens[i], "x0"));
      sc.x0 = std::move(x);
    } else if (key.text == "dt") {
      expect_args(1, "dt <real>");
      sc.dt = ctx.parse_real(tokens[1], "dt");
    } else if (key.text == "horizon") {
      expect_args(1, "horizon <real>");
      sc.horizon = ctx.parse_real(tokens[1], "horizon");
    } else if (key.text == "method") {
      expect_args(1, "method euler|rk4");
      if (tokens[1].text == "euler") sc.method = Integrator::forward_euler;
      else if (tokens[1].text == "rk4") sc.method = Integrator::rk4;
      else ctx.fail(tokens[1].column, "method must be 'euler' or 'rk4'");
    } else if (key.text == "out") {
      expect_args(1, "out <directory>");
      sc.out_dir = resolve(tokens[1].text);
    } else {
      ctx.fail(key.column, "unknown key '" + std::string(key.text) + "'");
    }
  }
  if (!have_graph1) throw Error(ErrorKind::parse, source + ": scenario names no graph1");
  if (sc.op != GlueOp::none && !sc.graph2)
    throw Error(ErrorKind::parse, source + ": op requires graph2");
  if (sc.op == GlueOp::none && !sc.pairs.empty())
    throw Error(ErrorKind::parse, source + ": pairs given without an op");
  return sc;
}

inline ScenarioFile load_scenario(const std::filesystem::path& path, const ReadOptions& opts = {}) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, path.string() + ": cannot open scenario file");
  return read_scenario(in, path.string(), path.parent_path(), opts);
}

/// CSV with header t,x0,...,x{N-1},disagreement and 9 significant digits.
inline void write_trajectory_csv(std::ostream& out, const Trajectory& tr) {
  out << 't';
  for (std::size_t i = 0; i < tr.agents(); ++i) out << ",x" << i;
  out << ",disagreement\n";
  for (std::size_t s = 0; s < tr.samples(); ++s) {
    out << format_number(tr.times[s]);
    for (double v : tr.states.row(s)) out << ',' << format_number(v);
    out << ',' << format_number(tr.disagreement[s]) << '\n';
  }
}

/// Ordered key=value report, one pair per line.
class KeyValueReport {
public:
  KeyValueReport& add(std::string key, std::string value) {
    entries_.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  KeyValueReport& add(std::string key, double value) { return add(std::move(key), format_number(value)); }
  KeyValueReport& add(std::string key, std::size_t value) {
    return add(std::move(key), std::to_string(value));
  }
  KeyValueReport& add(std::string key, bool value) {
    return add(std::move(key), std::string(value ? "true" : "false"));
  }
  KeyValueReport& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }
  KeyValueReport& add(std::string key, std::span<const double> values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) s += ' ';
      s += format_number(values[i]);
    }
    return add(std::move(key), std::move(s));
  }

  void write(std::ostream& out) const {
    for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
  }

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace glueconn::io
