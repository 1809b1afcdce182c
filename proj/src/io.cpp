#include "graphcub/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace graphcub {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Parse, "cannot write " + path.string());
  out << content;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "NaN";
  if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void dump_rec(const Json& j, int indent, int depth, std::string& out) {
  auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_rec(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // numeric arrays stay on one line
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        dump_rec(e, indent, depth + 1, out);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    pos = eol + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view tok, const std::string& where) {
  tok = trim(tok);
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || out < 0)
    fail(ErrorKind::Parse, where + "expected a non-negative integer, got '" + std::string(tok) + "'");
  return out;
}

double parse_real(std::string_view tok, const std::string& where) {
  tok = trim(tok);
  std::string s(tok);
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(x))
    fail(ErrorKind::Parse, where + "expected a finite number, got '" + s + "'");
  return x;
}

Vertex index_of_label(const Graph& g, std::int64_t label, const std::string& where) {
  const auto& labels = g.labels();
  auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it == labels.end() || *it != label)
    fail(ErrorKind::InvalidVertex, where + "unknown vertex label " + std::to_string(label));
  return static_cast<Vertex>(it - labels.begin());
}

} // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_rec(j, indent, 0, out);
  out += '\n';
  return out;
}

std::string to_edge_list(const Graph& g) {
  std::string out;
  for (auto [a, b] : g.edges()) out += std::to_string(g.label(a)) + " " + std::to_string(g.label(b)) + "\n";
  return out;
}

VertexSet parse_vertex_set(std::string_view text, const Graph& g) {
  std::vector<Vertex> out;
  std::size_t line_no = 0;
  for (std::string_view line : lines_of(text)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    out.push_back(index_of_label(g, parse_int(line, where), where));
  }
  return VertexSet(std::move(out));
}

VertexSet parse_vertex_spec(std::string_view spec, const Graph& g) {
  const std::size_t n = g.vertex_count();
  spec = trim(spec);
  if (spec == "all") return all_vertices(n);
  if (spec == "every-other") {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n; v += 2) out.push_back(v);
    return VertexSet(std::move(out));
  }
  constexpr std::string_view kRemove = "remove-every-kth:";
  constexpr std::string_view kRange = "range:";
  constexpr std::string_view kList = "list:";
  if (spec.starts_with(kRemove)) {
    const auto k = parse_int(spec.substr(kRemove.size()), "vertex spec: ");
    if (k < 2) fail(ErrorKind::InvalidParameter, "remove-every-kth needs K >= 2");
    // drop vertices K-1, 2K-1, ... (the K-th, 2K-th, ... counting from one)
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n; ++v)
      if ((v + 1) % static_cast<std::size_t>(k) != 0) out.push_back(v);
    return VertexSet(std::move(out));
  }
  if (spec.starts_with(kRange)) {
    std::string_view body = spec.substr(kRange.size());
    const auto dots = body.find("..");
    if (dots == std::string_view::npos) fail(ErrorKind::Parse, "vertex spec: range must be A..B");
    const auto lo = parse_int(body.substr(0, dots), "vertex spec: ");
    const auto hi = parse_int(body.substr(dots + 2), "vertex spec: ");
    if (hi < lo) fail(ErrorKind::InvalidParameter, "vertex spec: empty range");
    std::vector<Vertex> out;
    for (auto l = lo; l <= hi; ++l) out.push_back(index_of_label(g, l, "vertex spec: "));
    return VertexSet(std::move(out));
  }
  if (spec.starts_with(kList)) return parse_vertex_set(read_file(std::string(spec.substr(kList.size()))), g);
  if (!spec.empty() && std::isdigit(static_cast<unsigned char>(spec.front()))) {
    std::vector<Vertex> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
      std::size_t comma = spec.find(',', pos);
      if (comma == std::string_view::npos) comma = spec.size();
      out.push_back(index_of_label(g, parse_int(spec.substr(pos, comma - pos), "vertex spec: "), "vertex spec: "));
      pos = comma + 1;
    }
    return VertexSet(std::move(out));
  }
  fail(ErrorKind::Parse, "unknown vertex spec '" + std::string(spec) + "'");
}

std::string signal_to_csv(const Graph& g, const Signal& f) {
  g.check_signal(f);
  std::string out = "vertex,value\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    out += std::to_string(g.label(v)) + "," + format_double(f(static_cast<Eigen::Index>(v))) + "\n";
  return out;
}

Signal signal_from_csv(std::string_view text, const Graph& g) {
  const auto lines = lines_of(text);
  std::size_t line_no = 0;
  bool header = false;
  Signal f(static_cast<Eigen::Index>(g.vertex_count()));
  std::vector<char> seen(g.vertex_count(), 0);
  for (std::string_view line : lines) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (!header) {
      if (line != "vertex,value") fail(ErrorKind::Parse, where + "expected header 'vertex,value'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) fail(ErrorKind::Parse, where + "expected 'vertex,value'");
    const Vertex v = index_of_label(g, parse_int(line.substr(0, comma), where), where);
    if (seen[v]) fail(ErrorKind::Parse, where + "vertex listed twice");
    seen[v] = 1;
    f(static_cast<Eigen::Index>(v)) = parse_real(line.substr(comma + 1), where);
  }
  if (!header) fail(ErrorKind::Parse, "signal file is empty");
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (!seen[v]) fail(ErrorKind::Parse, "signal has no value for vertex " + std::to_string(g.label(v)));
  return f;
}

std::string spectrum_to_csv(const EigenDecomposition& d) {
  std::string out = "index,eigenvalue\n";
  for (Eigen::Index j = 0; j < d.eigenvalues().size(); ++j)
    out += std::to_string(j) + "," + format_double(d.eigenvalues()(j)) + "\n";
  return out;
}

Json band_report(const BandlimitedSpace& sp) {
  Json ev = Json::array();
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(sp.dim()); ++j) ev.push_back(sp.parent().eigenvalues()(j));
  Json j;
  j["omega"] = sp.omega();
  j["dim"] = sp.dim();
  j["distinct_eigenvalues"] = sp.parent().count_distinct_at_most(sp.omega());
  j["eigenvalues"] = std::move(ev);
  return j;
}

Json labels_of(const Graph& g, const VertexSet& s) {
  Json out = Json::array();
  for (Vertex v : s) out.push_back(g.label(v));
  return out;
}

Json rule_to_json(const Graph& g, const CubatureRule& r) {
  Json j;
  j["U"] = labels_of(g, r.nodes);
  Json w = Json::array();
  for (Eigen::Index i = 0; i < r.weights.size(); ++i) w.push_back(r.weights(i));
  j["weights"] = std::move(w);
  j["kind"] = to_string(r.kind);
  Json params = Json::object();
  for (const auto& [key, value] : r.params) params[key] = value;
  j["params"] = std::move(params);
  return j;
}

Json basis_to_json(const Graph& g, const LagrangianBasis& b) {
  Json j;
  j["U"] = labels_of(g, b.problem.samples());
  j["k"] = b.problem.order();
  j["epsilon"] = b.problem.epsilon();
  Json vecs = Json::array();
  for (Eigen::Index c = 0; c < b.vectors.cols(); ++c) {
    Json col = Json::array();
    for (Eigen::Index r = 0; r < b.vectors.rows(); ++r) col.push_back(b.vectors(r, c));
    vecs.push_back(std::move(col));
  }
  j["vectors"] = std::move(vecs);
  return j;
}

Json lambda_to_json(const Graph& g, const LambdaReport& r) {
  Json j;
  j["S"] = labels_of(g, r.support);
  j["lambda"] = r.lambda;
  j["method"] = r.method;
  return j;
}

} // namespace graphcub
