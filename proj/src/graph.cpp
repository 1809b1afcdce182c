#include "graphcub/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>

namespace graphcub {

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

VertexSet VertexSet::complement(std::size_t n) const {
  std::vector<Vertex> out;
  out.reserve(n > size() ? n - size() : 0);
  auto it = members_.begin();
  for (Vertex v = 0; v < n; ++v) {
    if (it != members_.end() && *it == v) {
      ++it;
      continue;
    }
    out.push_back(v);
  }
  return VertexSet(std::move(out));
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet all_vertices(std::size_t n) {
  std::vector<Vertex> out(n);
  for (Vertex v = 0; v < n; ++v) out[v] = v;
  return VertexSet(std::move(out));
}

// ---------------------------------------------------------------------------

Graph::Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges)
    : Graph(n, edges, {}) {}

Graph::Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges,
             std::vector<std::int64_t> labels)
    : neighbors_(n), labels_(std::move(labels)) {
  if (n < 2) fail(ErrorKind::InvalidParameter, "graph needs at least 2 vertices");
  if (labels_.empty()) {
    labels_.resize(n);
    for (Vertex v = 0; v < n; ++v) labels_[v] = static_cast<std::int64_t>(v);
  }
  if (labels_.size() != n) fail(ErrorKind::Dimension, "label count does not match vertex count");

  for (auto [a, b] : edges) {
    if (a >= n || b >= n)
      fail(ErrorKind::InvalidVertex, "edge endpoint out of range: " + std::to_string(std::max(a, b)));
    if (a == b) fail(ErrorKind::LoopOrMultiEdge, "loop at vertex " + std::to_string(labels_[a]));
    neighbors_[a].push_back(b);
    neighbors_[b].push_back(a);
  }
  for (Vertex v = 0; v < n; ++v) {
    auto& nb = neighbors_[v];
    std::sort(nb.begin(), nb.end());
    auto dup = std::adjacent_find(nb.begin(), nb.end());
    if (dup != nb.end())
      fail(ErrorKind::LoopOrMultiEdge, "duplicate edge " + std::to_string(labels_[v]) + " " +
                                           std::to_string(labels_[*dup]));
  }
  edge_count_ = edges.size();

  // connectivity by BFS from vertex 0
  std::vector<char> seen(n, 0);
  std::queue<Vertex> queue;
  queue.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop();
    for (Vertex w : neighbors_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        queue.push(w);
      }
    }
  }
  if (reached != n)
    fail(ErrorKind::Disconnected, "graph is disconnected: " + std::to_string(reached) + " of " +
                                      std::to_string(n) + " vertices reachable from the first");
}

std::size_t Graph::max_degree() const {
  std::size_t d = 0;
  for (const auto& nb : neighbors_) d = std::max(d, nb.size());
  return d;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& nb = neighbors_.at(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count_);
  for (Vertex v = 0; v < vertex_count(); ++v)
    for (Vertex w : neighbors_[v])
      if (v < w) out.emplace_back(v, w);
  return out;
}

Eigen::MatrixXd Graph::laplacian() const {
  const auto n = static_cast<Eigen::Index>(vertex_count());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (Vertex v = 0; v < vertex_count(); ++v) {
    const auto i = static_cast<Eigen::Index>(v);
    lap(i, i) = static_cast<double>(neighbors_[v].size());
    for (Vertex w : neighbors_[v]) lap(i, static_cast<Eigen::Index>(w)) = -1.0;
  }
  return lap;
}

void Graph::check_vertex(Vertex v) const {
  if (v >= vertex_count())
    fail(ErrorKind::InvalidVertex,
         "vertex " + std::to_string(v) + " out of range (|V| = " + std::to_string(vertex_count()) + ")");
}

void Graph::check_set(const VertexSet& s) const {
  if (!s.empty()) check_vertex(s.members().back());
}

void Graph::check_signal(const Signal& f) const {
  if (static_cast<std::size_t>(f.size()) != vertex_count())
    fail(ErrorKind::Dimension, "signal has length " + std::to_string(f.size()) + ", graph has " +
                                   std::to_string(vertex_count()) + " vertices");
  if (!f.allFinite()) fail(ErrorKind::InvalidParameter, "signal has non-finite entries");
}

// ---------------------------------------------------------------------------

Graph build_cycle(std::size_t n) {
  if (n < 3) fail(ErrorKind::InvalidParameter, "cycle needs n >= 3, got " + std::to_string(n));
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph(n, edges);
}

Graph build_path(std::size_t n) {
  if (n < 2) fail(ErrorKind::InvalidParameter, "path needs n >= 2, got " + std::to_string(n));
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, edges);
}

Graph build_grid(std::size_t rows, std::size_t cols) {
  if (rows < 1 || cols < 1 || rows * cols < 2)
    fail(ErrorKind::InvalidParameter, "grid needs rows, cols >= 1 and at least 2 vertices");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Vertex v = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(v, v + 1);
      if (r + 1 < rows) edges.emplace_back(v, v + cols);
    }
  }
  return Graph(rows * cols, edges);
}

Graph build_star(std::size_t leaves) {
  if (leaves < 1) fail(ErrorKind::InvalidParameter, "star needs at least one leaf");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph(leaves + 1, edges);
}

Graph build_complete(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) edges.emplace_back(a, b);
  return Graph(n, edges);
}

namespace {

bool parse_label(std::string_view tok, std::int64_t& out) {
  if (tok.empty()) return false;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size() && out >= 0;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

} // namespace

Graph from_edge_list(std::string_view text) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    auto toks = split_ws(line);
    if (toks.empty() || toks.front().front() == '#') continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    std::int64_t a = 0, b = 0;
    if (toks.size() != 2 || !parse_label(toks[0], a) || !parse_label(toks[1], b))
      fail(ErrorKind::Parse, where + "expected two non-negative integer labels, got '" +
                                 std::string(line) + "'");
    if (a == b) fail(ErrorKind::LoopOrMultiEdge, where + "loop at vertex " + std::to_string(a));
    auto key = std::minmax(a, b);
    auto [it, inserted] = seen.emplace(key, line_no);
    if (!inserted)
      fail(ErrorKind::LoopOrMultiEdge, where + "duplicate edge " + std::to_string(a) + " " +
                                           std::to_string(b) + " (first on line " +
                                           std::to_string(it->second) + ")");
    raw.emplace_back(a, b);
  }

  std::vector<std::int64_t> labels;
  for (auto [a, b] : raw) {
    labels.push_back(a);
    labels.push_back(b);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (labels.size() < 2) fail(ErrorKind::Parse, "edge list has no edges");

  auto index_of = [&](std::int64_t label) {
    return static_cast<Vertex>(std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
  };
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(raw.size());
  for (auto [a, b] : raw) edges.emplace_back(index_of(a), index_of(b));
  const std::size_t n = labels.size();
  return Graph(n, edges, std::move(labels));
}

// ---------------------------------------------------------------------------

Signal laplacian_apply(const Graph& g, const Signal& f) {
  g.check_signal(f);
  Signal out(f.size());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto i = static_cast<Eigen::Index>(v);
    double acc = 0.0;
    for (Vertex w : g.neighbors(v)) acc += f(i) - f(static_cast<Eigen::Index>(w));
    out(i) = acc;
  }
  return out;
}

VertexSet vertex_boundary(const Graph& g, const VertexSet& u) {
  g.check_set(u);
  std::vector<Vertex> out;
  for (Vertex v : u)
    for (Vertex w : g.neighbors(v))
      if (!u.contains(w)) out.push_back(w);
  return VertexSet(std::move(out));
}

VertexSet closure(const Graph& g, const VertexSet& u, std::size_t m) {
  if (u.empty()) fail(ErrorKind::InvalidParameter, "closure of an empty vertex set");
  g.check_set(u);
  VertexSet cur = u;
  for (std::size_t i = 0; i < m && cur.size() < g.vertex_count(); ++i)
    cur = set_union(cur, vertex_boundary(g, cur));
  return cur;
}

RelativeDegrees relative_degree_stats(const Graph& g, const VertexSet& u, std::size_t m) {
  const VertexSet cl = closure(g, u, m);
  const VertexSet bd = vertex_boundary(g, cl);
  if (bd.empty())
    fail(ErrorKind::ClosureSaturated, "closure saturated: cl^" + std::to_string(m) +
                                          "(U) = V has empty boundary; use a smaller m");
  RelativeDegrees out{0, g.max_degree() + 1};
  for (Vertex v : cl) {
    std::size_t d = 0;
    for (Vertex w : g.neighbors(v)) d += bd.contains(w) ? 1 : 0;
    out.max_out = std::max(out.max_out, d);
  }
  for (Vertex w : bd) {
    std::size_t k = 0;
    for (Vertex v : g.neighbors(w)) k += cl.contains(v) ? 1 : 0;
    out.min_in = std::min(out.min_in, k);
  }
  return out;
}

double inner_product(const Signal& f, const Signal& h) {
  if (f.size() != h.size()) fail(ErrorKind::Dimension, "inner product of signals of different length");
  return f.dot(h);
}

double norm(const Signal& f) { return f.norm(); }

double integrate(const Signal& f) { return f.sum(); }

Signal delta(std::size_t n, Vertex v) {
  if (v >= n) fail(ErrorKind::InvalidVertex, "delta at vertex out of range");
  Signal out = Signal::Zero(static_cast<Eigen::Index>(n));
  out(static_cast<Eigen::Index>(v)) = 1.0;
  return out;
}

} // namespace graphcub
