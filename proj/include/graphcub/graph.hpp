#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "graphcub/error.hpp"

namespace graphcub {

using Vertex = std::size_t;

/// Real-valued function on the vertex set, indexed by canonical vertex index.
using Signal = Eigen::VectorXd;

/// Sorted, duplicate-free set of vertex indices.
class VertexSet {
public:
  VertexSet() = default;
  VertexSet(std::vector<Vertex> members);
  VertexSet(std::initializer_list<Vertex> members) : VertexSet(std::vector<Vertex>(members)) {}

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Vertex v) const;

  const std::vector<Vertex>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  Vertex operator[](std::size_t i) const { return members_[i]; }

  /// V \ this, for a vertex set of size n.
  VertexSet complement(std::size_t n) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
  std::vector<Vertex> members_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet all_vertices(std::size_t n);

/**
 * Finite, simple, undirected, unweighted, connected graph.
 *
 * Vertices are canonical indices 0..n-1. The label of each vertex in the
 * input it came from is kept for reporting; generated graphs use the
 * identity labeling.
 */
class Graph {
public:
  /// Builds a graph on n vertices from index pairs. Rejects loops, repeated
  /// edges, out-of-range indices and disconnected graphs.
  Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);
  Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges,
        std::vector<std::int64_t> labels);

  std::size_t vertex_count() const { return neighbors_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t degree(Vertex v) const { return neighbors_.at(v).size(); }
  std::size_t max_degree() const;

  /// Sorted neighbor list of v.
  const std::vector<Vertex>& neighbors(Vertex v) const { return neighbors_.at(v); }
  bool adjacent(Vertex u, Vertex v) const;

  std::int64_t label(Vertex v) const { return labels_.at(v); }
  const std::vector<std::int64_t>& labels() const { return labels_; }

  /// Edges (u, v) with u < v, sorted lexicographically.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  /// Dense L = D - A.
  Eigen::MatrixXd laplacian() const;

  void check_vertex(Vertex v) const;
  void check_set(const VertexSet& s) const;
  void check_signal(const Signal& f) const;

private:
  std::vector<std::vector<Vertex>> neighbors_;
  std::vector<std::int64_t> labels_;
  std::size_t edge_count_ = 0;
};

Graph build_cycle(std::size_t n);
Graph build_path(std::size_t n);
Graph build_grid(std::size_t rows, std::size_t cols);
Graph build_star(std::size_t leaves);
Graph build_complete(std::size_t n);

/// Parses the edge-list text format: one "a b" pair of non-negative integer
/// labels per line, '#' comments, blank lines ignored. Labels are mapped to
/// contiguous indices in ascending label order.
Graph from_edge_list(std::string_view text);

/// L f computed from adjacency lists, no dense matrix involved.
Signal laplacian_apply(const Graph& g, const Signal& f);

/// Outer vertex boundary: vertices outside U with a neighbor in U.
VertexSet vertex_boundary(const Graph& g, const VertexSet& u);

/// cl^m(U), where cl(U) = U together with its outer boundary.
VertexSet closure(const Graph& g, const VertexSet& u, std::size_t m);

struct RelativeDegrees {
  std::size_t max_out;  // D_m
  std::size_t min_in;   // K_m
};

/// D_m = max over v in cl^m(U) of its neighbor count in the boundary of
/// cl^m(U); K_m = min over that boundary of the neighbor count in cl^m(U).
RelativeDegrees relative_degree_stats(const Graph& g, const VertexSet& u, std::size_t m);

double inner_product(const Signal& f, const Signal& h);
double norm(const Signal& f);
double integrate(const Signal& f);

Signal delta(std::size_t n, Vertex v);

} // namespace graphcub
