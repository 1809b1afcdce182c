#pragma once

#include <memory>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "graphcub/graph.hpp"

namespace graphcub {

/// Interpolation systems with an estimated condition number above this are rejected.
inline constexpr double kMaxConditionNumber = 1e12;

/**
 * Sample set U, spline order k >= 1 and regularizer epsilon > 0 on a graph.
 *
 * Owns a sparse copy of eps*I + L and its Cholesky factor so that powers of
 * the operator are applied (or inverted) one factor at a time. Cheap to copy;
 * copies share the immutable state.
 */
class SplineProblem {
public:
  SplineProblem(const Graph& g, VertexSet samples, int order, double epsilon);

  const Graph& graph() const;
  const VertexSet& samples() const;
  /// S = V \ U.
  const VertexSet& complement() const;
  int order() const { return order_; }
  double epsilon() const { return epsilon_; }
  std::size_t vertex_count() const;

  /// (eps*I + L)^power x, column by column.
  Eigen::MatrixXd apply_shifted(const Eigen::MatrixXd& x, int power) const;
  /// (eps*I + L)^{-power} x via repeated Cholesky solves.
  Eigen::MatrixXd solve_shifted(const Eigen::MatrixXd& x, int power) const;

  /// The dense matrix (eps*I + L)^k.
  Eigen::MatrixXd energy_operator() const;

private:
  struct State;
  std::shared_ptr<const State> state_;
  int order_;
  double epsilon_;
};

/// Cardinal splines: column i is the spline equal to 1 at samples()[i] and 0
/// at every other sample.
struct LagrangianBasis {
  SplineProblem problem;
  Eigen::MatrixXd vectors;  // |V| x |U|
  double condition_estimate = 1.0;
};

struct Spline {
  SplineProblem problem;
  Signal values;
  /// (eps*I + L)^{2k} values, restricted to U.
  Eigen::VectorXd alpha;
};

/// Solves (eps*I + L)^order F = delta_u.
Signal fundamental_solution(const SplineProblem& p, Vertex u, int order);
inline Signal fundamental_solution(const SplineProblem& p, Vertex u) {
  return fundamental_solution(p, u, p.order());
}

/// Lagrangian basis from the constrained minimization of ||(eps*I + L)^k Y||:
/// the values on S solve a least-squares problem in the columns of (eps*I + L)^k.
LagrangianBasis lagrangian_basis(const SplineProblem& p);

/// Lagrangian basis assembled from fundamental solutions of order 2k and the
/// |U| x |U| interpolation matrix [F^u(w)]. Used as an independent check of
/// lagrangian_basis; it conditions badly for small eps and large k.
LagrangianBasis lagrangian_basis_fundamental(const SplineProblem& p);

Spline interpolate(const LagrangianBasis& b, const Eigen::VectorXd& y);
Spline interpolate_signal(const SplineProblem& p, const Signal& f);

/// Largest |(eps*I + L)^{2k} Y| over vertices outside U; 0 when U = V.
double variational_residual(const Spline& s);
double variational_residual(const SplineProblem& p, const Signal& values);

/// Restriction of f to the vertices of s, in the order of s.
Eigen::VectorXd restrict_to(const Signal& f, const VertexSet& s);

} // namespace graphcub
