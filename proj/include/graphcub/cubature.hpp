#pragma once

#include <map>
#include <string>

#include <Eigen/Core>

#include "graphcub/graph.hpp"
#include "graphcub/splines.hpp"

namespace graphcub {

struct LambdaReport {
  VertexSet support;
  /// Exact Poincare constant: the smallest Lambda with ||phi|| <= Lambda ||L phi|| for phi supported on S.
  double lambda = 0.0;
  std::string method = "exact-singular-value";
  /// Unit signal supported on S attaining the constant.
  Signal minimizer;
};

/// Lambda(S) = 1 / sigma_min(L restricted to signals supported on S).
LambdaReport poincare_constant(const Graph& g, const VertexSet& s);

enum class RuleKind { Spline, DualFrame, FrameIteration };

std::string to_string(RuleKind kind);

struct CubatureRule {
  VertexSet nodes;
  Eigen::VectorXd weights;
  RuleKind kind = RuleKind::Spline;
  /// Parameters the rule was built from (k, epsilon, omega, steps, ...).
  std::map<std::string, double> params;
};

/// theta_u = sum over V of the Lagrangian spline for u.
CubatureRule spline_cubature_weights(const LagrangianBasis& b);
CubatureRule spline_cubature_weights(const SplineProblem& p);

double apply_rule(const CubatureRule& r, const Eigen::VectorXd& samples);

/// True for k = 1, 2, 4, 8, ...
bool is_dyadic(int k);

/// 2 sqrt|S| Lambda^k ||(eps*I + L)^k f|| for dyadic k.
double general_error_bound(const Graph& g, const Signal& f, std::size_t s_size, double lambda, int k,
                           double epsilon);

/// gamma = Lambda (omega + eps).
double bandlimited_gamma(double lambda, double omega, double epsilon);

/// 2 gamma^k sqrt|S| ||f|| for f in E_omega and dyadic k.
double bandlimited_error_bound(double norm_f, std::size_t s_size, double lambda, double omega,
                               double epsilon, int k);

/// omega < 1/Lambda - eps, so gamma < 1 and the bound vanishes as k = 2^l grows.
bool bandlimited_bound_decays(double lambda, double omega, double epsilon);

struct QSetInterval {
  double a = 0.0;
  double b = 0.0;
  double midpoint = 0.0;
  /// sum over V of the interpolating spline, the exact center of [a, b].
  double spline_integral = 0.0;
  /// sum_u y_u theta_u from the spline rule.
  double rule_value = 0.0;
  double min_energy = 0.0;   // ||(eps*I + L)^k Y||
  double radius = 0.0;       // sqrt(K^2 - min_energy^2)
  /// Diameter of Q in the energy norm ||(eps*I + L)^k .||, i.e. 2 * radius.
  double energy_diameter = 0.0;
  /// Euclidean diameter 2 * radius / sqrt(lambda_min(B)).
  double euclidean_diameter = 0.0;
  bool midpoint_matches_rule = false;
};

/**
 * Exact range [a, b] of sum_v g(v) over Q(U, y, k, eps, K), the set of
 * signals agreeing with y on U with ||(eps*I + L)^k g|| <= K.
 *
 * Writing g = Y + h with Y the interpolating spline and h zero on U, the
 * energy splits as ||T Y||^2 + h_S' B h_S with B = ((eps*I + L)^{2k})_{SS},
 * so the extremes are sum Y -/+ r sqrt(1' B^{-1} 1).
 */
QSetInterval q_set_interval(const SplineProblem& p, const Eigen::VectorXd& y, double big_k);

/// sqrt|S| Lambda^k times the energy-norm diameter of Q; dyadic k only.
double q_set_deviation_bound(const SplineProblem& p, const Eigen::VectorXd& y, double big_k, double lambda);

} // namespace graphcub
