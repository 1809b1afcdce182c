#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "graphcub/cubature.hpp"
#include "graphcub/graph.hpp"
#include "graphcub/spectral.hpp"

namespace graphcub {

/**
 * The frame {theta_u : u in U} of projected deltas in E_omega.
 *
 * Everything is held in band coordinates: row u of the analysis matrix is
 * (phi_0(u), ..., phi_{dim-1}(u)), so <f, theta_u> = f(u) = analysis * c for
 * f with coordinates c, and the frame operator is analysis' * analysis.
 */
class FrameSystem {
public:
  FrameSystem(BandlimitedSpace space, VertexSet nodes);

  const BandlimitedSpace& space() const { return space_; }
  const VertexSet& nodes() const { return nodes_; }
  const Eigen::MatrixXd& analysis() const { return analysis_; }
  /// Singular values of the analysis matrix, descending.
  const Eigen::VectorXd& singular_values() const { return singular_values_; }

  /// Samples f(u), u in U, of a signal.
  Eigen::VectorXd sample(const Signal& f) const;

private:
  BandlimitedSpace space_;
  VertexSet nodes_;
  Eigen::MatrixXd analysis_;
  Eigen::VectorXd singular_values_;
};

/// Throws NotUniquenessSet when U does not determine E_omega.
FrameSystem frame_system(const BandlimitedSpace& sp, const VertexSet& nodes);

enum class BoundsSource { Empirical, PlancherelPolya, PlancherelPolyaSimple };

std::string to_string(BoundsSource source);

struct FrameBounds {
  double lower = 0.0;  // A
  double upper = 0.0;  // B
  BoundsSource source = BoundsSource::Empirical;
};

/// Extreme eigenvalues of the frame operator: the tightest frame bounds.
FrameBounds empirical_frame_bounds(const FrameSystem& fs);

struct PlancherelPolyaReport {
  FrameBounds bounds;
  std::size_t steps = 1;                 // n with cl^n(U) = V
  std::vector<std::size_t> max_out;      // D_0..D_{n-1}
  std::vector<std::size_t> min_in;       // K_0..K_{n-1}
  double weighted_sum = 0.0;             // sum_j (1/K_j) prod_{i>j} (2 D_i / K_i + 1)
  double product = 1.0;                  // prod_i (2 D_i / K_i + 1)
  double gamma = 0.0;
  double omega_threshold = 0.0;          // 1 / (4 * weighted_sum)
};

/**
 * Frame bounds from the Plancherel-Polya inequality with explicit constants
 * built from the closure sequence U, cl(U), ..., cl^n(U) = V.
 *
 * Lower bound A = (1 - gamma)^2 / product. The upper bound is B = 1: U is a
 * subset of V, so sum_u f(u)^2 <= ||f||^2 always.
 */
PlancherelPolyaReport pp_bounds(const Graph& g, const VertexSet& nodes, double omega, std::size_t n);

/// Canonical dual frame Theta_u = S^{-1} theta_u as vertex signals, one column per node.
Eigen::MatrixXd dual_frame(const FrameSystem& fs);

/// sigma_u = sum_v Theta_u(v); exact on E_omega.
CubatureRule dual_frame_weights(const FrameSystem& fs);

struct ConvergenceFactor {
  std::size_t max_out = 0;  // D_0
  std::size_t min_in = 0;   // K_0
  double delta = 0.0;       // D_0 / (D_0 + K_0)
  double in_out_ratio = 0.0;  // K_0 / D_0
};

/// delta = D_0 / (D_0 + K_0); requires U together with its boundary to cover V.
ConvergenceFactor convergence_factor(const Graph& g, const VertexSet& nodes);

struct FrameIteration {
  FrameBounds bounds;
  double relaxation = 0.0;       // lambda
  double delta = 0.0;            // max(|1 - lambda A|, |1 - lambda B|)
  std::vector<Signal> iterates;  // f_0 = 0, f_1, ..., f_n
  /// sum_v f_n(v) from the recursion over nu_u = sum_v theta_u(v).
  std::vector<double> integrals;
  Eigen::VectorXd nu;
};

/// Default frame bounds for the iteration: the exact (empirical) ones.
FrameBounds default_iteration_bounds(const FrameSystem& fs);

/**
 * f_n = f_{n-1} + lambda sum_u (f - f_{n-1})(u) theta_u from f_0 = 0, using
 * only the samples f(u). lambda defaults to 2 / (A + B); an explicit value
 * must lie in (0, 2/B).
 */
FrameIteration frame_iterate(const FrameSystem& fs, const Eigen::VectorXd& samples, std::size_t steps,
                             std::optional<FrameBounds> bounds = std::nullopt,
                             std::optional<double> relaxation = std::nullopt);

struct IterationCheck {
  std::vector<double> residual_norms;   // ||f - f_n||
  std::vector<double> residual_bounds;  // delta^n ||f||
  std::vector<double> integral_errors;  // |sum f - I_n|
  std::vector<double> integral_bounds;  // delta^n sqrt|V| ||f||
  double max_integral_mismatch = 0.0;   // max_n |I_n - sum f_n|
  bool geometric_ok = true;
};

/// Compares an iteration against the true signal, with a convergence factor
/// (the iteration's own delta unless one is supplied).
IterationCheck verify_iteration(const FrameIteration& it, const Signal& truth,
                                std::optional<double> delta = std::nullopt, double slack = 1e-9);

struct FrameCubature {
  std::vector<double> integrals;  // I_0..I_n
  CubatureRule rule;              // weights w with I_n = sum_u w_u f(u)
  /// delta^n sqrt|V| sqrt(sum_u f(u)^2 / A): a bound on |sum f - I_n| from samples alone.
  std::vector<double> a_priori_bounds;
  FrameIteration iteration;
};

FrameCubature frame_cubature(const FrameSystem& fs, const Eigen::VectorXd& samples, std::size_t steps,
                             std::optional<FrameBounds> bounds = std::nullopt);

} // namespace graphcub
