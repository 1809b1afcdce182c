#pragma once

#include <functional>
#include <memory>

#include <Eigen/Core>

#include "graphcub/graph.hpp"

namespace graphcub {

/// Eigenvalues at or below omega + kBandTolerance belong to E_omega.
inline constexpr double kBandTolerance = 1e-9;

/**
 * Full symmetric eigendecomposition of the combinatorial Laplacian.
 *
 * Eigenvalues ascend; column j of eigenvectors() pairs with eigenvalue j.
 * Tiny negative eigenvalues from round-off are clamped to zero and each
 * eigenvector is signed so that its first coordinate above 1e-12 in
 * magnitude is positive.
 */
class EigenDecomposition {
public:
  EigenDecomposition(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors);

  std::size_t size() const { return static_cast<std::size_t>(eigenvalues_.size()); }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
  double max_eigenvalue() const { return eigenvalues_(eigenvalues_.size() - 1); }

  /// Number of eigenvalues <= omega + kBandTolerance.
  std::size_t count_at_most(double omega) const;

  /// Number of distinct eigenvalues <= omega + kBandTolerance (values closer
  /// than 1e-8 count once).
  std::size_t count_distinct_at_most(double omega) const;

  /// p(L) f for an arbitrary spectral function p.
  Signal apply_function(const std::function<double(double)>& p, const Signal& f) const;

private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

EigenDecomposition eigendecompose(const Graph& g);

/// The span E_omega(L) of the eigenvectors with eigenvalue at most omega.
class BandlimitedSpace {
public:
  BandlimitedSpace(std::shared_ptr<const EigenDecomposition> parent, double omega);

  const EigenDecomposition& parent() const { return *parent_; }
  double omega() const { return omega_; }
  std::size_t dim() const { return dim_; }
  std::size_t vertex_count() const { return parent_->size(); }

  /// Orthonormal basis of the band, one column per retained eigenvector.
  auto basis() const { return parent_->eigenvectors().leftCols(static_cast<Eigen::Index>(dim_)); }
  auto band_eigenvalues() const { return parent_->eigenvalues().head(static_cast<Eigen::Index>(dim_)); }

  Eigen::VectorXd coordinates(const Signal& f) const;
  Signal from_coordinates(const Eigen::VectorXd& c) const;

  /// Relative distance from f to the band is at most tol.
  bool contains(const Signal& f, double tol = 1e-10) const;

private:
  std::shared_ptr<const EigenDecomposition> parent_;
  double omega_;
  std::size_t dim_;
};

BandlimitedSpace bandlimited_space(std::shared_ptr<const EigenDecomposition> d, double omega);

/// Orthogonal projection of f onto the band.
Signal project(const Signal& f, const BandlimitedSpace& sp);

/// Projection of delta_v onto the band, so that <f, theta_v> = f(v) for f in the band.
Signal theta_vector(const BandlimitedSpace& sp, Vertex v);

/// max over s = 1..s_max of ||L^s f|| / (omega^s ||f||).
double bernstein_margin(const Graph& g, const Signal& f, double omega, int s_max);

} // namespace graphcub
