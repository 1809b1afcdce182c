#include "graphcub/spectral.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace graphcub {

EigenDecomposition::EigenDecomposition(Eigen::VectorXd eigenvalues, Eigen::MatrixXd eigenvectors)
    : eigenvalues_(std::move(eigenvalues)), eigenvectors_(std::move(eigenvectors)) {
  if (eigenvectors_.rows() != eigenvalues_.size() || eigenvectors_.cols() != eigenvalues_.size())
    fail(ErrorKind::Dimension, "eigenvector matrix does not match eigenvalue count");
  for (Eigen::Index j = 0; j < eigenvalues_.size(); ++j) {
    if (eigenvalues_(j) < -kBandTolerance)
      fail(ErrorKind::Numeric, "negative Laplacian eigenvalue " + std::to_string(eigenvalues_(j)));
    if (eigenvalues_(j) < 0.0) eigenvalues_(j) = 0.0;
    if (j > 0 && eigenvalues_(j) < eigenvalues_(j - 1))
      fail(ErrorKind::Numeric, "eigenvalues are not sorted");

    auto col = eigenvectors_.col(j);
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      if (std::abs(col(i)) > 1e-12) {
        if (col(i) < 0.0) col = -col;
        break;
      }
    }
  }
}

std::size_t EigenDecomposition::count_at_most(double omega) const {
  std::size_t n = 0;
  while (n < size() && eigenvalues_(static_cast<Eigen::Index>(n)) <= omega + kBandTolerance) ++n;
  return n;
}

std::size_t EigenDecomposition::count_distinct_at_most(double omega) const {
  const std::size_t n = count_at_most(omega);
  std::size_t distinct = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto i = static_cast<Eigen::Index>(j);
    if (j == 0 || eigenvalues_(i) - eigenvalues_(i - 1) > 1e-8) ++distinct;
  }
  return distinct;
}

Signal EigenDecomposition::apply_function(const std::function<double(double)>& p, const Signal& f) const {
  if (f.size() != eigenvalues_.size()) fail(ErrorKind::Dimension, "signal length does not match spectrum");
  Eigen::VectorXd c = eigenvectors_.transpose() * f;
  for (Eigen::Index j = 0; j < c.size(); ++j) c(j) *= p(eigenvalues_(j));
  return eigenvectors_ * c;
}

EigenDecomposition eigendecompose(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.laplacian());
  if (solver.info() != Eigen::Success)
    fail(ErrorKind::Numeric, "symmetric eigensolver did not converge on a graph with " +
                                 std::to_string(g.vertex_count()) + " vertices");
  return EigenDecomposition(solver.eigenvalues(), solver.eigenvectors());
}

// ---------------------------------------------------------------------------

BandlimitedSpace::BandlimitedSpace(std::shared_ptr<const EigenDecomposition> parent, double omega)
    : parent_(std::move(parent)), omega_(omega), dim_(0) {
  if (!parent_) fail(ErrorKind::InvalidParameter, "bandlimited space needs an eigendecomposition");
  if (!(omega >= 0.0) || !std::isfinite(omega))
    fail(ErrorKind::InvalidParameter, "bandwidth omega must be finite and >= 0");
  dim_ = parent_->count_at_most(omega);
}

Eigen::VectorXd BandlimitedSpace::coordinates(const Signal& f) const {
  if (static_cast<std::size_t>(f.size()) != vertex_count())
    fail(ErrorKind::Dimension, "signal length does not match band");
  return basis().transpose() * f;
}

Signal BandlimitedSpace::from_coordinates(const Eigen::VectorXd& c) const {
  if (static_cast<std::size_t>(c.size()) != dim_)
    fail(ErrorKind::Dimension, "coordinate vector does not match band dimension");
  return basis() * c;
}

bool BandlimitedSpace::contains(const Signal& f, double tol) const {
  const double nf = f.norm();
  if (nf == 0.0) return true;
  return (f - project(f, *this)).norm() <= tol * nf;
}

BandlimitedSpace bandlimited_space(std::shared_ptr<const EigenDecomposition> d, double omega) {
  return BandlimitedSpace(std::move(d), omega);
}

Signal project(const Signal& f, const BandlimitedSpace& sp) {
  return sp.from_coordinates(sp.coordinates(f));
}

Signal theta_vector(const BandlimitedSpace& sp, Vertex v) {
  if (v >= sp.vertex_count()) fail(ErrorKind::InvalidVertex, "vertex out of range");
  return sp.basis() * sp.basis().row(static_cast<Eigen::Index>(v)).transpose();
}

double bernstein_margin(const Graph& g, const Signal& f, double omega, int s_max) {
  g.check_signal(f);
  const double nf = f.norm();
  if (nf == 0.0) fail(ErrorKind::InvalidParameter, "Bernstein margin of the zero signal");
  if (s_max < 1) fail(ErrorKind::InvalidParameter, "s_max must be >= 1");
  if (!(omega > 0.0)) fail(ErrorKind::InvalidParameter, "Bernstein margin needs omega > 0");
  double margin = 0.0;
  Signal cur = f;
  double scale = nf;
  for (int s = 1; s <= s_max; ++s) {
    cur = laplacian_apply(g, cur);
    scale *= omega;
    margin = std::max(margin, cur.norm() / scale);
  }
  return margin;
}

} // namespace graphcub
