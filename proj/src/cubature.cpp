#include "graphcub/cubature.hpp"

#include <cmath>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace graphcub {

LambdaReport poincare_constant(const Graph& g, const VertexSet& s) {
  if (s.empty()) fail(ErrorKind::InvalidParameter, "Poincare constant of an empty set");
  g.check_set(s);
  if (s.size() == g.vertex_count())
    fail(ErrorKind::InvalidParameter, "Poincare constant of S = V is infinite (L has a kernel)");

  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  const auto m = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Vertex v = s[static_cast<std::size_t>(j)];
    cols(static_cast<Eigen::Index>(v), j) = static_cast<double>(g.degree(v));
    for (Vertex w : g.neighbors(v)) cols(static_cast<Eigen::Index>(w), j) = -1.0;
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(cols, Eigen::ComputeThinV);
  const Eigen::Index last = svd.singularValues().size() - 1;
  const double sigma_min = svd.singularValues()(last);
  if (!(sigma_min > 0.0)) fail(ErrorKind::Numeric, "L restricted to S is singular");

  LambdaReport out;
  out.support = s;
  out.lambda = 1.0 / sigma_min;
  out.minimizer = Signal::Zero(n);
  const Eigen::VectorXd v = svd.matrixV().col(last);
  for (Eigen::Index j = 0; j < m; ++j) out.minimizer(static_cast<Eigen::Index>(s[static_cast<std::size_t>(j)])) = v(j);
  return out;
}

std::string to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::Spline: return "spline";
    case RuleKind::DualFrame: return "dual-frame";
    case RuleKind::FrameIteration: return "frame-iteration";
  }
  return "unknown";
}

CubatureRule spline_cubature_weights(const LagrangianBasis& b) {
  CubatureRule r;
  r.nodes = b.problem.samples();
  r.weights = b.vectors.colwise().sum().transpose();
  r.kind = RuleKind::Spline;
  r.params = {{"k", static_cast<double>(b.problem.order())}, {"epsilon", b.problem.epsilon()}};
  return r;
}

CubatureRule spline_cubature_weights(const SplineProblem& p) {
  return spline_cubature_weights(lagrangian_basis(p));
}

double apply_rule(const CubatureRule& r, const Eigen::VectorXd& samples) {
  if (samples.size() != r.weights.size())
    fail(ErrorKind::Dimension, "rule has " + std::to_string(r.weights.size()) + " nodes, got " +
                                   std::to_string(samples.size()) + " samples");
  return r.weights.dot(samples);
}

bool is_dyadic(int k) { return k >= 1 && (k & (k - 1)) == 0; }

namespace {

void require_dyadic(int k) {
  if (!is_dyadic(k))
    fail(ErrorKind::NonDyadic, "k = " + std::to_string(k) +
                                   " is not a power of two; the error bounds hold only for k = 2^l");
}

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorKind::InvalidParameter, std::string(name) + " must be > 0");
}

} // namespace

double general_error_bound(const Graph& g, const Signal& f, std::size_t s_size, double lambda, int k,
                           double epsilon) {
  require_dyadic(k);
  require_positive(lambda, "lambda");
  require_positive(epsilon, "epsilon");
  g.check_signal(f);
  Signal tf = f;
  for (int i = 0; i < k; ++i) tf = (laplacian_apply(g, tf) + epsilon * tf).eval();
  return 2.0 * std::sqrt(static_cast<double>(s_size)) * std::pow(lambda, k) * tf.norm();
}

double bandlimited_gamma(double lambda, double omega, double epsilon) { return lambda * (omega + epsilon); }

double bandlimited_error_bound(double norm_f, std::size_t s_size, double lambda, double omega,
                               double epsilon, int k) {
  require_dyadic(k);
  require_positive(lambda, "lambda");
  require_positive(omega, "omega");
  require_positive(epsilon, "epsilon");
  if (!(norm_f >= 0.0)) fail(ErrorKind::InvalidParameter, "norm must be >= 0");
  const double gamma = bandlimited_gamma(lambda, omega, epsilon);
  return 2.0 * std::pow(gamma, k) * std::sqrt(static_cast<double>(s_size)) * norm_f;
}

bool bandlimited_bound_decays(double lambda, double omega, double epsilon) {
  return omega > 0.0 && epsilon > 0.0 && omega < 1.0 / lambda - epsilon;
}

QSetInterval q_set_interval(const SplineProblem& p, const Eigen::VectorXd& y, double big_k) {
  const LagrangianBasis basis = lagrangian_basis(p);
  const Spline spline = interpolate(basis, y);
  const CubatureRule rule = spline_cubature_weights(basis);

  QSetInterval out;
  out.min_energy = p.apply_shifted(spline.values, p.order()).norm();
  const double energy_sq = out.min_energy * out.min_energy;
  double radius_sq = big_k * big_k - energy_sq;
  if (radius_sq < 0.0) {
    if (radius_sq < -1e-12 * std::max(1.0, energy_sq))
      fail(ErrorKind::EmptyQSet, "Q is empty: K = " + std::to_string(big_k) +
                                     " is below the minimal energy " + std::to_string(out.min_energy));
    radius_sq = 0.0;
  }
  out.radius = std::sqrt(radius_sq);
  out.spline_integral = spline.values.sum();
  out.rule_value = apply_rule(rule, y);

  double half_width = 0.0;
  double lambda_min_b = std::numeric_limits<double>::infinity();
  if (!p.complement().empty()) {
    // B = T_S' T_S; 1' B^{-1} 1 = ||R^{-T} P' 1||^2 from a QR of T_S.
    const Eigen::MatrixXd energy = p.energy_operator();
    Eigen::MatrixXd t_s(energy.rows(), static_cast<Eigen::Index>(p.complement().size()));
    for (std::size_t j = 0; j < p.complement().size(); ++j)
      t_s.col(static_cast<Eigen::Index>(j)) = energy.col(static_cast<Eigen::Index>(p.complement()[j]));
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(t_s);
    const auto m = t_s.cols();
    const Eigen::MatrixXd r = qr.matrixQR().topLeftCorner(m, m).triangularView<Eigen::Upper>();
    const Eigen::VectorXd z =
        r.transpose().triangularView<Eigen::Lower>().solve(Eigen::VectorXd::Ones(m));
    half_width = out.radius * z.norm();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
    const double smin = svd.singularValues()(m - 1);
    lambda_min_b = smin * smin;
  }
  out.a = out.spline_integral - half_width;
  out.b = out.spline_integral + half_width;
  out.midpoint = 0.5 * (out.a + out.b);
  out.energy_diameter = 2.0 * out.radius;
  out.euclidean_diameter = std::isfinite(lambda_min_b) ? 2.0 * out.radius / std::sqrt(lambda_min_b) : 0.0;
  out.midpoint_matches_rule =
      std::abs(out.midpoint - out.rule_value) <= 1e-8 * (1.0 + std::abs(out.rule_value));
  return out;
}

double q_set_deviation_bound(const SplineProblem& p, const Eigen::VectorXd& y, double big_k, double lambda) {
  require_dyadic(p.order());
  require_positive(lambda, "lambda");
  const QSetInterval q = q_set_interval(p, y, big_k);
  return std::sqrt(static_cast<double>(p.complement().size())) * std::pow(lambda, p.order()) * q.energy_diameter;
}

} // namespace graphcub
