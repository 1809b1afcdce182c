#include "graphcub/frames.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

namespace graphcub {

FrameSystem::FrameSystem(BandlimitedSpace space, VertexSet nodes)
    : space_(std::move(space)), nodes_(std::move(nodes)) {
  if (nodes_.empty()) fail(ErrorKind::InvalidParameter, "frame needs a nonempty vertex set");
  if (nodes_.members().back() >= space_.vertex_count()) fail(ErrorKind::InvalidVertex, "frame node out of range");

  const auto basis = space_.basis();
  analysis_.resize(static_cast<Eigen::Index>(nodes_.size()), basis.cols());
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    analysis_.row(static_cast<Eigen::Index>(i)) = basis.row(static_cast<Eigen::Index>(nodes_[i]));

  const auto dim = static_cast<Eigen::Index>(space_.dim());
  if (analysis_.rows() < dim) {
    fail(ErrorKind::NotUniquenessSet, "not a uniqueness set: |U| = " + std::to_string(nodes_.size()) +
                                          " < dim E_omega = " + std::to_string(dim));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(analysis_);
  singular_values_ = svd.singularValues();
  const double smax = singular_values_(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < singular_values_.size(); ++i)
    if (singular_values_(i) > 1e-9 * smax) ++rank;
  if (rank < dim) {
    fail(ErrorKind::NotUniquenessSet, "not a uniqueness set: sampling on U has rank " + std::to_string(rank) +
                                          " < dim E_omega = " + std::to_string(dim) + " (deficiency " +
                                          std::to_string(dim - rank) + ")");
  }
}

Eigen::VectorXd FrameSystem::sample(const Signal& f) const {
  if (static_cast<std::size_t>(f.size()) != space_.vertex_count()) fail(ErrorKind::Dimension, "signal length mismatch");
  return restrict_to(f, nodes_);
}

FrameSystem frame_system(const BandlimitedSpace& sp, const VertexSet& nodes) { return FrameSystem(sp, nodes); }

std::string to_string(BoundsSource source) {
  switch (source) {
    case BoundsSource::Empirical: return "empirical";
    case BoundsSource::PlancherelPolya: return "pp-theorem";
    case BoundsSource::PlancherelPolyaSimple: return "pp-simple";
  }
  return "unknown";
}

FrameBounds empirical_frame_bounds(const FrameSystem& fs) {
  const auto& s = fs.singular_values();
  const auto dim = static_cast<Eigen::Index>(fs.space().dim());
  return FrameBounds{s(dim - 1) * s(dim - 1), s(0) * s(0), BoundsSource::Empirical};
}

PlancherelPolyaReport pp_bounds(const Graph& g, const VertexSet& nodes, double omega, std::size_t n) {
  if (n < 1) fail(ErrorKind::InvalidParameter, "closure depth n must be >= 1");
  if (!(omega >= 0.0)) fail(ErrorKind::InvalidParameter, "omega must be >= 0");
  const VertexSet covered = closure(g, nodes, n);
  if (covered.size() != g.vertex_count()) {
    const VertexSet missing = covered.complement(g.vertex_count());
    std::ostringstream msg;
    msg << "closure does not cover V: cl^" << n << "(U) misses " << missing.size() << " vertices (";
    for (std::size_t i = 0; i < std::min<std::size_t>(missing.size(), 10); ++i) msg << (i ? " " : "") << missing[i];
    if (missing.size() > 10) msg << " ...";
    msg << ")";
    fail(ErrorKind::Coverage, msg.str());
  }

  PlancherelPolyaReport out;
  out.steps = n;
  for (std::size_t j = 0; j < n; ++j) {
    const RelativeDegrees rd = relative_degree_stats(g, nodes, j);
    out.max_out.push_back(rd.max_out);
    out.min_in.push_back(rd.min_in);
  }
  auto growth = [&](std::size_t i) {
    return 2.0 * static_cast<double>(out.max_out[i]) / static_cast<double>(out.min_in[i]) + 1.0;
  };
  for (std::size_t j = 0; j < n; ++j) {
    double tail = 1.0;
    for (std::size_t i = j + 1; i < n; ++i) tail *= growth(i);
    out.weighted_sum += tail / static_cast<double>(out.min_in[j]);
    out.product *= growth(j);
  }
  out.omega_threshold = 0.25 / out.weighted_sum;
  if (!(omega < out.omega_threshold)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "bandwidth too large: omega = " << omega << " must be < " << out.omega_threshold;
    fail(ErrorKind::BandwidthTooLarge, msg.str());
  }
  out.gamma = 2.0 * std::sqrt(omega * out.weighted_sum);
  const double shrink = (1.0 - out.gamma) * (1.0 - out.gamma);
  out.bounds = FrameBounds{shrink / out.product, 1.0,
                           n == 1 ? BoundsSource::PlancherelPolyaSimple : BoundsSource::PlancherelPolya};
  return out;
}

namespace {

/// (M'M)^{-1} as a Cholesky factor, M the analysis matrix.
Eigen::LLT<Eigen::MatrixXd> frame_operator_factor(const FrameSystem& fs) {
  const Eigen::MatrixXd op = fs.analysis().transpose() * fs.analysis();
  Eigen::LLT<Eigen::MatrixXd> llt(op);
  if (llt.info() != Eigen::Success) fail(ErrorKind::Numeric, "frame operator is not positive definite");
  return llt;
}

} // namespace

Eigen::MatrixXd dual_frame(const FrameSystem& fs) {
  const auto llt = frame_operator_factor(fs);
  const Eigen::MatrixXd coords = llt.solve(fs.analysis().transpose());  // dim x |U|
  return fs.space().basis() * coords;
}

CubatureRule dual_frame_weights(const FrameSystem& fs) {
  const auto llt = frame_operator_factor(fs);
  // sigma = M (M'M)^{-1} Phi' 1
  const Eigen::VectorXd ones_coords = fs.space().basis().transpose() * Eigen::VectorXd::Ones(
                                          static_cast<Eigen::Index>(fs.space().vertex_count()));
  CubatureRule r;
  r.nodes = fs.nodes();
  r.weights = fs.analysis() * llt.solve(ones_coords);
  r.kind = RuleKind::DualFrame;
  r.params = {{"omega", fs.space().omega()}, {"dim", static_cast<double>(fs.space().dim())}};
  return r;
}

ConvergenceFactor convergence_factor(const Graph& g, const VertexSet& nodes) {
  if (nodes.empty()) fail(ErrorKind::InvalidParameter, "empty vertex set");
  if (closure(g, nodes, 1).size() != g.vertex_count())
    fail(ErrorKind::Coverage, "closure does not cover V: U together with its boundary must be all of V");
  const RelativeDegrees rd = relative_degree_stats(g, nodes, 0);
  ConvergenceFactor out;
  out.max_out = rd.max_out;
  out.min_in = rd.min_in;
  out.delta = static_cast<double>(rd.max_out) / static_cast<double>(rd.max_out + rd.min_in);
  out.in_out_ratio = static_cast<double>(rd.min_in) / static_cast<double>(rd.max_out);
  return out;
}

FrameBounds default_iteration_bounds(const FrameSystem& fs) { return empirical_frame_bounds(fs); }

FrameIteration frame_iterate(const FrameSystem& fs, const Eigen::VectorXd& samples, std::size_t steps,
                             std::optional<FrameBounds> bounds, std::optional<double> relaxation) {
  if (samples.size() != static_cast<Eigen::Index>(fs.nodes().size()))
    fail(ErrorKind::Dimension, "expected " + std::to_string(fs.nodes().size()) + " samples, got " +
                                   std::to_string(samples.size()));
  if (!samples.allFinite()) fail(ErrorKind::InvalidParameter, "samples contain non-finite values");

  FrameIteration it;
  it.bounds = bounds.value_or(default_iteration_bounds(fs));
  if (!(it.bounds.lower > 0.0) || !(it.bounds.upper >= it.bounds.lower))
    fail(ErrorKind::InvalidParameter, "frame bounds must satisfy 0 < A <= B");
  it.relaxation = relaxation.value_or(2.0 / (it.bounds.lower + it.bounds.upper));
  if (!(it.relaxation > 0.0 && it.relaxation < 2.0 / it.bounds.upper)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "relaxation " << it.relaxation << " outside (0, 2/B) = (0, " << 2.0 / it.bounds.upper << ")";
    fail(ErrorKind::InvalidParameter, msg.str());
  }
  it.delta = std::max(std::abs(1.0 - it.relaxation * it.bounds.lower),
                      std::abs(1.0 - it.relaxation * it.bounds.upper));

  const auto basis = fs.space().basis();
  const Eigen::MatrixXd& m = fs.analysis();
  // nu_u = sum_v theta_u(v) = row u of M dotted with Phi' 1
  const Eigen::VectorXd ones_coords =
      basis.transpose() * Eigen::VectorXd::Ones(static_cast<Eigen::Index>(fs.space().vertex_count()));
  it.nu = m * ones_coords;

  Eigen::VectorXd coords = Eigen::VectorXd::Zero(m.cols());
  double integral = 0.0;
  it.iterates.push_back(basis * coords);
  it.integrals.push_back(integral);
  for (std::size_t n = 1; n <= steps; ++n) {
    const Eigen::VectorXd gap = samples - m * coords;  // (f - f_{n-1})(u)
    coords += it.relaxation * (m.transpose() * gap);
    integral += it.relaxation * gap.dot(it.nu);
    it.iterates.push_back(basis * coords);
    it.integrals.push_back(integral);
  }
  return it;
}

IterationCheck verify_iteration(const FrameIteration& it, const Signal& truth, std::optional<double> delta,
                                double slack) {
  if (it.iterates.empty() || truth.size() != it.iterates.front().size())
    fail(ErrorKind::Dimension, "true signal does not match the iteration");
  const double d = delta.value_or(it.delta);
  const double nf = truth.norm();
  const double total = truth.sum();
  const double root_v = std::sqrt(static_cast<double>(truth.size()));
  IterationCheck out;
  for (std::size_t n = 0; n < it.iterates.size(); ++n) {
    const double pw = std::pow(d, static_cast<double>(n));
    out.residual_norms.push_back((truth - it.iterates[n]).norm());
    out.residual_bounds.push_back(pw * nf);
    out.integral_errors.push_back(std::abs(total - it.integrals[n]));
    out.integral_bounds.push_back(pw * root_v * nf);
    out.max_integral_mismatch =
        std::max(out.max_integral_mismatch, std::abs(it.integrals[n] - it.iterates[n].sum()));
    if (out.residual_norms.back() > out.residual_bounds.back() + slack ||
        out.integral_errors.back() > out.integral_bounds.back() + slack)
      out.geometric_ok = false;
  }
  return out;
}

FrameCubature frame_cubature(const FrameSystem& fs, const Eigen::VectorXd& samples, std::size_t steps,
                             std::optional<FrameBounds> bounds) {
  FrameCubature out;
  out.iteration = frame_iterate(fs, samples, steps, bounds);
  out.integrals = out.iteration.integrals;

  // I_n is linear in the samples: w = lambda sum_{j<n} (I - lambda M M')^j nu.
  const Eigen::MatrixXd& m = fs.analysis();
  const double lam = out.iteration.relaxation;
  Eigen::VectorXd term = out.iteration.nu;
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(term.size());
  for (std::size_t j = 0; j < steps; ++j) {
    weights += lam * term;
    term -= lam * (m * (m.transpose() * term));
  }
  out.rule.nodes = fs.nodes();
  out.rule.weights = std::move(weights);
  out.rule.kind = RuleKind::FrameIteration;
  out.rule.params = {{"omega", fs.space().omega()},
                     {"steps", static_cast<double>(steps)},
                     {"relaxation", lam}};

  const double norm_estimate = std::sqrt(samples.squaredNorm() / out.iteration.bounds.lower);
  const double root_v = std::sqrt(static_cast<double>(fs.space().vertex_count()));
  for (std::size_t n = 0; n <= steps; ++n)
    out.a_priori_bounds.push_back(std::pow(out.iteration.delta, static_cast<double>(n)) * root_v * norm_estimate);
  return out;
}

} // namespace graphcub
