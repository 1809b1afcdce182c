#include "graphcub/splines.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseCholesky>

namespace graphcub {

struct SplineProblem::State {
  State(const Graph& g, VertexSet u, VertexSet s) : graph(g), samples(std::move(u)), complement(std::move(s)) {}

  Graph graph;
  VertexSet samples;
  VertexSet complement;
  Eigen::SparseMatrix<double> shifted;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
};

SplineProblem::SplineProblem(const Graph& g, VertexSet samples, int order, double epsilon)
    : order_(order), epsilon_(epsilon) {
  if (samples.empty()) fail(ErrorKind::InvalidParameter, "spline sample set U is empty");
  g.check_set(samples);
  if (order < 1) fail(ErrorKind::InvalidParameter, "spline order k must be >= 1");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    fail(ErrorKind::InvalidParameter, "spline regularizer epsilon must be > 0");

  auto st = std::make_shared<State>(g, samples, samples.complement(g.vertex_count()));
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  std::vector<Eigen::Triplet<double>> trips;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const auto i = static_cast<Eigen::Index>(v);
    trips.emplace_back(i, i, epsilon + static_cast<double>(g.degree(v)));
    for (Vertex w : g.neighbors(v)) trips.emplace_back(i, static_cast<Eigen::Index>(w), -1.0);
  }
  st->shifted.resize(n, n);
  st->shifted.setFromTriplets(trips.begin(), trips.end());
  st->llt.compute(st->shifted);
  if (st->llt.info() != Eigen::Success)
    fail(ErrorKind::Numeric, "Cholesky factorization of eps*I + L failed");
  state_ = std::move(st);
}

const Graph& SplineProblem::graph() const { return state_->graph; }
const VertexSet& SplineProblem::samples() const { return state_->samples; }
const VertexSet& SplineProblem::complement() const { return state_->complement; }
std::size_t SplineProblem::vertex_count() const { return state_->graph.vertex_count(); }

Eigen::MatrixXd SplineProblem::apply_shifted(const Eigen::MatrixXd& x, int power) const {
  Eigen::MatrixXd out = x;
  for (int i = 0; i < power; ++i) out = state_->shifted * out;
  return out;
}

Eigen::MatrixXd SplineProblem::solve_shifted(const Eigen::MatrixXd& x, int power) const {
  Eigen::MatrixXd out = x;
  for (int i = 0; i < power; ++i) out = state_->llt.solve(out);
  return out;
}

Eigen::MatrixXd SplineProblem::energy_operator() const {
  const auto n = static_cast<Eigen::Index>(vertex_count());
  return apply_shifted(Eigen::MatrixXd::Identity(n, n), order_);
}

Eigen::VectorXd restrict_to(const Signal& f, const VertexSet& s) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (static_cast<Eigen::Index>(s[i]) >= f.size()) fail(ErrorKind::Dimension, "restriction out of range");
    out(static_cast<Eigen::Index>(i)) = f(static_cast<Eigen::Index>(s[i]));
  }
  return out;
}

namespace {

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& m, const VertexSet& s) {
  Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    out.col(static_cast<Eigen::Index>(i)) = m.col(static_cast<Eigen::Index>(s[i]));
  return out;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m, const VertexSet& s) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(s.size()), m.cols());
  for (std::size_t i = 0; i < s.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(s[i]));
  return out;
}

[[noreturn]] void ill_conditioned(const char* what, double cond) {
  std::ostringstream msg;
  msg << what << " is ill-conditioned (estimated condition number " << cond << " > "
      << kMaxConditionNumber << ")";
  fail(ErrorKind::Conditioning, msg.str());
}

LagrangianBasis identity_basis(const SplineProblem& p) {
  const auto n = static_cast<Eigen::Index>(p.vertex_count());
  return LagrangianBasis{p, Eigen::MatrixXd::Identity(n, n), 1.0};
}

} // namespace

Signal fundamental_solution(const SplineProblem& p, Vertex u, int order) {
  p.graph().check_vertex(u);
  if (order < 1) fail(ErrorKind::InvalidParameter, "fundamental solution order must be >= 1");
  return p.solve_shifted(delta(p.vertex_count(), u), order);
}

LagrangianBasis lagrangian_basis(const SplineProblem& p) {
  if (p.samples().size() == p.vertex_count()) return identity_basis(p);

  // Minimize ||T (E_U y + E_S h)|| over h: least squares T_S h = -T_U y.
  const Eigen::MatrixXd energy = p.energy_operator();
  const Eigen::MatrixXd t_s = select_columns(energy, p.complement());
  const Eigen::MatrixXd t_u = select_columns(energy, p.samples());

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(t_s);
  const auto r_diag = qr.matrixR().diagonal().cwiseAbs();
  const double cond = r_diag.minCoeff() > 0.0 ? r_diag.maxCoeff() / r_diag.minCoeff()
                                              : std::numeric_limits<double>::infinity();
  if (!(cond <= kMaxConditionNumber)) ill_conditioned("spline least-squares system", cond);
  const Eigen::MatrixXd h = qr.solve(-t_u);

  const auto n = static_cast<Eigen::Index>(p.vertex_count());
  Eigen::MatrixXd vectors = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(p.samples().size()));
  for (std::size_t i = 0; i < p.samples().size(); ++i)
    vectors(static_cast<Eigen::Index>(p.samples()[i]), static_cast<Eigen::Index>(i)) = 1.0;
  for (std::size_t j = 0; j < p.complement().size(); ++j)
    vectors.row(static_cast<Eigen::Index>(p.complement()[j])) = h.row(static_cast<Eigen::Index>(j));
  return LagrangianBasis{p, std::move(vectors), cond};
}

LagrangianBasis lagrangian_basis_fundamental(const SplineProblem& p) {
  if (p.samples().size() == p.vertex_count()) return identity_basis(p);

  const auto n = static_cast<Eigen::Index>(p.vertex_count());
  const auto m = static_cast<Eigen::Index>(p.samples().size());
  Eigen::MatrixXd deltas = Eigen::MatrixXd::Zero(n, m);
  for (Eigen::Index i = 0; i < m; ++i) deltas(static_cast<Eigen::Index>(p.samples()[static_cast<std::size_t>(i)]), i) = 1.0;

  // F^u of order 2k, the representation that makes (eps*I+L)^{2k} Y supported on U
  const Eigen::MatrixXd fundamental = p.solve_shifted(deltas, 2 * p.order());
  Eigen::MatrixXd gram = select_rows(fundamental, p.samples());
  gram = 0.5 * (gram + gram.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  const double cond = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  if (!(cond <= kMaxConditionNumber)) ill_conditioned("fundamental-solution interpolation matrix", cond);

  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) ill_conditioned("fundamental-solution interpolation matrix", cond);
  const Eigen::MatrixXd alpha = llt.solve(Eigen::MatrixXd::Identity(m, m));
  return LagrangianBasis{p, fundamental * alpha, cond};
}

Spline interpolate(const LagrangianBasis& b, const Eigen::VectorXd& y) {
  if (y.size() != b.vectors.cols())
    fail(ErrorKind::Dimension, "sample vector has length " + std::to_string(y.size()) + ", |U| = " +
                                   std::to_string(b.vectors.cols()));
  if (!y.allFinite()) fail(ErrorKind::InvalidParameter, "sample vector has non-finite entries");
  Signal values = b.vectors * y;
  Eigen::VectorXd alpha = restrict_to(b.problem.apply_shifted(values, 2 * b.problem.order()), b.problem.samples());
  return Spline{b.problem, std::move(values), std::move(alpha)};
}

Spline interpolate_signal(const SplineProblem& p, const Signal& f) {
  p.graph().check_signal(f);
  return interpolate(lagrangian_basis(p), restrict_to(f, p.samples()));
}

double variational_residual(const SplineProblem& p, const Signal& values) {
  p.graph().check_signal(values);
  const Eigen::VectorXd r = p.apply_shifted(values, 2 * p.order());
  double worst = 0.0;
  for (Vertex v : p.complement()) worst = std::max(worst, std::abs(r(static_cast<Eigen::Index>(v))));
  return worst;
}

double variational_residual(const Spline& s) { return variational_residual(s.problem, s.values); }

} // namespace graphcub
