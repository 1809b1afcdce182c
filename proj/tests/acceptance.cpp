// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are fixed
// here and nowhere else. Exit status is 0 only if every criterion passes.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "graphcub/cubature.hpp"
#include "graphcub/frames.hpp"
#include "graphcub/io.hpp"
#include "graphcub/splines.hpp"
#include "oracles.hpp"

using namespace graphcub;

namespace {

constexpr double kSpectrumTol = 1e-8;
constexpr double kLambdaTol = 1e-12;
constexpr double kRunBoundSlack = 1e-9;
constexpr double kExactnessTol = 1e-8;
constexpr double kOracleTol = 1e-8;
constexpr double kDecaySlack = 0.05;
constexpr double kDecayFloor = 1e-12;  // relative round-off floor, times (1 + |sum f|)
constexpr double kMidpointTol = 1e-8;
constexpr double kContainTol = 1e-8;
constexpr double kEndpointFraction = 0.05;
constexpr int kMonteCarloPoints = 100000;
constexpr double kDualTol = 1e-8;
constexpr double kIterSlack = 1e-9;
constexpr double kBernsteinTol = 1e-9;

constexpr double kSpectrumSeconds = 60.0;
constexpr double kExactnessSeconds = 30.0;
constexpr double kIterationSeconds = 10.0;
constexpr double kExperimentSeconds = 180.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Signal random_member(const BandlimitedSpace& sp, std::mt19937_64& rng) {
  return sp.from_coordinates(oracle::gaussian(static_cast<Eigen::Index>(sp.dim()), rng));
}

BandlimitedSpace band_of(const Graph& g, double omega) {
  return bandlimited_space(std::make_shared<const EigenDecomposition>(eigendecompose(g)), omega);
}

// 1 -------------------------------------------------------------------------
Outcome cycle_spectrum() {
  const auto t0 = Clock::now();
  const EigenDecomposition d = eigendecompose(build_cycle(1000));
  const double err = (d.eigenvalues() - oracle::cycle_spectrum(1000)).cwiseAbs().maxCoeff();
  const double secs = seconds_since(t0);
  return {err <= kSpectrumTol && secs <= kSpectrumSeconds,
          "C_1000 max|err| = " + fmt(err) + " (tol " + fmt(kSpectrumTol) + "), " + fmt(secs) + " s"};
}

// 2 -------------------------------------------------------------------------
Outcome singleton_lambda() {
  double worst = 0.0;
  const Graph c = build_cycle(30);
  for (Vertex v : {0u, 7u, 29u})
    worst = std::max(worst, std::abs(poincare_constant(c, VertexSet{v}).lambda - 1.0 / std::sqrt(6.0)));
  const double cycle_err = worst;

  std::mt19937_64 rng(2);
  std::vector<Graph> graphs{build_grid(5, 5), build_star(7), build_complete(6), build_path(9)};
  for (int i = 0; i < 5; ++i) graphs.push_back(oracle::to_graph(14, oracle::random_connected_edges(14, 12, rng)));
  for (const Graph& g : graphs)
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      const double d = static_cast<double>(g.degree(v));
      worst = std::max(worst, std::abs(poincare_constant(g, VertexSet{v}).lambda - 1.0 / std::sqrt(d * d + d)));
    }
  return {worst <= kLambdaTol, "cycle |err| = " + fmt(cycle_err) + ", all graphs max|err| = " + fmt(worst) +
                                   " (tol " + fmt(kLambdaTol) + ")"};
}

// 3 -------------------------------------------------------------------------
Outcome run_bound() {
  const Graph g = build_cycle(30);
  double worst = -1e300;
  for (std::size_t len = 1; len <= 10; ++len) {
    std::vector<Vertex> s(len);
    std::iota(s.begin(), s.end(), 0);
    const double lam = poincare_constant(g, VertexSet(s)).lambda;
    const double sn = std::sin(std::numbers::pi / (2.0 * static_cast<double>(len) + 2.0));
    worst = std::max(worst, lam - 0.5 / (sn * sn));
  }
  return {worst <= kRunBoundSlack, "max(Lambda - bound) over |S| = 1..10 = " + fmt(worst)};
}

// 4 -------------------------------------------------------------------------
Outcome spline_exactness() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(4);
  double worst = 0.0;
  std::string failure;
  for (const Graph& g : {build_cycle(20), build_grid(4, 5)}) {
    const VertexSet u = parse_vertex_spec("every-other", g);
    for (int k = 1; k <= 4; ++k)
      for (double eps : {0.01, 0.1, 1.0}) {
        try {
          const SplineProblem p(g, u, k, eps);
          const LagrangianBasis b = lagrangian_basis(p);
          const CubatureRule rule = spline_cubature_weights(b);
          for (int t = 0; t < 50; ++t) {
            const Eigen::VectorXd y = oracle::gaussian(static_cast<Eigen::Index>(u.size()), rng);
            const double integral = interpolate(b, y).values.sum();
            worst = std::max(worst, std::abs(integral - apply_rule(rule, y)) / (1.0 + std::abs(integral)));
          }
        } catch (const Error& e) {
          failure = e.what();
          worst = std::numeric_limits<double>::infinity();
        }
      }
  }
  const double secs = seconds_since(t0);
  return {worst <= kExactnessTol && secs <= kExactnessSeconds,
          "max relative mismatch = " + fmt(worst) + " (tol " + fmt(kExactnessTol) + "), " + fmt(secs) + " s" +
              (failure.empty() ? "" : "; " + failure)};
}

// 5 -------------------------------------------------------------------------
Outcome spline_oracle() {
  std::mt19937_64 rng(5);
  struct Case {
    std::size_t n;
    oracle::Edges edges;
  };
  std::vector<Case> cases{{12, oracle::cycle_edges(12)}, {12, oracle::grid_edges(3, 4)}, {9, oracle::grid_edges(3, 3)}};
  for (std::size_t n = 4; n <= 12; ++n)
    for (int rep = 0; rep < 4; ++rep) cases.push_back({n, oracle::random_connected_edges(n, static_cast<std::size_t>(rep) * 2, rng)});

  double worst = 0.0;
  std::size_t count = 0;
  for (const Case& c : cases) {
    const Graph g(c.n, c.edges);
    const Eigen::MatrixXd l = oracle::laplacian(c.n, c.edges);
    for (int k : {1, 2, 3})
      for (double eps : {0.1, 1.0}) {
        std::vector<std::size_t> all(c.n);
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<std::size_t> u(all.begin(), all.begin() + static_cast<long>(1 + rng() % (c.n - 1)));
        std::sort(u.begin(), u.end());
        const Eigen::VectorXd y = oracle::gaussian(static_cast<Eigen::Index>(u.size()), rng);
        const Spline s = interpolate(lagrangian_basis(SplineProblem(g, VertexSet(u), k, eps)), y);
        worst = std::max(worst, (s.values - oracle::kkt_spline(l, u, y, k, eps)).cwiseAbs().maxCoeff());
        ++count;
      }
  }
  return {worst <= kOracleTol, std::to_string(count) + " problems on graphs with |V| <= 12, max|err| = " + fmt(worst) +
                                   " (tol " + fmt(kOracleTol) + ")"};
}

// 6 -------------------------------------------------------------------------
Outcome general_bound_and_decay() {
  std::mt19937_64 rng(6);
  const Graph g = build_cycle(30);
  const VertexSet u = parse_vertex_spec("remove-every-kth:3", g);
  const VertexSet s = u.complement(30);
  const double lambda = poincare_constant(g, s).lambda;
  const double eps = 0.1;
  const std::vector<int> ks{1, 2, 4, 8};
  std::vector<CubatureRule> rules;
  for (int k : ks) rules.push_back(spline_cubature_weights(SplineProblem(g, u, k, eps)));

  // bound on arbitrary signals
  double worst_ratio = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Eigen::VectorXd f = oracle::gaussian(30, rng);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const double err = std::abs(f.sum() - apply_rule(rules[i], restrict_to(f, u)));
      worst_ratio = std::max(worst_ratio, err / general_error_bound(g, f, s.size(), lambda, ks[i], eps));
    }
  }

  // decay on the band, omega below 1/Lambda - eps
  const double omega = 1.0;
  const double gamma = bandlimited_gamma(lambda, omega, eps);
  const BandlimitedSpace band = band_of(g, omega);
  double worst_excess = -1e300;
  for (int t = 0; t < 100; ++t) {
    const Signal f = random_member(band, rng);
    const double floor = kDecayFloor * (1.0 + std::abs(f.sum()));
    double prev = std::abs(f.sum() - apply_rule(rules[0], restrict_to(f, u)));
    for (std::size_t i = 1; i < ks.size(); ++i) {
      const double err = std::abs(f.sum() - apply_rule(rules[i], restrict_to(f, u)));
      worst_excess = std::max(worst_excess, err - ((gamma * gamma + kDecaySlack) * prev + floor));
      prev = err;
    }
  }
  const bool ok = worst_ratio <= 1.0 && worst_excess <= 0.0 && bandlimited_bound_decays(lambda, omega, eps);
  return {ok, "max error/bound = " + fmt(worst_ratio) + "; gamma = " + fmt(gamma) +
                  ", max decay excess = " + fmt(worst_excess)};
}

// 7 -------------------------------------------------------------------------
Outcome qset_midpoint() {
  std::mt19937_64 rng(7);
  const Graph g = build_cycle(12);
  const VertexSet u = parse_vertex_spec("every-other", g);
  const VertexSet s = u.complement(12);
  const oracle::Edges edges = oracle::cycle_edges(12);
  const Eigen::MatrixXd l = oracle::laplacian(12, edges);
  double worst_mid = 0.0, worst_exit = 0.0, worst_gap = 0.0;
  for (int k : {1, 2}) {
    const double eps = 0.1;
    const SplineProblem p(g, u, k, eps);
    const Eigen::VectorXd y = oracle::gaussian(6, rng);
    const Eigen::VectorXd spline = oracle::kkt_spline(l, u.members(), y, k, eps);
    const Eigen::MatrixXd t = oracle::matrix_power(eps * Eigen::MatrixXd::Identity(12, 12) + l, k);
    const double e0 = (t * spline).norm();
    const double big_k = 1.5 * e0;
    const QSetInterval q = q_set_interval(p, y, big_k);
    worst_mid = std::max(worst_mid, std::abs(q.midpoint - apply_rule(spline_cubature_weights(p), y)));

    // uniform samples of the ellipsoid {h on S : h' B h <= K^2 - e0^2}, B = (T'T)_SS
    const Eigen::MatrixXd tt = t.transpose() * t;
    Eigen::MatrixXd b(6, 6);
    for (Eigen::Index i = 0; i < 6; ++i)
      for (Eigen::Index j = 0; j < 6; ++j)
        b(i, j) = tt(static_cast<Eigen::Index>(s[static_cast<std::size_t>(i)]),
                     static_cast<Eigen::Index>(s[static_cast<std::size_t>(j)]));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);
    const Eigen::MatrixXd inv_sqrt = eig.eigenvectors() * eig.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
                                     eig.eigenvectors().transpose();
    const double radius = std::sqrt(big_k * big_k - e0 * e0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < kMonteCarloPoints; ++i) {
      Eigen::VectorXd z = oracle::gaussian(6, rng);
      z *= std::pow(unif(rng), 1.0 / 6.0) / z.norm();
      const double value = spline.sum() + (radius * inv_sqrt * z).sum();
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
    worst_exit = std::max({worst_exit, q.a - lo, hi - q.b});
    const double width = q.b - q.a;
    worst_gap = std::max({worst_gap, (lo - q.a) / width, (q.b - hi) / width});
  }
  const bool ok = worst_mid <= kMidpointTol && worst_exit <= kContainTol && worst_gap <= kEndpointFraction;
  return {ok, "max|midpoint - rule| = " + fmt(worst_mid) + ", max exit = " + fmt(worst_exit) +
                  ", max endpoint gap = " + fmt(100.0 * worst_gap) + "% of b - a"};
}

// 8 -------------------------------------------------------------------------
Outcome dual_frame_exactness() {
  std::mt19937_64 rng(8);
  const Graph g = build_cycle(30);
  const BandlimitedSpace band = band_of(g, 0.45);
  const FrameSystem fs = frame_system(band, parse_vertex_spec("remove-every-kth:3", g));
  const CubatureRule rule = dual_frame_weights(fs);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const Signal f = random_member(band, rng);
    worst = std::max(worst, std::abs(apply_rule(rule, fs.sample(f)) - f.sum()) / std::max(1.0, std::abs(f.sum())));
  }
  const double sum_err = std::abs(rule.weights.sum() - 30.0);
  return {worst <= kDualTol && sum_err <= kDualTol,
          "dim E = " + std::to_string(band.dim()) + ", max relative error = " + fmt(worst) +
              ", |sum sigma - 30| = " + fmt(sum_err)};
}

// 9 -------------------------------------------------------------------------
Outcome frame_algorithm() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(9);
  const Graph g = build_cycle(30);
  const VertexSet u = parse_vertex_spec("remove-every-kth:3", g);
  const ConvergenceFactor cf = convergence_factor(g, u);
  const BandlimitedSpace band = band_of(g, 0.45);
  const FrameSystem fs = frame_system(band, u);
  const double delta = 1.0 / 3.0;
  double worst_res = -1e300, worst_int = -1e300;
  for (int t = 0; t < 20; ++t) {
    const Signal f = random_member(band, rng);
    const FrameCubature fc = frame_cubature(fs, fs.sample(f), 15);
    for (std::size_t n = 1; n <= 15; ++n) {
      const double dn = std::pow(delta, static_cast<double>(n));
      const double res = (f - fc.iteration.iterates[n]).norm();
      worst_res = std::max(worst_res, res - (dn * f.norm() + kIterSlack));
      const double ierr = std::abs(f.sum() - fc.integrals[n]);
      worst_int = std::max(worst_int, ierr - (dn * std::sqrt(30.0) * f.norm() + kIterSlack));
    }
  }
  const double secs = seconds_since(t0);
  const bool ok = cf.max_out == 1 && cf.min_in == 2 && cf.delta == delta && worst_res <= 0.0 && worst_int <= 0.0 &&
                  secs <= kIterationSeconds;
  return {ok, "D0 = " + std::to_string(cf.max_out) + ", K0 = " + std::to_string(cf.min_in) + ", delta = " +
                  fmt(cf.delta) + "; max residual excess = " + fmt(worst_res) + ", max integral excess = " +
                  fmt(worst_int) + ", " + fmt(secs) + " s"};
}

// 10 ------------------------------------------------------------------------
Outcome plancherel_polya() {
  std::mt19937_64 rng(10);
  struct Config {
    Graph g;
    std::string u;
    double omega;
  };
  const std::vector<Config> configs{{build_cycle(30), "remove-every-kth:3", 0.45},
                                    {build_cycle(300), "remove-every-kth:3", 0.45},
                                    {build_cycle(60), "every-other", 0.2},
                                    {build_path(21), "every-other", 0.2},
                                    {build_grid(6, 6), "every-other", 0.15}};
  bool ok = true;
  std::ostringstream detail;
  for (const Config& c : configs) {
    const VertexSet u = parse_vertex_spec(c.u, c.g);
    const PlancherelPolyaReport pp = pp_bounds(c.g, u, c.omega, 1);
    const BandlimitedSpace band = band_of(c.g, c.omega);
    const FrameSystem fs = frame_system(band, u);
    const FrameBounds emp = empirical_frame_bounds(fs);
    bool inequality = true;
    for (int t = 0; t < 200; ++t) {
      const Signal f = random_member(band, rng);
      const double e = fs.sample(f).squaredNorm(), nf = f.squaredNorm();
      inequality = inequality && pp.bounds.lower * nf <= e && e <= pp.bounds.upper * nf;
    }
    const bool here = pp.bounds.lower <= emp.lower && emp.upper <= pp.bounds.upper && inequality;
    ok = ok && here;
    detail << (detail.tellp() ? "; " : "") << "|V|=" << c.g.vertex_count() << " A " << fmt(pp.bounds.lower)
           << "<=" << fmt(emp.lower) << " B " << fmt(emp.upper) << "<=" << fmt(pp.bounds.upper);
  }
  return {ok, detail.str()};
}

// 11 ------------------------------------------------------------------------
Outcome bernstein() {
  std::mt19937_64 rng(11);
  struct Config {
    Graph g;
    double omega;
  };
  const std::vector<Config> configs{{build_cycle(30), 0.45}, {build_cycle(100), 1.0}, {build_path(25), 0.6},
                                    {build_grid(5, 6), 1.5}, {build_complete(8), 7.0}};
  double worst_in = 0.0, weakest_out = 1e300;
  for (const Config& c : configs) {
    auto d = std::make_shared<const EigenDecomposition>(eigendecompose(c.g));
    const BandlimitedSpace band = bandlimited_space(d, c.omega);
    for (int t = 0; t < 50; ++t)
      worst_in = std::max(worst_in, bernstein_margin(c.g, random_member(band, rng), c.omega, 4) - 1.0);
    // the first eigenvector past the cutoff; the complete graph's band is everything
    if (band.dim() < c.g.vertex_count()) {
      const Signal out = d->eigenvectors().col(static_cast<Eigen::Index>(band.dim()));
      weakest_out = std::min(weakest_out, bernstein_margin(c.g, out, c.omega, 4));
    }
  }
  const bool ok = worst_in <= kBernsteinTol && weakest_out > 1.0 + kBernsteinTol;
  return {ok, "max in-band margin - 1 = " + fmt(worst_in) + ", min out-of-band margin = " + fmt(weakest_out)};
}

// 12 ------------------------------------------------------------------------
Outcome cli_experiments() {
  const auto t0 = Clock::now();
  const auto dir = std::filesystem::temp_directory_path() / "graphcub_acceptance";
  std::filesystem::create_directories(dir);
  std::ostringstream detail;
  bool ok = true;
  for (const char* name : {"ex1", "ex2", "ex3"}) {
    const auto out = dir / (std::string(name) + ".json");
    const std::string cmd = std::string(GRAPHCUB_CLI) + " experiment " + name + " > " + out.string();
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    bool passed = false;
    try {
      passed = Json::parse(read_file(out))["all_passed"].get<bool>();
    } catch (const std::exception&) {
    }
    ok = ok && code == 0 && passed;
    detail << name << " exit " << code << (passed ? " all checks pass" : " checks FAILED") << "; ";
  }
  const double secs = seconds_since(t0);
  ok = ok && secs <= kExperimentSeconds;
  detail << fmt(secs) << " s total";
  return {ok, detail.str()};
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"cycle spectrum", cycle_spectrum},
      {"singleton Poincare constant", singleton_lambda},
      {"successive-run Poincare bound", run_bound},
      {"spline rule exactness", spline_exactness},
      {"brute-force spline oracle", spline_oracle},
      {"general error bound and bandlimited decay", general_bound_and_decay},
      {"Q-set midpoint and Monte-Carlo range", qset_midpoint},
      {"exact dual-frame cubature", dual_frame_exactness},
      {"frame algorithm rates", frame_algorithm},
      {"Plancherel-Polya validity", plancherel_polya},
      {"Bernstein characterization", bernstein},
      {"CLI experiments", cli_experiments},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %2zu  %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
