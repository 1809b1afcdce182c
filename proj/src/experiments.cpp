#include "graphcub/experiments.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

namespace graphcub {

void ExperimentReport::check_close(std::string name, double measured, double expected, double tol) {
  checks.push_back(Check{std::move(name), std::abs(measured - expected) <= tol, measured, expected,
                         "== (tol " + format_double(tol) + ")"});
}

void ExperimentReport::check_at_most(std::string name, double measured, double threshold) {
  checks.push_back(Check{std::move(name), measured <= threshold, measured, threshold, "<="});
}

void ExperimentReport::check_true(std::string name, bool ok) {
  checks.push_back(Check{std::move(name), ok, ok ? 1.0 : 0.0, 1.0, "=="});
}

bool ExperimentReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

Json ExperimentReport::to_json() const {
  Json j;
  j["config"] = config;
  j["results"] = results;
  Json cs = Json::array();
  for (const auto& c : checks) {
    Json e;
    e["assertion"] = c.name;
    e["pass"] = c.passed;
    e["measured"] = c.measured;
    e["relation"] = c.relation;
    e["threshold"] = c.threshold;
    cs.push_back(std::move(e));
  }
  j["checks"] = std::move(cs);
  j["all_passed"] = all_passed();
  return j;
}

std::string ExperimentReport::plot_data() const {
  std::string out = "series,x,y\n";
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i)
      out += s.name + "," + format_double(s.x[i]) + "," + format_double(s.y[i]) + "\n";
  return out;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("GRAPHCUB_SEED")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
    fail(ErrorKind::InvalidParameter, std::string("GRAPHCUB_SEED is not an integer: ") + env);
  }
  return 42;
}

namespace {

Signal random_band_signal(const BandlimitedSpace& sp, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd c(static_cast<Eigen::Index>(sp.dim()));
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = normal(rng);
  return sp.from_coordinates(c);
}

Json to_json_array(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(x);
  return a;
}

Json base_config(const std::string& name, std::size_t scale, std::uint64_t seed) {
  Json c;
  c["experiment"] = name;
  c["scale"] = scale;
  c["seed"] = seed;
  c["graph"] = "cycle:" + std::to_string(scale);
  return c;
}

} // namespace

ExperimentReport run_ex1(std::size_t scale, std::uint64_t seed) {
  if (scale < 9) fail(ErrorKind::InvalidParameter, "ex1 needs a cycle with at least 9 vertices");
  ExperimentReport rep;
  rep.config = base_config("ex1", scale, seed);
  rep.config["U"] = "remove-every-kth:3";
  std::mt19937_64 rng(seed);

  const Graph g = build_cycle(scale);
  const VertexSet u = parse_vertex_spec("remove-every-kth:3", g);
  const VertexSet s = u.complement(g.vertex_count());
  const double expected = 1.0 / std::sqrt(6.0);

  const double single = poincare_constant(g, VertexSet{s[0]}).lambda;
  rep.results["lambda_single_vertex"] = single;
  rep.check_close("Lambda(single vertex) = 1/sqrt(6)", single, expected, 1e-12);

  const double pair = poincare_constant(g, VertexSet{s[0], s[1]}).lambda;
  rep.results["lambda_disjoint_pair"] = pair;
  rep.check_close("Lambda(two vertices with disjoint closures) = 1/sqrt(6)", pair, expected, 1e-12);

  const LambdaReport all = poincare_constant(g, s);
  rep.results["lambda_removed_set"] = all.lambda;
  rep.results["removed_count"] = s.size();
  rep.check_close("Lambda(all removed vertices) = 1/sqrt(6)", all.lambda, expected, 1e-12);

  const double lambda = all.lambda;
  const double epsilon = 0.01 / lambda;
  const double omega = 1.0 / lambda - epsilon;
  rep.config["epsilon"] = epsilon;
  rep.config["omega"] = omega;

  auto decomposition = std::make_shared<const EigenDecomposition>(eigendecompose(g));
  const BandlimitedSpace band = bandlimited_space(decomposition, omega);
  const double omega_eff = band.band_eigenvalues()(static_cast<Eigen::Index>(band.dim()) - 1);
  std::size_t closed_form = 0;
  for (std::size_t k = 0; k < scale; ++k)
    if (2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(scale)) <=
        omega + kBandTolerance)
      ++closed_form;
  rep.results["band_dim"] = band.dim();
  rep.results["band_distinct_eigenvalues"] = decomposition->count_distinct_at_most(omega);
  rep.results["band_largest_eigenvalue"] = omega_eff;
  rep.check_true("dim E_omega matches closed-form cycle spectrum count", band.dim() == closed_form);

  const double gamma = bandlimited_gamma(lambda, omega_eff, epsilon);
  rep.results["gamma"] = gamma;
  rep.check_at_most("gamma = Lambda (omega + eps) < 1", gamma, std::nextafter(1.0, 0.0));
  rep.check_true("omega < 1/Lambda - eps for the retained band", bandlimited_bound_decays(lambda, omega_eff, epsilon));

  const Signal f = random_band_signal(band, rng);
  const double total = f.sum();
  Series bound_series{"bound_vs_k", {}, {}};
  Series error_series{"error_vs_k", {}, {}};
  Json per_k = Json::array();
  double previous_bound = std::numeric_limits<double>::infinity();
  bool monotone = true;
  for (int k = 1; k <= 512; k *= 2) {
    const double bound = bandlimited_error_bound(f.norm(), s.size(), lambda, omega_eff, epsilon, k);
    monotone = monotone && bound < previous_bound;
    previous_bound = bound;
    bound_series.x.push_back(k);
    bound_series.y.push_back(bound);
    Json e;
    e["k"] = k;
    e["bound"] = bound;
    if (k <= 8) {
      const SplineProblem p(g, u, k, epsilon);
      const CubatureRule rule = spline_cubature_weights(p);
      const double err = std::abs(total - apply_rule(rule, restrict_to(f, u)));
      e["measured_error"] = err;
      error_series.x.push_back(k);
      error_series.y.push_back(err);
      rep.check_at_most("bandlimited spline-rule error <= 2 gamma^k sqrt|S| ||f||, k = " + std::to_string(k), err,
                        bound);
    }
    per_k.push_back(std::move(e));
  }
  rep.results["decay"] = std::move(per_k);
  rep.check_true("bandlimited bound strictly decreases along k = 2^l", monotone);
  rep.series = {bound_series, error_series};
  return rep;
}

ExperimentReport run_ex2(std::size_t scale, std::uint64_t seed) {
  if (scale < 12) fail(ErrorKind::InvalidParameter, "ex2 needs a cycle with at least 12 vertices");
  ExperimentReport rep;
  rep.config = base_config("ex2", scale, seed);
  rep.config["run_lengths"] = "1..10";

  const Graph g = build_cycle(scale);
  Series exact{"lambda_exact_vs_run", {}, {}};
  Series certificate{"lambda_certificate_vs_run", {}, {}};
  Json rows = Json::array();
  for (std::size_t len = 1; len <= 10; ++len) {
    std::vector<Vertex> run(len);
    for (std::size_t i = 0; i < len; ++i) run[i] = i;
    const double lambda = poincare_constant(g, VertexSet(run)).lambda;
    const double sine = std::sin(std::numbers::pi / (2.0 * static_cast<double>(len) + 2.0));
    const double cert = 0.5 / (sine * sine);
    Json r;
    r["run_length"] = len;
    r["lambda_exact"] = lambda;
    r["lambda_certificate"] = cert;
    rows.push_back(std::move(r));
    exact.x.push_back(static_cast<double>(len));
    exact.y.push_back(lambda);
    certificate.x.push_back(static_cast<double>(len));
    certificate.y.push_back(cert);
    rep.check_at_most("Lambda(" + std::to_string(len) + " successive vertices) <= 1/(2 sin^2(pi/(2|S|+2)))",
                      lambda, cert + 1e-9);
  }
  rep.results["runs"] = std::move(rows);
  rep.series = {exact, certificate};
  return rep;
}

ExperimentReport run_ex3(std::size_t scale, std::uint64_t seed) {
  if (scale < 6) fail(ErrorKind::InvalidParameter, "ex3 needs a cycle with at least 6 vertices");
  constexpr double kOmega = 0.45;
  constexpr std::size_t kSteps = 15;
  constexpr int kTrials = 5;
  ExperimentReport rep;
  rep.config = base_config("ex3", scale, seed);
  rep.config["U"] = "remove-every-kth:3";
  rep.config["omega"] = kOmega;
  rep.config["steps"] = kSteps;
  rep.config["trials"] = kTrials;
  std::mt19937_64 rng(seed);

  const Graph g = build_cycle(scale);
  const VertexSet u = parse_vertex_spec("remove-every-kth:3", g);
  const ConvergenceFactor cf = convergence_factor(g, u);
  rep.results["D0"] = cf.max_out;
  rep.results["K0"] = cf.min_in;
  rep.results["delta"] = cf.delta;
  rep.check_close("D_0(U) = 1", static_cast<double>(cf.max_out), 1.0, 0.0);
  rep.check_close("K_0(U) = 2", static_cast<double>(cf.min_in), 2.0, 0.0);
  rep.check_close("delta = D_0/(D_0+K_0) = 1/3", cf.delta, 1.0 / 3.0, 0.0);
  rep.check_at_most("omega < K_0/4", kOmega, std::nextafter(static_cast<double>(cf.min_in) / 4.0, 0.0));

  auto decomposition = std::make_shared<const EigenDecomposition>(eigendecompose(g));
  const BandlimitedSpace band = bandlimited_space(decomposition, kOmega);
  rep.results["band_dim"] = band.dim();
  const FrameSystem fs = frame_system(band, u);
  const FrameBounds emp = empirical_frame_bounds(fs);
  const PlancherelPolyaReport pp = pp_bounds(g, u, kOmega, 1);
  rep.results["A_empirical"] = emp.lower;
  rep.results["B_empirical"] = emp.upper;
  rep.results["A_theory"] = pp.bounds.lower;
  rep.results["B_theory"] = pp.bounds.upper;
  rep.results["gamma_pp"] = pp.gamma;
  rep.check_at_most("A_theory <= A_empirical", pp.bounds.lower, emp.lower);
  rep.check_at_most("B_empirical <= B_theory", emp.upper, pp.bounds.upper);

  const CubatureRule dual = dual_frame_weights(fs);
  rep.check_close("sum of dual-frame weights = |V|", dual.weights.sum(), static_cast<double>(scale),
                  1e-8 * static_cast<double>(scale));

  double worst_exact = 0.0;
  double worst_excess_certified = 0.0;
  double worst_excess_degrees = 0.0;
  double worst_integral_excess = 0.0;
  double worst_mismatch = 0.0;
  std::vector<double> mean_residual(kSteps + 1, 0.0);
  double used_delta = 0.0;
  for (int t = 0; t < kTrials; ++t) {
    const Signal f = random_band_signal(band, rng);
    const Eigen::VectorXd y = fs.sample(f);
    const double total = f.sum();
    worst_exact = std::max(worst_exact, std::abs(apply_rule(dual, y) - total) / (1.0 + std::abs(total)));

    const FrameCubature fc = frame_cubature(fs, y, kSteps);
    used_delta = fc.iteration.delta;
    const IterationCheck certified = verify_iteration(fc.iteration, f);
    const IterationCheck by_degrees = verify_iteration(fc.iteration, f, cf.delta);
    worst_mismatch = std::max(worst_mismatch, by_degrees.max_integral_mismatch);
    for (std::size_t n = 0; n <= kSteps; ++n) {
      mean_residual[n] += by_degrees.residual_norms[n] / f.norm() / kTrials;
      const double floor = 1e-9;
      worst_excess_certified =
          std::max(worst_excess_certified, certified.residual_norms[n] - certified.residual_bounds[n] - floor);
      worst_excess_degrees = std::max(worst_excess_degrees, by_degrees.residual_norms[n] - by_degrees.residual_bounds[n] - floor);
      worst_integral_excess =
          std::max(worst_integral_excess, by_degrees.integral_errors[n] - by_degrees.integral_bounds[n] - floor);
    }
  }
  rep.results["iteration_delta_used"] = used_delta;
  rep.check_at_most("dual-frame rule exact on E_omega (relative error)", worst_exact, 1e-8);
  rep.check_at_most("||f - f_n|| - delta_used^n ||f|| - 1e-9 <= 0", worst_excess_certified, 0.0);
  rep.check_at_most("||f - f_n|| - (1/3)^n ||f|| - 1e-9 <= 0", worst_excess_degrees, 0.0);
  rep.check_at_most("|sum f - I_n| - (1/3)^n sqrt|V| ||f|| - 1e-9 <= 0", worst_integral_excess, 0.0);
  rep.check_at_most("integral recursion matches sum of iterates", worst_mismatch, 1e-10 * static_cast<double>(scale));

  Series residual{"relative_residual_vs_n", {}, {}};
  Series geometric{"one_third_power_vs_n", {}, {}};
  for (std::size_t n = 0; n <= kSteps; ++n) {
    residual.x.push_back(static_cast<double>(n));
    residual.y.push_back(mean_residual[n]);
    geometric.x.push_back(static_cast<double>(n));
    geometric.y.push_back(std::pow(cf.delta, static_cast<double>(n)));
  }
  rep.results["mean_relative_residual"] = to_json_array(mean_residual);
  rep.series = {residual, geometric};
  return rep;
}

std::size_t default_scale(const std::string& name) { return name == "ex2" ? 30 : 1000; }

ExperimentReport run_experiment(const std::string& name, std::size_t scale, std::uint64_t seed) {
  if (name == "ex1") return run_ex1(scale, seed);
  if (name == "ex2") return run_ex2(scale, seed);
  if (name == "ex3") return run_ex3(scale, seed);
  fail(ErrorKind::InvalidParameter, "unknown experiment '" + name + "' (expected ex1, ex2 or ex3)");
}

} // namespace graphcub
