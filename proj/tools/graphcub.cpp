// graphcub: cubature rules, splines and frames on combinatorial graphs.
//
//   graphcub <command> <subcommand> [--flags]
//
// Exit codes: 0 success, 1 usage, 2 bad input, 3 numeric failure or a
// failed experiment check.

#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "graphcub/experiments.hpp"
#include "graphcub/io.hpp"

using namespace graphcub;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct Options {
  std::string graph;
  std::string u_spec;
  std::string s_spec;
  std::string signal;
  std::string out;
  std::string format = "json";
  int k = 1;
  double eps = 0.1;
  double omega = 0.0;
  std::size_t steps = 15;
  std::size_t depth = 1;
  double k_factor = 1.5;
  std::optional<double> big_k;
  std::size_t scale = 0;
  bool plot_data = false;
};

/// --graph accepts a file path or a generator: cycle:N, path:N, grid:RxC.
Graph load_graph(const std::string& spec) {
  if (spec.empty()) fail(ErrorKind::InvalidParameter, "--graph is required");
  auto number = [&](const std::string& s) -> std::size_t {
    try {
      std::size_t used = 0;
      const auto v = std::stoul(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorKind::Parse, "bad graph generator '" + spec + "'");
  };
  if (spec.starts_with("cycle:")) return build_cycle(number(spec.substr(6)));
  if (spec.starts_with("path:")) return build_path(number(spec.substr(5)));
  if (spec.starts_with("grid:")) {
    const auto body = spec.substr(5);
    const auto x = body.find('x');
    if (x == std::string::npos) fail(ErrorKind::Parse, "grid generator must be grid:RxC");
    return build_grid(number(body.substr(0, x)), number(body.substr(x + 1)));
  }
  return from_edge_list(read_file(spec));
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty())
    std::cout << text;
  else
    write_file(o.out, text);
}

Signal load_or_random_signal(const Options& o, const Graph& g, const BandlimitedSpace* band) {
  if (!o.signal.empty()) return signal_from_csv(read_file(o.signal), g);
  std::mt19937_64 rng(default_seed());
  std::normal_distribution<double> normal;
  if (band) {
    Eigen::VectorXd c(static_cast<Eigen::Index>(band->dim()));
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = normal(rng);
    return band->from_coordinates(c);
  }
  Signal f(static_cast<Eigen::Index>(g.vertex_count()));
  for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = normal(rng);
  return f;
}

Json graph_summary(const Graph& g) {
  Json j;
  j["vertices"] = g.vertex_count();
  j["edges"] = g.edge_count();
  j["max_degree"] = g.max_degree();
  return j;
}

// --- commands --------------------------------------------------------------

int cmd_graph(const std::string& sub, const std::vector<std::size_t>& sizes, const Options& o) {
  auto need = [&](std::size_t count) {
    if (sizes.size() != count)
      fail(ErrorKind::InvalidParameter, "graph " + sub + " expects " + std::to_string(count) + " size argument(s)");
  };
  if (sub == "load") {
    emit(o, dump_json(graph_summary(from_edge_list(read_file(o.graph)))));
    return 0;
  }
  Graph g = [&] {
    if (sub == "gen-cycle") return need(1), build_cycle(sizes[0]);
    if (sub == "gen-path") return need(1), build_path(sizes[0]);
    need(2);
    return build_grid(sizes[0], sizes[1]);
  }();
  emit(o, to_edge_list(g));
  return 0;
}

int cmd_spectrum(const Options& o) {
  const Graph g = load_graph(o.graph);
  auto d = std::make_shared<const EigenDecomposition>(eigendecompose(g));
  if (o.format == "csv") {
    emit(o, spectrum_to_csv(*d));
  } else {
    emit(o, dump_json(band_report(bandlimited_space(d, o.omega))));
  }
  return 0;
}

int cmd_spline(const std::string& sub, const Options& o) {
  const Graph g = load_graph(o.graph);
  const SplineProblem p(g, parse_vertex_spec(o.u_spec, g), o.k, o.eps);
  const LagrangianBasis basis = lagrangian_basis(p);
  if (sub == "basis") {
    emit(o, dump_json(basis_to_json(g, basis)));
    return 0;
  }
  const Signal f = load_or_random_signal(o, g, nullptr);
  const Spline s = interpolate(basis, restrict_to(f, p.samples()));
  if (o.format == "json") {
    Json j;
    j["U"] = labels_of(g, p.samples());
    j["k"] = o.k;
    j["epsilon"] = o.eps;
    j["variational_residual"] = variational_residual(s);
    Json values = Json::array();
    for (Eigen::Index i = 0; i < s.values.size(); ++i) values.push_back(s.values(i));
    j["values"] = std::move(values);
    emit(o, dump_json(j));
  } else {
    emit(o, signal_to_csv(g, s.values));
  }
  return 0;
}

int cmd_cubature(const std::string& sub, const Options& o) {
  const Graph g = load_graph(o.graph);
  const VertexSet u = parse_vertex_spec(o.u_spec, g);
  if (sub == "weights") {
    const SplineProblem p(g, u, o.k, o.eps);
    emit(o, dump_json(rule_to_json(g, spline_cubature_weights(p))));
    return 0;
  }
  const VertexSet s = u.complement(g.vertex_count());
  if (sub == "bound") {
    if (!is_dyadic(o.k)) fail(ErrorKind::NonDyadic, "--k must be a power of two for error bounds");
    const double lambda = poincare_constant(g, s).lambda;
    const Signal f = load_or_random_signal(o, g, nullptr);
    std::string csv = "k,measured_error,bound\n";
    for (int k = 1; k <= o.k; k *= 2) {
      const SplineProblem p(g, u, k, o.eps);
      const double err = std::abs(f.sum() - apply_rule(spline_cubature_weights(p), restrict_to(f, u)));
      const double bound = general_error_bound(g, f, s.size(), lambda, k, o.eps);
      csv += std::to_string(k) + "," + format_double(err) + "," + format_double(bound) + "\n";
    }
    emit(o, csv);
    return 0;
  }
  // qset
  const SplineProblem p(g, u, o.k, o.eps);
  const Signal f = load_or_random_signal(o, g, nullptr);
  const Eigen::VectorXd y = restrict_to(f, u);
  const double min_energy = p.apply_shifted(interpolate_signal(p, f).values, p.order()).norm();
  const double big_k = o.big_k ? *o.big_k : o.k_factor * min_energy;
  const QSetInterval q = q_set_interval(p, y, big_k);
  Json j;
  j["K"] = big_k;
  j["a"] = q.a;
  j["b"] = q.b;
  j["midpoint"] = q.midpoint;
  j["rule_value"] = q.rule_value;
  j["midpoint_matches_rule"] = q.midpoint_matches_rule;
  j["min_energy"] = q.min_energy;
  j["energy_diameter"] = q.energy_diameter;
  if (is_dyadic(o.k) && !s.empty()) {
    const double lambda = poincare_constant(g, s).lambda;
    j["lambda"] = lambda;
    j["deviation_bound"] = q_set_deviation_bound(p, y, big_k, lambda);
  }
  emit(o, dump_json(j));
  return 0;
}

int cmd_lambda(const Options& o) {
  const Graph g = load_graph(o.graph);
  emit(o, dump_json(lambda_to_json(g, poincare_constant(g, parse_vertex_spec(o.s_spec, g)))));
  return 0;
}

int cmd_frames(const std::string& sub, const Options& o) {
  const Graph g = load_graph(o.graph);
  const VertexSet u = parse_vertex_spec(o.u_spec, g);
  auto d = std::make_shared<const EigenDecomposition>(eigendecompose(g));
  const BandlimitedSpace band = bandlimited_space(d, o.omega);

  if (sub == "bounds") {
    const FrameSystem fs = frame_system(band, u);
    const FrameBounds emp = empirical_frame_bounds(fs);
    Json j;
    j["omega"] = o.omega;
    j["dim"] = band.dim();
    j["empirical"] = {{"A", emp.lower}, {"B", emp.upper}};
    const PlancherelPolyaReport pp = pp_bounds(g, u, o.omega, o.depth);
    Json t;
    t["A"] = pp.bounds.lower;
    t["B"] = pp.bounds.upper;
    t["source"] = to_string(pp.bounds.source);
    t["n"] = pp.steps;
    t["gamma"] = pp.gamma;
    t["omega_threshold"] = pp.omega_threshold;
    t["D"] = pp.max_out;
    t["K"] = pp.min_in;
    j["theory"] = std::move(t);
    emit(o, dump_json(j));
    return 0;
  }
  if (sub == "weights") {
    emit(o, dump_json(rule_to_json(g, dual_frame_weights(frame_system(band, u)))));
    return 0;
  }

  // iterate: the frame algorithm works with U whose closure is V
  const ConvergenceFactor cf = convergence_factor(g, u);
  const FrameSystem fs = frame_system(band, u);
  const Signal f = load_or_random_signal(o, g, &band);
  if (!band.contains(f, 1e-8)) fail(ErrorKind::InvalidParameter, "signal is not in E_omega");
  const FrameCubature fc = frame_cubature(fs, fs.sample(f), o.steps);
  const IterationCheck check = verify_iteration(fc.iteration, f);

  if (o.plot_data) {
    std::string csv = "series,x,y\n";
    for (std::size_t n = 0; n <= o.steps; ++n)
      csv += "residual_vs_n," + std::to_string(n) + "," + format_double(check.residual_norms[n]) + "\n";
    emit(o, csv);
    return 0;
  }
  if (o.format == "json") {
    Json j;
    j["D0"] = cf.max_out;
    j["K0"] = cf.min_in;
    j["delta_degrees"] = cf.delta;
    j["delta_used"] = fc.iteration.delta;
    j["relaxation"] = fc.iteration.relaxation;
    j["rule"] = rule_to_json(g, fc.rule);
    j["geometric_ok"] = check.geometric_ok;
    emit(o, dump_json(j));
    return 0;
  }
  std::string csv = "n,residual_norm,integral_estimate,bound\n";
  for (std::size_t n = 0; n <= o.steps; ++n)
    csv += std::to_string(n) + "," + format_double(check.residual_norms[n]) + "," +
           format_double(fc.integrals[n]) + "," + format_double(check.integral_bounds[n]) + "\n";
  emit(o, csv);
  return 0;
}

int cmd_experiment(const std::string& name, const Options& o) {
  const std::size_t scale = o.scale ? o.scale : default_scale(name);
  const ExperimentReport rep = run_experiment(name, scale, default_seed());
  emit(o, o.plot_data ? rep.plot_data() : dump_json(rep.to_json()));
  return rep.all_passed() ? 0 : kExitNumeric;
}

void add_common(CLI::App* app, Options& o, bool needs_u) {
  app->add_option("--graph", o.graph, "edge-list file or generator (cycle:N, path:N, grid:RxC)")->required();
  if (needs_u) app->add_option("--u", o.u_spec, "sample set spec")->required();
  app->add_option("--out", o.out, "write output to FILE instead of stdout");
  app->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_flag("--plot-data", o.plot_data, "emit x,y series for plotting");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubature formulas, splines and frames on combinatorial graphs", "graphcub"};
  app.require_subcommand(1);
  Options o;
  std::string sub;
  std::vector<std::size_t> sizes;

  auto* graph = app.add_subcommand("graph", "generate or load graphs");
  graph->require_subcommand(1);
  for (const char* name : {"gen-cycle", "gen-path", "gen-grid"}) {
    auto* s = graph->add_subcommand(name, "generate a graph as an edge list");
    s->add_option("sizes", sizes, "size(s)")->required();
    s->add_option("--out", o.out, "output file");
    s->callback([&sub, name] { sub = name; });
  }
  auto* load = graph->add_subcommand("load", "validate an edge-list file");
  load->add_option("file", o.graph)->required();
  load->add_option("--out", o.out, "output file");
  load->callback([&sub] { sub = "load"; });

  auto* spectrum = app.add_subcommand("spectrum", "Laplacian spectrum (csv) or band report (json)");
  add_common(spectrum, o, false);
  spectrum->add_option("--omega", o.omega, "band cutoff");

  auto* spline = app.add_subcommand("spline", "variational splines");
  spline->require_subcommand(1);
  for (auto [name, about] : {std::pair{"interpolate", "interpolate a signal from its values on U"},
                              std::pair{"basis", "Lagrangian basis"}}) {
    auto* s = spline->add_subcommand(name, about);
    add_common(s, o, true);
    s->add_option("--k", o.k, "spline order");
    s->add_option("--eps", o.eps, "regularizer");
    s->add_option("--signal", o.signal, "CSV signal (vertex,value)");
    s->callback([&sub, name] { sub = name; });
  }

  auto* cubature = app.add_subcommand("cubature", "spline cubature rules and bounds");
  cubature->require_subcommand(1);
  for (auto [name, about] : {std::pair{"weights", "spline cubature weights theta_u"},
                              std::pair{"bound", "measured error against the error bound for k = 1, 2, 4, ..."},
                              std::pair{"qset", "range of the integral over signals with bounded energy"}}) {
    auto* s = cubature->add_subcommand(name, about);
    add_common(s, o, true);
    s->add_option("--k", o.k, "spline order (power of two for bounds)");
    s->add_option("--eps", o.eps, "regularizer");
    s->add_option("--signal", o.signal, "CSV signal (vertex,value)");
    s->add_option("--k-factor", o.k_factor, "K as a multiple of the minimal energy (qset)");
    s->add_option("--K", o.big_k, "energy radius K (qset); overrides --k-factor");
    s->callback([&sub, name] { sub = name; });
  }

  auto* lambda = app.add_subcommand("lambda", "exact Poincare constant of a vertex set");
  add_common(lambda, o, false);
  lambda->add_option("--s", o.s_spec, "vertex set spec")->required();

  auto* frames = app.add_subcommand("frames", "bandlimited frames and the frame algorithm");
  frames->require_subcommand(1);
  for (auto [name, about] : {std::pair{"bounds", "empirical and Plancherel-Polya frame bounds"},
                              std::pair{"weights", "exact dual-frame cubature weights"},
                              std::pair{"iterate", "frame algorithm trace and integral estimates"}}) {
    auto* s = frames->add_subcommand(name, about);
    add_common(s, o, true);
    s->add_option("--omega", o.omega, "band cutoff")->required();
    s->add_option("--steps", o.steps, "iteration steps");
    s->add_option("--n", o.depth, "closure depth for theoretical bounds");
    s->add_option("--signal", o.signal, "CSV signal in E_omega");
    s->callback([&sub, name] { sub = name; });
  }
  frames->get_subcommand("iterate")->get_option("--format")->default_str("csv");

  auto* experiment = app.add_subcommand("experiment", "run ex1, ex2 or ex3 with embedded checks");
  experiment->add_option("name", sub, "ex1 | ex2 | ex3")->required()->check(CLI::IsMember({"ex1", "ex2", "ex3"}));
  experiment->add_option("--scale", o.scale, "cycle size");
  experiment->add_option("--out", o.out, "output file");
  experiment->add_flag("--plot-data", o.plot_data, "emit x,y series for plotting");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (frames->parsed() && frames->get_subcommand("iterate")->parsed() &&
        frames->get_subcommand("iterate")->count("--format") == 0)
      o.format = "csv";
    if (graph->parsed()) return cmd_graph(sub, sizes, o);
    if (spectrum->parsed()) return cmd_spectrum(o);
    if (spline->parsed()) return cmd_spline(sub, o);
    if (cubature->parsed()) return cmd_cubature(sub, o);
    if (lambda->parsed()) return cmd_lambda(o);
    if (frames->parsed()) return cmd_frames(sub, o);
    if (experiment->parsed()) return cmd_experiment(sub, o);
  } catch (const Error& e) {
    std::cerr << "graphcub: " << e.what() << "\n";
    return e.is_numeric() ? kExitNumeric : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "graphcub: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
