#include <doctest.h>

#include "graphcub/cubature.hpp"
#include "graphcub/io.hpp"
#include "oracles.hpp"

using namespace graphcub;

TEST_CASE("Lambda agrees with the Gram-eigenvalue oracle") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 6 + static_cast<std::size_t>(trial % 10);
    const auto edges = oracle::random_connected_edges(n, 4, rng);
    const Graph g(n, edges);
    std::vector<std::size_t> s;
    for (std::size_t v = 0; v < n; ++v)
      if (std::bernoulli_distribution(0.4)(rng)) s.push_back(v);
    if (s.empty() || s.size() == n) continue;
    const double ref = oracle::poincare_lambda(oracle::laplacian(n, edges), s);
    CHECK(poincare_constant(g, VertexSet(s)).lambda == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("Lambda of a single vertex is 1/sqrt(d^2 + d)") {
  const Graph g = build_grid(4, 4);
  for (Vertex v : {0u, 1u, 5u}) {
    const double d = static_cast<double>(g.degree(v));
    CHECK(std::abs(poincare_constant(g, VertexSet{v}).lambda - 1.0 / std::sqrt(d * d + d)) <= 1e-12);
  }
  CHECK_THROWS_AS(poincare_constant(g, VertexSet{}), Error);
  CHECK_THROWS_AS(poincare_constant(g, all_vertices(16)), Error);
}

TEST_CASE("Lambda is monotone under inclusion") {
  const Graph g = build_cycle(30);
  double prev = 0.0;
  for (std::size_t len = 1; len <= 10; ++len) {
    std::vector<Vertex> s(len);
    std::iota(s.begin(), s.end(), 0);
    const double lam = poincare_constant(g, VertexSet(s)).lambda;
    CHECK(lam >= prev - 1e-12);
    prev = lam;
  }
}

TEST_CASE("the spline rule integrates the spline exactly") {
  std::mt19937_64 rng(17);
  const Graph g = build_grid(4, 5);
  const SplineProblem p(g, parse_vertex_spec("every-other", g), 2, 0.1);
  const LagrangianBasis b = lagrangian_basis(p);
  const CubatureRule rule = spline_cubature_weights(b);
  CHECK(rule.kind == RuleKind::Spline);
  CHECK(rule.nodes == p.samples());
  for (int t = 0; t < 10; ++t) {
    const Eigen::VectorXd y = oracle::gaussian(10, rng);
    const Spline s = interpolate(b, y);
    CHECK(apply_rule(rule, y) == doctest::Approx(s.values.sum()).epsilon(1e-10));
  }
}

TEST_CASE("spline rule error obeys the general bound") {
  std::mt19937_64 rng(19);
  const Graph g = build_cycle(30);
  const VertexSet u = parse_vertex_spec("remove-every-kth:3", g);
  const VertexSet s = u.complement(30);
  const double lambda = poincare_constant(g, s).lambda;
  for (int k : {1, 2, 4}) {
    const SplineProblem p(g, u, k, 0.1);
    const CubatureRule rule = spline_cubature_weights(p);
    for (int t = 0; t < 10; ++t) {
      const Eigen::VectorXd f = oracle::gaussian(30, rng);
      const double err = std::abs(f.sum() - apply_rule(rule, restrict_to(f, u)));
      CHECK(err <= general_error_bound(g, f, s.size(), lambda, k, 0.1));
    }
  }
  CHECK_THROWS_AS(general_error_bound(g, Eigen::VectorXd::Ones(30), s.size(), lambda, 3, 0.1), Error);
  CHECK(is_dyadic(1));
  CHECK(is_dyadic(64));
  CHECK_FALSE(is_dyadic(6));
  CHECK_FALSE(is_dyadic(0));
}

TEST_CASE("bandlimited gamma and decay predicate") {
  CHECK(bandlimited_gamma(0.5, 1.0, 0.1) == doctest::Approx(0.55));
  CHECK(bandlimited_bound_decays(0.5, 1.0, 0.1));
  CHECK_FALSE(bandlimited_bound_decays(0.5, 1.95, 0.1));
  CHECK(bandlimited_error_bound(2.0, 4, 0.5, 1.0, 0.1, 2) == doctest::Approx(2.0 * 0.55 * 0.55 * 2.0 * 2.0));
}

TEST_CASE("Q-set interval contains sampled members and is centred on the rule") {
  std::mt19937_64 rng(23);
  const Graph g = build_cycle(12);
  const VertexSet u = parse_vertex_spec("every-other", g);
  const SplineProblem p(g, u, 1, 0.1);
  const Eigen::VectorXd y = oracle::gaussian(6, rng);
  const Spline sp = interpolate(lagrangian_basis(p), y);
  const double e0 = p.apply_shifted(sp.values, 1).norm();
  const double big_k = 1.5 * e0;
  const QSetInterval q = q_set_interval(p, y, big_k);
  CHECK(q.midpoint_matches_rule);
  CHECK(q.min_energy == doctest::Approx(e0));
  CHECK(q.a < q.b);

  // random members of Q: perturb on S and scale back into the energy ball
  for (int t = 0; t < 500; ++t) {
    Signal h = Eigen::VectorXd::Zero(12);
    for (Vertex v : p.complement()) h(static_cast<Eigen::Index>(v)) = oracle::gaussian(1, rng)(0);
    const double eh = p.apply_shifted(h, 1).norm();
    const double scale = std::uniform_real_distribution<double>(0.0, 1.0)(rng) * q.radius / eh;
    const Signal member = sp.values + scale * h;  // cross term vanishes for the spline
    CHECK(p.apply_shifted(member, 1).norm() <= big_k + 1e-9);
    CHECK(member.sum() >= q.a - 1e-8);
    CHECK(member.sum() <= q.b + 1e-8);
  }
  CHECK_THROWS_AS(q_set_interval(p, y, 0.5 * e0), Error);
}

TEST_CASE("Q-set deviation bound covers the interval") {
  std::mt19937_64 rng(29);
  const Graph g = build_cycle(12);
  const VertexSet u = parse_vertex_spec("every-other", g);
  const double lambda = poincare_constant(g, u.complement(12)).lambda;
  for (int k : {1, 2}) {
    const SplineProblem p(g, u, k, 0.1);
    const Eigen::VectorXd y = oracle::gaussian(6, rng);
    const double e0 = p.apply_shifted(interpolate(lagrangian_basis(p), y).values, k).norm();
    const QSetInterval q = q_set_interval(p, y, 2.0 * e0);
    CHECK(q.b - q.a <= q_set_deviation_bound(p, y, 2.0 * e0, lambda) + 1e-12);
  }
}
