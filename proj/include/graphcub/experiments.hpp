#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphcub/io.hpp"

namespace graphcub {

struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<=", "==", ...
};

/// Named series of (x, y) points for plotting.
struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct ExperimentReport {
  Json config;
  Json results = Json::object();
  std::vector<Check> checks;
  std::vector<Series> series;

  /// |measured - expected| <= tol
  void check_close(std::string name, double measured, double expected, double tol);
  /// measured <= threshold
  void check_at_most(std::string name, double measured, double threshold);
  void check_true(std::string name, bool ok);

  bool all_passed() const;
  Json to_json() const;
  /// CSV "series,x,y".
  std::string plot_data() const;
};

/// Seed for randomized data: GRAPHCUB_SEED if set, else 42.
std::uint64_t default_seed();

/// Singletons, disjoint unions, band dimension and spline-rule decay on a
/// cycle with every third vertex removed. Default scale 1000.
ExperimentReport run_ex1(std::size_t scale, std::uint64_t seed);

/// Exact Poincare constants of runs of successive cycle vertices against
/// the closed-form certificate. Default scale 30.
ExperimentReport run_ex2(std::size_t scale, std::uint64_t seed);

/// Relative degrees, frame bounds, exact dual-frame rule and the frame
/// algorithm on a cycle with every third vertex removed. Default scale 1000.
ExperimentReport run_ex3(std::size_t scale, std::uint64_t seed);

ExperimentReport run_experiment(const std::string& name, std::size_t scale, std::uint64_t seed);
std::size_t default_scale(const std::string& name);

} // namespace graphcub
