#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "offshell/core.hpp"
#include "offshell/distributions.hpp"

namespace offshell {

/// Everything a verification run depends on. Serialises to JSON; the hash of
/// that JSON identifies the run.
struct VerifyConfig {
  std::uint64_t seed = 20240917;
  std::size_t n_random = 1000;  // points per region class
  std::size_t n_pairs = 50;     // (a, b) pairs per branch
  QuadSpec quad;
  std::size_t pde_n = 64;       // points per axis
  double pde_extent = 4.0;      // h = pde_extent / pde_n
  double pde_sigma = 0.25;
  double pde_tol = 0.05;
  bool pde_refine = true;       // also run at 2 pde_n with doubled node density

  std::string to_json() const;
  /// Missing keys keep their defaults. Throws InvalidArgument on bad input.
  static VerifyConfig from_json(std::string_view text);
};

struct Check {
  std::string name;
  std::string criterion;  // acceptance criterion id, empty for diagnostics
  bool passed = false;
  bool expected_fail = false;  // passes when the erroneous form is shown wrong
  bool diagnostic = false;     // reported but not part of the verdict
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;  // wall time, never serialised
};

struct Finding {
  std::string key;
  double value = 0.0;
  std::string text;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  std::vector<Finding> findings;

  bool passed() const;
  /// Deterministic JSON: no timings, fixed key order, round-trip doubles.
  std::string to_json(const VerifyConfig& cfg) const;
  std::string table() const;
};

std::vector<std::string> suite_names();

/// Runs "identities", "routes", "oracle" or "pde". Throws InvalidArgument for
/// other names.
SuiteReport run_suite(std::string_view name, const VerifyConfig& cfg);

/// Six Gaussian test functions covering TIMELIKE5, MIXED, SPACELIKE4 and both
/// cones, each with a short label.
std::vector<std::pair<std::string, TestFunction>> standard_suite();

/// Least-squares fit y = c x. Returns (c, |y - c x|_2 / |y|_2).
std::pair<double, double> fit_one(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace offshell
