#pragma once

// Named property batteries run by `tamecube verify` and the Python module.

#include <stdexcept>
#include <string>
#include <vector>

#include "tamecube/report.hpp"
#include "tamecube/tame.hpp"

namespace tamecube {

class UnknownSuite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
  std::string suite = "all";
  std::vector<int> n{1, 2, 3};
  std::vector<double> eps{0.1, 0.25, 0.4};
  ToleranceConfig tol;

  /// n values in [1, 4], eps values in (0, 1/2), tolerances valid.
  void validate() const;
};

struct PropertyResult {
  std::string name;
  Json params;
  double worst = 0.0;
  double tol = 0.0;
  bool passed = true;
};

/// kernels, cubelat, fnexpr, retract, tame, replace.
const std::vector<std::string>& suite_names();

/// Runs one suite or "all". Throws UnknownSuite for other names.
std::vector<PropertyResult> run_suite(const SuiteConfig& cfg);

/// {schema, suite, seed, config, properties[], passed}. Contains nothing
/// that varies between runs with the same configuration.
Json suite_report(const SuiteConfig& cfg, const std::vector<PropertyResult>& results);

}  // namespace tamecube
