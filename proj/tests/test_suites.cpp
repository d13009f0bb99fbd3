#include <doctest.h>

#include "tamecube/errors.hpp"
#include "tamecube/report.hpp"
#include "tamecube/suites.hpp"

using namespace tamecube;

TEST_CASE("suite registry") {
  const auto& names = suite_names();
  CHECK(names == std::vector<std::string>{"kernels", "cubelat", "fnexpr", "retract", "tame", "replace"});
  SuiteConfig cfg;
  cfg.suite = "frobnicate";
  CHECK_THROWS_AS(run_suite(cfg), UnknownSuite);
}

TEST_CASE("suite config validation") {
  SuiteConfig cfg;
  cfg.n = {5};
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.n = {2};
  cfg.eps = {0.5};
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.eps = {0.2};
  cfg.tol.grid_res = 2;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("kernels suite passes with tight symmetry") {
  SuiteConfig cfg;
  cfg.suite = "kernels";
  const auto results = run_suite(cfg);
  REQUIRE_FALSE(results.empty());
  for (const auto& r : results) {
    CAPTURE(r.name);
    CHECK(r.passed);
    CHECK(r.name.rfind("kernels.", 0) == 0);
  }
  bool saw_symmetry = false;
  for (const auto& r : results) {
    if (r.name == "kernels.lambda_symmetry") {
      saw_symmetry = true;
      CHECK(r.worst <= 1e-12);
    }
  }
  CHECK(saw_symmetry);
}

TEST_CASE("retract suite over the default grid") {
  SuiteConfig cfg;
  cfg.suite = "retract";
  for (const auto& r : run_suite(cfg)) {
    CAPTURE(r.name);
    CHECK(r.passed);
  }
}

TEST_CASE("reports are reproducible") {
  SuiteConfig cfg;
  cfg.suite = "cubelat";
  cfg.tol.seed = 7;
  const Json a = suite_report(cfg, run_suite(cfg));
  const Json b = suite_report(cfg, run_suite(cfg));
  CHECK(a.dump() == b.dump());
  CHECK(a["schema"] == kReportSchemaVersion);
  CHECK(a["seed"] == 7);
  CHECK(a["passed"] == true);
  CHECK_FALSE(a.contains("generated_at"));
}

TEST_CASE("failing properties are reported") {
  SuiteConfig cfg;
  cfg.suite = "tame";
  cfg.n = {1};
  cfg.eps = {0.25};
  cfg.tol.eq_tol = 1e-300;
  cfg.tol.deriv_tol = 1e-300;
  const auto results = run_suite(cfg);
  bool any_failed = false;
  for (const auto& r : results) any_failed = any_failed || !r.passed;
  // Seam derivatives are only exact to roundoff.
  CHECK(any_failed);
  CHECK(suite_report(cfg, results)["passed"] == false);
}

TEST_CASE("tameness report JSON") {
  TamenessReport r;
  r.passed = false;
  r.eps = 0.1;
  r.worst = 0.1;
  r.witness = Witness{{0.1}, 0, 0};
  r.samples = 40;
  const Json j = to_json(r);
  CHECK(j["witness"]["axis"] == 1);
  CHECK(j["worst"] == 0.1);
  CHECK(to_json(TamenessReport{})["witness"].is_null());
}
