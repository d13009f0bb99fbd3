#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "tamecube/errors.hpp"
#include "tamecube/kernels.hpp"

using namespace tamecube;

namespace {

// exp(-1) to 17 significant digits, from a 50-digit evaluation.
constexpr double kExpMinusOne = 0.36787944117144233;

double simpson(double (*fn)(double), double a, double b, int panels) {
  const double h = (b - a) / panels;
  double acc = fn(a) + fn(b);
  for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * fn(a + i * h);
  return acc * h / 3.0;
}

double lambda_fn(double t) { return smooth_step(t); }

// Midpoint Riemann sum of the profile integrand over [0, x] plus the
// boundary term; independent of the tabulated quadrature.
double riemann_profile(const SmashParams& p, double x, int panels) {
  const double h = x / panels;
  double acc = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double s = (i + 0.5) * h;
    acc += smooth_step((p.tau * s - p.sigma) / (p.tau - p.sigma));
  }
  return acc * h + (p.tau + p.sigma) / (2.0 * p.tau) *
                       smooth_step((p.tau * x - p.sigma) / (p.tau - p.sigma));
}

}  // namespace

TEST_CASE("flat_exp values") {
  CHECK(flat_exp(1.0) == doctest::Approx(kExpMinusOne).epsilon(1e-16));
  CHECK(flat_exp(0.0) == 0.0);
  CHECK(flat_exp(-3.0) == 0.0);
  CHECK(flat_exp(1e-300) == 0.0);
  CHECK(flat_exp(2.0) == doctest::Approx(std::exp(-0.5)));
  CHECK_THROWS_AS(flat_exp(std::numeric_limits<double>::quiet_NaN()), DomainError);
  CHECK_THROWS_AS(flat_exp(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("smooth_step values") {
  CHECK(smooth_step(0.0) == 0.0);
  CHECK(smooth_step(-1.0) == 0.0);
  CHECK(smooth_step(1.0) == 1.0);
  CHECK(smooth_step(7.0) == 1.0);
  CHECK(smooth_step(0.5) == 0.5);
  CHECK(smooth_step(0.25) + smooth_step(0.75) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(smooth_step(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST_CASE("smooth_step symmetry and monotonicity on random samples") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-0.5, 1.5);
  std::vector<double> ts(1000);
  for (auto& t : ts) t = d(rng);
  std::sort(ts.begin(), ts.end());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(std::abs(smooth_step(1.0 - ts[i]) - (1.0 - smooth_step(ts[i]))) <= 1e-12);
    if (i) CHECK(smooth_step(ts[i - 1]) <= smooth_step(ts[i]) + 1e-12);
  }
}

TEST_CASE("integral of smooth_step matches Simpson") {
  CHECK(std::abs(simpson(lambda_fn, 0.0, 1.0, 20000) - 0.5) <= 1e-8);
  CHECK(smooth_step_integral(1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(smooth_step_integral(0.0) == 0.0);
  CHECK(smooth_step_integral(-2.0) == 0.0);
  CHECK(smooth_step_integral(3.0) == doctest::Approx(2.5));
  for (double s : {0.05, 0.2, 0.5, 0.61, 0.9}) {
    CAPTURE(s);
    CHECK(std::abs(smooth_step_integral(s) - simpson(lambda_fn, 0.0, s, 20000)) <= 1e-10);
  }
}

TEST_CASE("flatness at the ends") {
  const double d2 = (smooth_step(1e-2) - smooth_step(0.0)) / 1e-2;
  const double d3 = (smooth_step(1e-3) - smooth_step(0.0)) / 1e-3;
  CHECK(d3 < d2);
  CHECK(d3 <= 1e-6);
  const double e2 = (smooth_step(1.0) - smooth_step(1.0 - 1e-2)) / 1e-2;
  const double e3 = (smooth_step(1.0) - smooth_step(1.0 - 1e-3)) / 1e-3;
  CHECK(e3 <= e2);
  CHECK(e3 <= 1e-6);
}

TEST_CASE("smash parameter validation") {
  CHECK_NOTHROW((SmashParams{0.0, 0.3}.validate()));
  CHECK_NOTHROW((SmashParams{0.1, 0.5}.validate()));
  CHECK_THROWS_AS((SmashParams{0.3, 0.3}.validate()), DomainError);
  CHECK_THROWS_AS((SmashParams{-0.1, 0.3}.validate()), DomainError);
  CHECK_THROWS_AS((SmashParams{0.1, 0.6}.validate()), DomainError);
  CHECK_THROWS_AS((smash({0.2, 0.1}, 0.5)), DomainError);
  CHECK_THROWS_AS((QuadratureConfig{0.0, 40}.validate()), DomainError);
}

TEST_CASE("profile examples") {
  const SmashParams p{0.1, 0.25};
  CHECK(smash_profile(p, 0.3) == 0.0);
  CHECK(std::abs(smash_profile(p, 1.3) - 1.3) <= 1e-10);
  CHECK(std::abs(smash_profile(p, 1.0) - 1.0) <= 1e-10);
}

TEST_CASE("profile at one against a Riemann oracle") {
  for (const auto& p : {SmashParams{0.1, 0.25}, SmashParams{0.05, 0.5}, SmashParams{0.0, 0.3}}) {
    CAPTURE(p.sigma);
    const double oracle = riemann_profile(p, 1.0, 1000000);
    CHECK(std::abs(oracle - 1.0) <= 1e-8);
    CHECK(std::abs(smash_profile(p, 1.0) - oracle) <= 1e-8);
  }
  const SmashParams p{0.1, 0.25};
  for (double x : {0.45, 0.6, 0.8, 0.95}) {
    CAPTURE(x);
    CHECK(std::abs(smash_profile(p, x) - riemann_profile(p, x, 200000)) <= 1e-9);
  }
}

TEST_CASE("smash examples") {
  const SmashParams p{0.1, 0.25};
  CHECK(smash(p, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(smash(p, 0.05) == 0.0);
  CHECK(smash(p, 0.93) == 1.0);
  CHECK(smash(p, -4.0) == 0.0);
  CHECK(smash(p, 4.0) == 1.0);
  CHECK(smash(p, 0.3) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("smash invariants over five parameter pairs") {
  const std::vector<SmashParams> pairs{{0.1, 0.25}, {0.05, 0.5}, {0.0, 0.3}, {0.2, 0.4}, {0.01, 0.05}};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-0.5, 1.5);
  std::vector<double> ts(1000);
  for (auto& t : ts) t = d(rng);
  std::sort(ts.begin(), ts.end());
  for (const auto& p : pairs) {
    CAPTURE(p.sigma);
    CAPTURE(p.tau);
    double prev = -1.0;
    for (double t : ts) {
      const double v = smash(p, t);
      CHECK(std::abs(smash(p, 1.0 - t) - (1.0 - v)) <= 1e-9);
      CHECK(prev <= v + 1e-9);
      prev = v;
      if (t >= p.tau && t <= 1.0 - p.tau) CHECK(std::abs(v - t) <= 1e-9);
      if (t <= p.sigma) CHECK(v == 0.0);
      if (t >= 1.0 - p.sigma) CHECK(v == 1.0);
    }
    // Both branches meet at 1/2.
    CHECK(std::abs(p.tau * smash_profile(p, 0.5 / p.tau) - (1.0 - p.tau * smash_profile(p, 0.5 / p.tau))) <= 1e-9);
  }
}

TEST_CASE("smash_unchecked agrees with smash") {
  for (double t = -0.1; t <= 1.1; t += 0.013) {
    CHECK(smash_unchecked(0.1, 0.25, t) == smash({0.1, 0.25}, t));
  }
}

TEST_CASE("concurrent evaluation is deterministic") {
  std::vector<double> ts;
  for (int i = 0; i <= 400; ++i) ts.push_back(i / 400.0);
  const QuadratureConfig q{1e-11, 38};
  std::vector<std::vector<double>> out(4, std::vector<double>(ts.size()));
  std::vector<std::thread> threads;
  for (int k = 0; k < 4; ++k) {
    threads.emplace_back([&, k] {
      for (std::size_t i = 0; i < ts.size(); ++i) out[k][i] = smash({0.05, 0.3}, ts[i], q);
    });
  }
  for (auto& th : threads) th.join();
  for (int k = 1; k < 4; ++k) CHECK(out[k] == out[0]);
  for (std::size_t i = 0; i < ts.size(); ++i) CHECK(out[0][i] == smash({0.05, 0.3}, ts[i], q));
}
