#include <doctest.h>

#include <cmath>
#include <random>

#include "tamecube/errors.hpp"
#include "tamecube/fnexpr.hpp"
#include "tamecube/generators.hpp"
#include "tamecube/sexpr.hpp"

using namespace tamecube;
using namespace tamecube::maps;

namespace {

Point random_point(int n, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Point p(n);
  for (auto& x : p) x = u(rng);
  return p;
}

}  // namespace

TEST_CASE("evaluation examples") {
  CHECK(constant({3.0}, 2)({0.2, 0.7}) == std::vector<double>{3.0});
  CHECK(compose(maps::smooth_step(1), coord(0, 1))({0.5}) == std::vector<double>{0.5});
  const auto t = maps::smash({0.1, 0.25}, 2)({0.5, 0.05});
  CHECK(t[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(t[1] == 0.0);
  CHECK(flat_exp(1)({1.0})[0] == doctest::Approx(std::exp(-1.0)));
  CHECK(affine({{1.0, 2.0}, {0.0, -1.0}}, {0.5, 1.0})({1.0, 1.0}) == std::vector<double>{3.5, 0.0});
  CHECK(select({2, 0}, 3)({0.1, 0.2, 0.3}) == std::vector<double>{0.3, 0.1});
  CHECK(sum({scalar(1.0, 2), identity(2)})({0.25, 0.5}) == std::vector<double>{1.25, 1.5});
  CHECK(product({scalar(2.0, 2), identity(2)})({0.25, 0.5}) == std::vector<double>{0.5, 1.0});
  CHECK(quotient(identity(2), scalar(4.0, 2))({1.0, 2.0}) == std::vector<double>{0.25, 0.5});
  CHECK(clamp01(2)({-0.5, 1.5}) == std::vector<double>{0.0, 1.0});
  CHECK(smash_var()({0.1, 0.25, 0.05})[0] == 0.0);
  CHECK(linear_in(1, 1.0, 2.0, 2)({0.0, 0.25})[0] == 1.5);
}

TEST_CASE("dimension and domain errors") {
  CHECK_THROWS_AS(compose(identity(2), identity(3)), DimensionError);
  CHECK_THROWS_AS(sum({identity(2), identity(3)}), DimensionError);
  CHECK_THROWS_AS(identity(2)({0.1}), DimensionError);
  CHECK_THROWS_AS(identity(2).on_unit_cube()({1.5, 0.0}), DomainError);
  CHECK_NOTHROW(identity(2).on_unit_cube()({1.0 + 1e-13, 0.0}));
  CHECK_THROWS_AS(quotient(scalar(1.0, 1), coord(0, 1))({0.0}), DomainError);
  CHECK_THROWS_AS(piecewise(0, {0.5, 0.4}, {scalar(0, 1), scalar(1, 1), scalar(2, 1)}), DomainError);
  CHECK_THROWS_AS(piecewise(0, {0.5}, {scalar(0, 1)}), DimensionError);
}

TEST_CASE("piecewise and glue") {
  const SmoothMap pw = piecewise(0, {0.5}, {scalar(1.0, 1), scalar(2.0, 1)});
  CHECK(pw({0.5})[0] == 1.0);
  CHECK(pw({0.51})[0] == 2.0);
  const SmoothMap g = glue({Face::from_signature("0*"), Face::from_signature("*0")},
                           {scalar(1.0, 2), scalar(2.0, 2)});
  CHECK(g({0.0, 0.0})[0] == 1.0);
  CHECK(g({0.3, 0.0})[0] == 2.0);
  CHECK_THROWS_AS(g({0.3, 0.3}), DomainError);
}

TEST_CASE("homotopy slices") {
  const SmoothMap f = parse_map("(sum (coord 1) (prod (coord 2) (coord 2)))");
  const Homotopy c = constant_homotopy(f);
  const SmoothMap s = slice(c, 0.37);
  for (const auto& p : grid_points(CubicalComplex::full(2), axis_samples(33))) CHECK(s(p) == f(p));
  // Straight line from the identity to T^n.
  const SmoothMap line = parse_map(
      "(sum (prod (sum 1 (prod -1 (coord 3))) (tuple (coord 1) (coord 2)))"
      " (prod (coord 3) (smash 0.1 0.25 (tuple (coord 1) (coord 2)))))");
  const Homotopy h(line);
  const SmoothMap end = slice(h, 1.0);
  const SmoothMap t = maps::smash({0.1, 0.25}, 2);
  for (const auto& p : grid_points(CubicalComplex::full(2), axis_samples(17))) {
    CHECK(max_abs_diff(end(p), t(p)) <= 1e-15);
    CHECK(max_abs_diff(slice(h, 0.0)(p), p) <= 1e-15);
  }
  CHECK_THROWS_AS(slice(h, 1.5), DomainError);
}

TEST_CASE("finite differences") {
  const Point p{0.3, 0.6};
  CHECK(fd_partial(scalar(2.0, 2), p, 0)[0] == 0.0);
  CHECK(std::abs(fd_partial(coord(0, 2), p, 0)[0] - 1.0) <= 1e-8);
  const SmoothMap lam = compose(maps::smooth_step(1), coord(0, 1)).on_unit_cube();
  CHECK(std::abs(fd_partial(lam, Point{0.0}, 0, 1e-3)[0]) <= 1e-6);
  CHECK(std::abs(fd_partial(lam, Point{1.0}, 0, 1e-3)[0]) <= 1e-6);
  CHECK_THROWS_AS(fd_partial(lam, Point{0.5}, 0, 0.0), DomainError);
  // Quadratic: central difference is exact up to roundoff.
  const SmoothMap q = parse_map("(prod (coord 1) (coord 1))");
  CHECK(fd_partial(q, Point{0.4}, 0, 1e-3, FdScheme::kCentral)[0] == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(fd_partial(q, Point{0.4}, 0, 1e-3, FdScheme::kForward)[0] == doctest::Approx(0.8).epsilon(1e-6));
}

TEST_CASE("Richardson convergence on smash nodes") {
  const SmoothMap t = maps::smash({0.05, 0.4}, 1);
  for (double x : {0.1, 0.2, 0.3}) {
    const Point p{x};
    const double e1 = std::abs(fd_partial_richardson(t, p, 0, 1e-2)[0] - fd_partial(t, p, 0, 1e-2)[0]);
    const double e2 = std::abs(fd_partial_richardson(t, p, 0, 5e-3)[0] - fd_partial(t, p, 0, 5e-3)[0]);
    CAPTURE(x);
    // Central differences have O(h^2) error, so halving h divides it by ~4.
    CHECK(e2 < 0.4 * e1);
  }
}

TEST_CASE("parser forms") {
  const SmoothMap l = parse_map("(lambda (coord 1))");
  CHECK(l.in_dim() == 1);
  CHECK(l({0.5})[0] == 0.5);
  const SmoothMap s = parse_map("(smash 0.1 0.25 (coord 2))");
  CHECK(s.in_dim() == 2);
  CHECK(s({0.9, 0.05})[0] == 0.0);
  CHECK(parse_map("(dim 3 (const 1 2))").in_dim() == 3);
  CHECK(parse_map("; comment\n(tuple (coord 1) 2)")({0.25}) == std::vector<double>{0.25, 2.0});
  CHECK(parse_map("(div (coord 1) 4)")({1.0})[0] == 0.25);
  CHECK(parse_map("(piece 1 (0.5) 1 2)")({0.75})[0] == 2.0);
  CHECK(parse_map("(glue [0* *0] 1 2)")({0.5, 0.0})[0] == 2.0);
  CHECK(parse_map("(smashv 0.1 0.25 (coord 1))")({0.05})[0] == 0.0);
  CHECK(parse_map("(affine [[1 1]] [0])")({0.25, 0.5})[0] == 0.75);
  CHECK(parse_map("(compose lambda (coord 2))")({0.0, 1.0})[0] == 1.0);
}

TEST_CASE("parser errors carry positions") {
  CHECK_THROWS_AS(parse_map("(compose (tuple (coord 3)) (affine [[1 0] [0 1]] [0 0]))"), DimensionError);
  try {
    parse_map("(sum 1\n  (frob 2))");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 4);
  }
  CHECK_THROWS_AS(parse_map("(sum 1 2"), ParseError);
  CHECK_THROWS_AS(parse_map(")"), ParseError);
  CHECK_THROWS(parse_map("(coord 0)"));
  CHECK_THROWS_AS(parse_map(""), ParseError);
}

TEST_CASE("round trip on generated maps") {
  std::mt19937_64 rng(21);
  for (int n = 1; n <= 3; ++n) {
    for (int m = 0; m < 6; ++m) {
      const SmoothMap f = parse_map(m % 2 ? gen::polynomial(n, rng) : gen::tame_on_j(n, 0.25, rng));
      const std::string text = serialize_map(f);
      const SmoothMap g = parse_map(text);
      CHECK(serialize_map(g) == text);
      for (int k = 0; k < 100; ++k) {
        const Point p = random_point(n, rng);
        CHECK(f(p) == g(p));
      }
    }
  }
}

TEST_CASE("round trip of constructed nodes") {
  const SmoothMap f = glue({Face::from_signature("0*"), Face::from_signature("*1")},
                           {compose(smash_var(), tuple({scalar(0.1, 2), scalar(0.3, 2), coord(1, 2)})),
                            quotient(coord(0, 2), sum({scalar(1.0, 2), coord(1, 2)}))});
  const SmoothMap g = parse_map(serialize_map(f));
  for (const auto& p : grid_points(CubicalComplex(2, {Face::from_signature("0*"), Face::from_signature("*1")}),
                                   axis_samples(17))) {
    CHECK(f(p) == g(p));
  }
  CHECK(serialize_map(parse_map("(dim 2 1.5)")) == "(dim 2 1.5)");
}

TEST_CASE("composition is associative on values") {
  std::mt19937_64 rng(8);
  const SmoothMap f = parse_map(gen::polynomial(2, rng));
  const SmoothMap g = maps::smash({0.1, 0.3}, 2);
  const SmoothMap h = affine({{0.5, 0.25}, {0.0, 1.0}}, {0.1, 0.0});
  const SmoothMap a = compose(compose(f, g), h);
  const SmoothMap b = compose(f, compose(g, h));
  for (int k = 0; k < 200; ++k) {
    const Point p = random_point(2, rng);
    CHECK(a(p) == b(p));
  }
}

TEST_CASE("max_abs_diff") {
  CHECK(max_abs_diff(Point{1.0, 2.0}, Point{1.5, 1.0}) == 1.0);
  CHECK_THROWS_AS(max_abs_diff(Point{1.0}, Point{1.0, 2.0}), DimensionError);
}
