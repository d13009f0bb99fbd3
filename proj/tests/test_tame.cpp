#include <doctest.h>

#include <cmath>
#include <random>

#include "tamecube/errors.hpp"
#include "tamecube/generators.hpp"
#include "tamecube/kernels.hpp"
#include "tamecube/retract.hpp"
#include "tamecube/sexpr.hpp"
#include "tamecube/tame.hpp"

using namespace tamecube;
using namespace tamecube::maps;

namespace {

SmoothMap lam(SmoothMap x) { return compose(maps::smooth_step(1), std::move(x)); }

SmoothMap smashv(SmoothMap a, SmoothMap b, SmoothMap x) {
  return compose(smash_var(), tuple({std::move(a), std::move(b), std::move(x)}));
}

// The extension with the schedule varying on u in [0, sigma]:
// a(u) = sigma + (sigma' - sigma) lambda(1 - u/sigma), b likewise.
SmoothMap literal_extension(const SmoothMap& f, const ExtensionParams& p) {
  const int n = f.in_dim();
  const int ua = n - 1;
  const SmoothMap w = lam(linear_in(ua, 1.0, -1.0 / p.sigma, n));
  const SmoothMap a = sum({scalar(p.sigma, n), scale(p.sigma_prime - p.sigma, w)});
  const SmoothMap b = sum({scalar(p.eps, n), scale(p.eps_prime - p.eps, w)});
  std::vector<SmoothMap> moved;
  for (int k = 0; k < ua; ++k) moved.push_back(smashv(a, b, coord(k, n)));
  moved.push_back(compose(maps::smash({p.sigma, p.eps}, 1), coord(ua, n)));
  const SmoothMap r = approx_retraction(RetractionParams::with_defaults(n, p.eps));
  return compose(f, compose(r, tuple(std::move(moved)))).on_unit_cube();
}

const SmoothMap kIdentity1 = coord(0, 1).on_unit_cube();

}  // namespace

TEST_CASE("tolerance config validation") {
  CHECK_NOTHROW(ToleranceConfig{}.validate());
  CHECK_THROWS_AS((ToleranceConfig{1e-9, 1e-6, 2, 0}.validate()), DomainError);
  CHECK_THROWS_AS((ToleranceConfig{0.0, 1e-6, 33, 0}.validate()), DomainError);
}

TEST_CASE("identity is not tame; violation equals collar depth") {
  for (double eps : {0.05, 0.1, 0.25}) {
    CAPTURE(eps);
    const auto r = check_tame(kIdentity1, CubicalComplex::full(1), eps);
    CHECK_FALSE(r.passed);
    REQUIRE(r.witness.has_value());
    const auto& w = *r.witness;
    const double depth = std::abs(w.point[w.axis] - w.alpha);
    CHECK(depth <= eps + 1e-15);
    CHECK(std::abs(r.worst - depth) <= 1e-12);
    CHECK(r.worst == doctest::Approx(eps));
    CHECK(r.samples > 0);
  }
}

TEST_CASE("tame maps pass") {
  CHECK(check_tame(scalar(1.5, 2), CubicalComplex::boundary(2), 0.4).passed);
  CHECK_FALSE(check_tame(scalar(1.5, 2), CubicalComplex::boundary(2), 0.4).witness.has_value());
  // lambda((t - 0.2)/0.6) is flat on [0, 0.2] and [0.8, 1].
  const SmoothMap bump = lam(linear_in(0, -0.2 / 0.6, 1.0 / 0.6, 1)).on_unit_cube();
  for (double t : {0.0, 0.1, 0.2}) CHECK(bump({t})[0] == 0.0);
  for (double t : {0.8, 0.9, 1.0}) CHECK(bump({t})[0] == 1.0);
  CHECK(check_tame(bump, CubicalComplex::full(1), 0.2).passed);
  CHECK_FALSE(check_tame(bump, CubicalComplex::full(1), 0.3).passed);
  CHECK_THROWS_AS(check_tame(scalar(1.0, 2), CubicalComplex::full(3), 0.2), DimensionError);
  CHECK_THROWS_AS(check_tame(scalar(1.0, 2), CubicalComplex::full(2), 0.6), DomainError);
}

TEST_CASE("admissibility") {
  CHECK(check_admissible(scalar(2.0, 2), CubicalComplex::boundary(2), 0.2).passed);
  // The first coordinate restricted to a horizontal edge is the identity.
  const auto r = check_admissible(coord(0, 2).on_unit_cube(), CubicalComplex::boundary(2), 0.2);
  CHECK_FALSE(r.passed);
  const SmoothMap tamed = compose(parse_map("(sum (coord 1) (prod 2 (coord 2)))"), maps::smash({0.2, 0.3}, 2));
  CHECK(check_tame(tamed, CubicalComplex::full(2), 0.2).passed);
  CHECK(check_admissible(tamed, CubicalComplex::full(2), 0.2).passed);
}

TEST_CASE("taming") {
  const Taming t = tame_replace(kIdentity1, 0.1, 0.25);
  CHECK(check_tame(t.g, CubicalComplex::full(1), 0.1).passed);
  for (double x : {0.0, 0.05, 0.2, 0.5, 0.93}) CHECK(t.g({x})[0] == smash({0.1, 0.25}, x));
  for (const auto& p : grid_points(chamber_region(CubicalComplex::full(1), 0.25), axis_samples(33))) {
    for (double u : {0.0, 0.5, 1.0}) CHECK(std::abs(t.h(p, u)[0] - p[0]) <= 1e-9);
  }
  for (const auto& p : grid_points(CubicalComplex::full(1), axis_samples(33))) {
    CHECK(t.h(p, 0.0) == kIdentity1(p));
    CHECK(t.h(p, 1.0) == t.g(p));
  }
  const Taming c = tame_replace(scalar(4.0, 2), 0.1, 0.25);
  CHECK(c.g({0.3, 0.2})[0] == 4.0);
  CHECK(c.h(Point{0.3, 0.2}, 0.6)[0] == 4.0);
  CHECK_THROWS_AS(tame_replace(kIdentity1, 0.3, 0.25), DomainError);
}

TEST_CASE("tameness is monotone in eps") {
  const Taming t = tame_replace(kIdentity1, 0.1, 0.25);
  for (double s : {0.09, 0.05, 0.01}) CHECK(check_tame(t.g, CubicalComplex::full(1), s).passed);
}

TEST_CASE("two tame maps agreeing on the chamber agree everywhere") {
  const SmoothMap f = parse_map("(sum (coord 1) (prod (coord 2) (coord 1)))");
  const SmoothMap a = compose(f, maps::smash({0.1, 0.2}, 2)).on_unit_cube();
  // Built differently: per-coordinate smash inside a tuple.
  const SmoothMap b = compose(f, tuple({compose(maps::smash({0.1, 0.2}, 1), coord(0, 2)),
                                        compose(maps::smash({0.1, 0.2}, 1), coord(1, 2))}))
                          .on_unit_cube();
  double chamber = 0.0, whole = 0.0;
  for (const auto& p : grid_points(chamber_region(CubicalComplex::full(2), 0.1), axis_samples(33))) {
    chamber = std::max(chamber, max_abs_diff(a(p), b(p)));
  }
  for (const auto& p : grid_points(CubicalComplex::full(2), axis_samples(33))) {
    whole = std::max(whole, max_abs_diff(a(p), b(p)));
  }
  CHECK(chamber <= 1e-9);
  CHECK(whole <= 1e-9);
}

TEST_CASE("extension parameters") {
  CHECK_NOTHROW((ExtensionParams{0.2, 0.1, 0.3, 0.15}.validate()));
  CHECK_THROWS_AS((ExtensionParams{0.2, 0.25, 0.3, 0.28}.validate()), DomainError);
  CHECK_THROWS_AS((ExtensionParams{0.2, 0.1, 0.6, 0.15}.validate()), DomainError);
  CHECK_THROWS_AS((ExtensionParams{0.2, 0.1, 0.3, 0.05}.validate()), DomainError);
  const auto d = default_extension_params(0.3, 0.1);
  CHECK(d.eps_prime == 0.3);
  CHECK(d.sigma_prime == doctest::Approx(0.2));
  CHECK(d.eps == d.sigma_prime);
}

TEST_CASE("extension of a constant is constant") {
  const SmoothMap g = extend_tame(scalar(2.0, 2), 0.25, 0.1);
  for (const auto& p : grid_points(CubicalComplex::full(2), axis_samples(9))) CHECK(g(p)[0] == 2.0);
}

TEST_CASE("extension for n = 1") {
  const SmoothMap f = parse_map("(sum 3 (coord 1))");
  const SmoothMap g = extend_tame(f, 0.25, 0.1);
  CHECK(g({1.0}) == f({1.0}));
  CHECK(check_tame(g, CubicalComplex::full(1), 0.1).passed);
}

TEST_CASE("extension of generated tame maps") {
  std::mt19937_64 rng(4);
  const ToleranceConfig cfg;
  for (int n = 2; n <= 3; ++n) {
    const ExtensionParams p{0.2, 0.1, 0.3, 0.15};
    const SmoothMap f = parse_map(gen::tame_on_j(n, 0.3, rng));
    CHECK_FALSE(check_tame(f, CubicalComplex::full(n), 0.1, cfg).passed);
    const SmoothMap g = extend_tame(f, p, cfg);
    double gap = 0.0;
    for (const auto& x : grid_points(CubicalComplex::j_complex(n), axis_samples(cfg.grid_res))) {
      gap = std::max(gap, max_abs_diff(f(x), g(x)));
    }
    CHECK(gap <= 1e-9);
    CHECK(check_tame(g, CubicalComplex::full(n), p.sigma, cfg).passed);
    CHECK(check_tame(g, CubicalComplex(n, {Face::facet(n, n - 1, 0)}), p.sigma_prime, cfg).passed);
  }
}

TEST_CASE("extension rejects maps that are not tame on J") {
  const SmoothMap f = coord(0, 2).on_unit_cube();
  CHECK_THROWS_AS(extend_tame(f, 0.25, 0.1), PreconditionError);
}

TEST_CASE("the schedule that varies inside the sigma collar breaks tameness") {
  std::mt19937_64 rng(4);
  const ExtensionParams p{0.3, 0.1, 0.4, 0.2};
  const SmoothMap f = parse_map(gen::tame_on_j(2, 0.4, rng));
  const SmoothMap literal = literal_extension(f, p);
  const auto bad = check_tame(literal, CubicalComplex::full(2), p.sigma);
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->axis == 1);
  CHECK(bad.witness->alpha == 0);
  CHECK(check_tame(extend_tame(f, p), CubicalComplex::full(2), p.sigma).passed);
}

TEST_CASE("extension over the bottom collar") {
  const double eps = 0.3;
  const SmoothMap f = compose(parse_map("(sum (coord 1) (prod 3 (coord 2) (coord 1)))"),
                              maps::smash({0.3, 0.4}, 2))
                          .on_unit_cube();
  const SmoothMap fe = extend_to_jdelta(f, eps);
  for (const auto& p : grid_points(CubicalComplex::j_complex(2), axis_samples(33))) CHECK(fe(p) == f(p));
  CHECK(fe({0.1, 0.0}) == f({0.0, 0.0}));
  CHECK(check_admissible(fe, j_delta_region(2, eps), eps).passed);

  const SmoothMap f3 = compose(parse_map("(sum (coord 1) (prod (coord 2) (coord 3)))"),
                               maps::smash({0.3, 0.4}, 3))
                           .on_unit_cube();
  const SmoothMap fe3 = extend_to_jdelta(f3, eps);
  CHECK(fe3({0.05, 0.5, 0.0}) == f3({0.0, 0.5, 0.0}));
  CHECK(check_admissible(fe3, j_delta_region(3, eps * eps), eps).passed);

  CHECK(extend_to_jdelta(scalar(1.0, 2), eps)({0.1, 0.0})[0] == 1.0);
  CHECK_THROWS_AS(extend_to_jdelta(coord(0, 2).on_unit_cube(), eps), PreconditionError);
}

TEST_CASE("concatenation of homotopies") {
  std::mt19937_64 rng(9);
  const auto pair = gen::homotopy_pair(2, rng);
  const Homotopy f(parse_map(pair.first));
  const Homotopy g(parse_map(pair.second));
  const Homotopy fg = concat_homotopy(f, g);
  for (const auto& x : grid_points(CubicalComplex::full(2), axis_samples(9))) {
    CHECK(fg(x, 0.0) == f(x, 0.0));
    CHECK(fg(x, 1.0) == g(x, 1.0));
    CHECK(max_abs_diff(fg(x, 0.5), f(x, 1.0)) <= 1e-15);
  }
  const auto seam = check_seams(fg.map(), CubicalComplex::full(3));
  CHECK(seam.passed);
  CHECK(seam.value_gap <= 1e-9);
  CHECK(seam.deriv_gap <= 1e-6);
  CHECK(seam.samples > 0);

  const Homotopy c = constant_homotopy(scalar(2.0, 1));
  const Homotopy cc = concat_homotopy(c, c);
  CHECK(cc(Point{0.3}, 0.7)[0] == 2.0);
  CHECK_THROWS_AS(concat_homotopy(f, f), PreconditionError);
}

TEST_CASE("seam check catches a jump") {
  const SmoothMap jump = piecewise(0, {0.5}, {scalar(0.0, 1), scalar(1.0, 1)});
  const auto r = check_seams(jump, CubicalComplex::full(1));
  CHECK_FALSE(r.passed);
  CHECK(r.value_gap == 1.0);
  const SmoothMap kink = piecewise(0, {0.5}, {coord(0, 1), scalar(0.5, 1)});
  const auto k = check_seams(kink, CubicalComplex::full(1));
  CHECK_FALSE(k.passed);
  CHECK(k.value_gap <= 1e-12);
  CHECK(k.deriv_gap == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("concatenation of maps") {
  const std::string rim = "(prod (coord 1) (sum 1 (prod -1 (coord 1))) (coord 2) (sum 1 (prod -1 (coord 2))))";
  const SmoothMap phi = parse_map("(sum 1 (prod 4 " + rim + "))");
  const SmoothMap psi = parse_map("(sum 1 (prod -3 (coord 2) " + rim + "))");
  const SmoothMap both = concat_maps(phi, psi);
  for (const auto& p : grid_points(CubicalComplex::boundary(2), axis_samples(17))) {
    CHECK(both(p)[0] == doctest::Approx(1.0).epsilon(1e-15));
  }
  for (double t2 : {0.2, 0.7}) {
    CHECK(both({0.0, t2}) == phi({0.0, t2}));
    CHECK(both({0.5, t2}) == phi({1.0, t2}));
    CHECK(both({1.0, t2}) == psi({1.0, t2}));
  }
  CHECK(check_seams(both, CubicalComplex::full(2)).passed);
  CHECK(concat_maps(scalar(3.0, 2), scalar(3.0, 2))({0.4, 0.4})[0] == 3.0);
  CHECK_THROWS_AS(concat_maps(coord(1, 2), scalar(3.0, 2)), PreconditionError);
}

TEST_CASE("fiber constancy") {
  CHECK(check_fiber_constant(scalar(1.0, 2), 0.2, 0.3).passed);
  CHECK(check_fiber_constant(maps::smash({0.2, 0.3}, 2).on_unit_cube(), 0.2, 0.3).passed);
  const auto r = check_fiber_constant(kIdentity1, 0.2, 0.3);
  CHECK_FALSE(r.passed);
  REQUIRE(r.witness.has_value());
  const double t = r.witness->point[0];
  CHECK((t <= 0.2 + 1e-12 || t >= 0.8 - 1e-12));
}

TEST_CASE("report determinism and thread count") {
  const Taming t = tame_replace(parse_map("(prod (coord 1) (coord 2))"), 0.1, 0.25);
  const auto a = check_tame(t.g, CubicalComplex::full(2), 0.2);
  const auto b = check_tame(t.g, CubicalComplex::full(2), 0.2);
  CHECK(a.worst == b.worst);
  CHECK(a.samples == b.samples);
  REQUIRE(a.witness.has_value());
  CHECK(a.witness->point == b.witness->point);
  CHECK(worker_count() >= 1);
}
