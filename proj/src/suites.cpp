#include "tamecube/suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "tamecube/errors.hpp"
#include "tamecube/generators.hpp"
#include "tamecube/kernels.hpp"
#include "tamecube/replace.hpp"
#include "tamecube/retract.hpp"
#include "tamecube/sexpr.hpp"

namespace tamecube {

namespace {

using namespace maps;

class Battery {
 public:
  explicit Battery(std::vector<PropertyResult>& out) : out_(out) {}

  void add(std::string name, Json params, double worst, double tol) {
    const bool ok = std::isfinite(worst) && worst <= tol;
    out_.push_back({std::move(name), std::move(params), worst, tol, ok});
  }
  void add_flag(std::string name, Json params, bool ok) {
    add(std::move(name), std::move(params), ok ? 0.0 : 1.0, 0.0);
  }

 private:
  std::vector<PropertyResult>& out_;
};

const std::vector<SmashParams>& smash_pairs() {
  static const std::vector<SmashParams> pairs{
      {0.1, 0.25}, {0.05, 0.5}, {0.0, 0.3}, {0.2, 0.4}, {0.01, 0.05}};
  return pairs;
}

Json pair_json(const SmashParams& p) { return {{"sigma", p.sigma}, {"tau", p.tau}}; }

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Distance of y from J^{n-1} in the max norm.
double distance_to_j(std::span<const double> y) {
  const int n = static_cast<int>(y.size());
  double d = std::abs(1.0 - y[n - 1]);
  for (int k = 0; k + 1 < n; ++k) d = std::min({d, std::abs(y[k]), std::abs(1.0 - y[k])});
  return d;
}

double midpoint_profile_at_one(const SmashParams& p, int panels) {
  const double h = 1.0 / panels;
  double acc = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double x = (i + 0.5) * h;
    acc += smooth_step((p.tau * x - p.sigma) / (p.tau - p.sigma));
  }
  return acc * h + (p.tau + p.sigma) / (2.0 * p.tau) * smooth_step(1.0);
}

double simpson_step(double a, double b, int panels) {
  const double h = (b - a) / panels;
  double acc = smooth_step(a) + smooth_step(b);
  for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * smooth_step(a + i * h);
  return acc * h / 3.0;
}

// ----------------------------------------------------------------- kernels

void kernels_suite(const SuiteConfig& cfg, Battery& b) {
  std::mt19937_64 rng(cfg.tol.seed);
  std::vector<double> ts(1000);
  for (auto& t : ts) t = uniform(rng, -0.5, 1.5);
  std::vector<double> sorted = ts;
  std::sort(sorted.begin(), sorted.end());

  double sym = 0.0, mono = 0.0;
  for (double t : ts) sym = std::max(sym, std::abs(smooth_step(1.0 - t) - (1.0 - smooth_step(t))));
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    mono = std::max(mono, smooth_step(sorted[i - 1]) - smooth_step(sorted[i]));
  }
  b.add("lambda_symmetry", {{"samples", ts.size()}}, sym, 1e-12);
  b.add("lambda_monotone", {{"samples", ts.size()}}, std::max(mono, 0.0), 1e-12);

  for (const auto& p : smash_pairs()) {
    double s = 0.0, band = 0.0, outer = 0.0, m = 0.0;
    for (double t : ts) {
      const double v = smash(p, t);
      s = std::max(s, std::abs(smash(p, 1.0 - t) - (1.0 - v)));
      if (t >= p.tau && t <= 1.0 - p.tau) band = std::max(band, std::abs(v - t));
      if (t <= p.sigma) outer = std::max(outer, std::abs(v));
      if (t >= 1.0 - p.sigma) outer = std::max(outer, std::abs(v - 1.0));
    }
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      m = std::max(m, smash(p, sorted[i - 1]) - smash(p, sorted[i]));
    }
    b.add("smash_symmetry", pair_json(p), s, 1e-9);
    b.add("smash_identity_band", pair_json(p), band, 1e-9);
    b.add("smash_outer_bands", pair_json(p), outer, 0.0);
    b.add("smash_monotone", pair_json(p), std::max(m, 0.0), 1e-9);
    const double x = 0.5 / p.tau;
    const double left = p.tau * smash_profile(p, x);
    const double right = 1.0 - p.tau * smash_profile(p, x);
    b.add("smash_seam_half", pair_json(p), std::abs(left - right), 1e-9);
  }

  const double whole = simpson_step(0.0, 1.0, 20000);
  b.add("lambda_integral_half", {{"oracle", "composite Simpson, 20000 panels"}},
        std::abs(whole - 0.5), 1e-8);
  double cum = 0.0;
  for (double s : {0.1, 0.3, 0.5, 0.7, 0.95}) {
    cum = std::max(cum, std::abs(smooth_step_integral(s) - simpson_step(0.0, s, 20000)));
  }
  b.add("lambda_cumulative_integral", {{"oracle", "composite Simpson, 20000 panels"}}, cum, 1e-10);

  for (const auto& p : {SmashParams{0.1, 0.25}, SmashParams{0.05, 0.5}, SmashParams{0.0, 0.3}}) {
    const double oracle = midpoint_profile_at_one(p, 1000000);
    b.add("profile_at_one", pair_json(p),
          std::max(std::abs(smash_profile(p, 1.0) - oracle), std::abs(oracle - 1.0)), 1e-8);
  }

  double flat = 0.0;
  for (int end : {0, 1}) {
    const double sign = end == 0 ? 1.0 : -1.0;
    auto d = [&](double h) { return std::abs(smooth_step(end + sign * h) - smooth_step(double(end))) / h; };
    flat = std::max({flat, d(1e-3), std::max(0.0, d(1e-3) - d(1e-2))});
  }
  b.add("lambda_flat_ends", {{"steps", {1e-2, 1e-3}}}, flat, 1e-6);
}

// ----------------------------------------------------------------- cubelat

void cubelat_suite(const SuiteConfig& cfg, Battery& b) {
  std::mt19937_64 rng(cfg.tol.seed + 1);
  for (int n : cfg.n) {
    const auto bd = CubicalComplex::boundary(n);
    const auto j = CubicalComplex::j_complex(n);
    b.add("boundary_facet_count", {{"n", n}},
          std::abs(double(bd.maximal_faces().size()) - 2.0 * n), 0.0);
    b.add("j_complex_facet_count", {{"n", n}},
          std::abs(double(j.maximal_faces().size()) - (2.0 * n - 1.0)), 0.0);

    bool closed = true;
    for (const auto& k : {bd, j}) {
      for (const auto& f : k.maximal_faces()) {
        for (const auto& s : f.subfaces()) closed = closed && k.contains(s);
      }
    }
    b.add_flag("downward_closed", {{"n", n}}, closed);

    if (n >= 2) {
      const auto edges = skeleton(bd, 1);
      const double expected = n * std::pow(2.0, n - 1);
      b.add("skeleton_edge_count", {{"n", n}},
            std::abs(double(edges.maximal_faces().size()) - expected), 0.0);
    }

    if (n <= 3) {
      const auto bottom = CubicalComplex(n, {Face::facet(n, n - 1, 0)});
      const auto joined = j.unite(bottom);
      double mismatch = 0.0;
      for (const auto& p : grid_points(CubicalComplex::full(n), axis_samples(33))) {
        if (joined.contains(p) != bd.contains(p)) mismatch += 1.0;
      }
      b.add("j_plus_bottom_is_boundary", {{"n", n}, {"grid", 33}}, mismatch, 0.0);
    }

    for (double e : cfg.eps) {
      double outside = 0.0;
      for (const auto& k : {bd, j}) {
        const Region ch = chamber_region(k, e);
        for (const auto& p : grid_points(ch, axis_samples(33))) {
          if (!k.contains(p)) outside += 1.0;
        }
      }
      b.add("chamber_inside_complex", {{"n", n}, {"eps", e}}, outside, 0.0);
    }

    double idem = 0.0, lip = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      Point p(n), q(n);
      for (int i = 0; i < n; ++i) {
        p[i] = uniform(rng, 0.0, 1.0);
        q[i] = uniform(rng, 0.0, 1.0);
      }
      const int axis = static_cast<int>(rng() % n);
      const int alpha = static_cast<int>(rng() % 2);
      const Point pp = face_projection(p, axis, alpha);
      idem = std::max(idem, max_abs_diff(face_projection(pp, axis, alpha), pp));
      lip = std::max(lip, max_abs_diff(pp, face_projection(q, axis, alpha)) - max_abs_diff(p, q));
    }
    b.add("projection_idempotent", {{"n", n}}, idem, 0.0);
    b.add("projection_lipschitz", {{"n", n}}, std::max(lip, 0.0), 0.0);
  }
}

// ------------------------------------------------------------------ fnexpr

void fnexpr_suite(const SuiteConfig& cfg, Battery& b) {
  std::mt19937_64 rng(cfg.tol.seed + 2);
  for (int n : cfg.n) {
    double rt = 0.0, assoc = 0.0;
    for (int m = 0; m < 5; ++m) {
      const SmoothMap f = parse_map(m % 2 ? gen::polynomial(n, rng) : gen::tame_on_j(n, 0.2, rng));
      const SmoothMap g = parse_map(serialize_map(f));
      const bool same_text = serialize_map(g) == serialize_map(f);
      if (!same_text) rt = std::max(rt, 1.0);
      const SmoothMap a = maps::smooth_step(1);
      const SmoothMap left = compose(compose(a, f), maps::smash({0.1, 0.3}, n));
      const SmoothMap right = compose(a, compose(f, maps::smash({0.1, 0.3}, n)));
      for (int k = 0; k < 100; ++k) {
        Point p(n);
        for (auto& x : p) x = uniform(rng, 0.0, 1.0);
        rt = std::max(rt, max_abs_diff(f(p), g(p)));
        assoc = std::max(assoc, max_abs_diff(left(p), right(p)));
      }
    }
    b.add("round_trip_exact", {{"n", n}, {"maps", 5}, {"points", 100}}, rt, 0.0);
    b.add("compose_associative_exact", {{"n", n}}, assoc, 0.0);

    double lin = 0.0, rich = 0.0;
    const SmoothMap t = maps::smash({0.1, 0.3}, n);
    for (int k = 0; k < 50; ++k) {
      Point p(n);
      for (auto& x : p) x = uniform(rng, 0.1, 0.9);
      const int axis = static_cast<int>(rng() % n);
      lin = std::max(lin, std::abs(fd_partial(coord(axis, n).on_unit_cube(), p, axis)[0] - 1.0));
      const auto d1 = fd_partial_richardson(t, p, axis, 1e-3);
      const auto d2 = fd_partial_richardson(t, p, axis, 5e-4);
      rich = std::max(rich, max_abs_diff(d1, d2));
    }
    b.add("fd_linear", {{"n", n}}, lin, 1e-8);
    b.add("fd_richardson_stable", {{"n", n}, {"h", 1e-3}}, rich, cfg.tol.deriv_tol);
  }
}

// ----------------------------------------------------------------- retract

void retract_suite(const SuiteConfig& cfg, Battery& b) {
  for (int n : cfg.n) {
    for (double e : cfg.eps) {
      const auto params = RetractionParams::with_defaults(n, e);
      const SmoothMap r = approx_retraction(params);
      double outside = 0.0, band = 0.0;
      for (const auto& p : grid_points(CubicalComplex::full(n), axis_samples(21))) {
        const auto y = r(p);
        outside = std::max(outside, distance_to_j(y));
        if (p[n - 1] >= 1.0 - params.sigma) band = std::max(band, std::abs(y[n - 1] - 1.0));
      }
      double fixed = 0.0;
      const Region ch = chamber_region(CubicalComplex::j_complex(n), e);
      for (const auto& p : grid_points(ch, axis_samples(21))) fixed = std::max(fixed, max_abs_diff(r(p), p));
      const Json pj{{"n", n}, {"eps", e}, {"sigma", params.sigma}, {"eps_prime", params.eps_prime}};
      b.add("retraction_image_in_J", pj, outside, cfg.tol.eq_tol);
      b.add("retraction_top_band", pj, band, cfg.tol.eq_tol);
      b.add("retraction_chamber_identity", pj, fixed, 1e-12);
    }
    bool rejected = false;
    try {
      approx_retraction({n, 0.25, 0.1, 0.3});
    } catch (const DomainError&) {
      rejected = true;
    }
    b.add_flag("broken_retraction_rejected", {{"n", n}, {"eps", 0.25}, {"eps_prime", 0.3}}, rejected);

    if (n < 2) continue;
    for (double e : cfg.eps) {
      if (!(std::pow(e, n - 1) < 0.5) || e >= 0.5) continue;
      const auto dr = deformation_retraction_homotopy(n, e);
      const double delta = std::pow(e, n - 1);
      double id0 = 0.0, in_j = 0.0, fixed = 0.0, keeps = 0.0;
      const auto grid = grid_points(CubicalComplex::full(n), axis_samples(std::min(cfg.tol.grid_res, 17)));
      for (const auto& p : grid) {
        id0 = std::max(id0, max_abs_diff(dr.h(p, 0.0), p));
        in_j = std::max(in_j, distance_to_j(dr.h(p, 1.0)));
      }
      const BoxRegion jd = j_delta_region(n, delta);
      const Region ch = chamber_region(CubicalComplex::j_complex(n), delta);
      for (double u : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        for (const auto& p : grid_points(ch, axis_samples(17))) fixed = std::max(fixed, max_abs_diff(dr.h(p, u), p));
        for (const auto& p : grid_points(Region(jd), axis_samples(17))) {
          if (!jd.contains(dr.h(p, u), cfg.tol.eq_tol)) keeps += 1.0;
        }
      }
      const Json pj{{"n", n}, {"eps", e}, {"tau_clamped", dr.tau_clamped}};
      b.add("deformation_start_identity", pj, id0, 1e-12);
      b.add("deformation_end_in_J", pj, in_j, cfg.tol.eq_tol);
      b.add("deformation_chamber_fixed", pj, fixed, cfg.tol.eq_tol);
      b.add("deformation_keeps_J_delta", pj, keeps, 0.0);
    }
  }
}

// -------------------------------------------------------------------- tame

void tame_suite(const SuiteConfig& cfg, Battery& b) {
  std::mt19937_64 rng(cfg.tol.seed + 3);
  const ToleranceConfig& tol = cfg.tol;
  const SmoothMap id1 = coord(0, 1).on_unit_cube();
  for (double e : cfg.eps) {
    const auto rep = check_tame(id1, CubicalComplex::full(1), e, tol);
    double gap = 1.0;
    if (!rep.passed && rep.witness) {
      const auto& w = *rep.witness;
      gap = std::abs(rep.worst - std::abs(w.point[w.axis] - w.alpha));
    }
    b.add("identity_not_tame", {{"eps", e}, {"violation", rep.worst}}, gap, 1e-12);
    b.add_flag("constant_tame", {{"eps", e}},
               check_tame(scalar(2.5, 2), CubicalComplex::full(2), e, tol).passed);
  }
  const SmoothMap bump = parse_map("(lambda (affine [[1.6666666666666667]] [-0.33333333333333337]))");
  const auto bump_rep = check_tame(bump, CubicalComplex::full(1), 0.2, tol);
  b.add("lambda_profile_tame", {{"eps", 0.2}}, bump_rep.worst, tol.eq_tol);

  {
    const Taming t = tame_replace(id1, 0.1, 0.25);
    const auto g_rep = check_tame(t.g, CubicalComplex::full(1), 0.1, tol);
    double rel = 0.0;
    for (const auto& p : grid_points(Region(chamber_region(CubicalComplex::full(1), 0.25)), axis_samples(tol.grid_res))) {
      for (double u : {0.0, 0.5, 1.0}) rel = std::max(rel, max_abs_diff(t.h(p, u), id1(p)));
    }
    b.add("taming_output_tame", {{"sigma", 0.1}, {"eps", 0.25}}, g_rep.worst, tol.eq_tol);
    b.add("taming_fixed_on_chamber", {{"sigma", 0.1}, {"eps", 0.25}}, rel, tol.eq_tol);
    const auto lower = check_tame(t.g, CubicalComplex::full(1), 0.05, tol);
    b.add("tameness_monotone", {{"from", 0.1}, {"to", 0.05}}, lower.worst, tol.eq_tol);
    const auto adm = check_admissible(t.g, CubicalComplex::full(1), 0.1, tol);
    b.add("tame_implies_admissible", {{"eps", 0.1}}, adm.worst, tol.eq_tol);
  }

  for (int n : cfg.n) {
    for (double e : cfg.eps) {
      const double sigma = e / 3.0;
      const auto params = default_extension_params(e, sigma);
      double on_j = 0.0, tame_worst = 0.0, bottom_worst = 0.0;
      for (int m = 0; m < 2; ++m) {
        const SmoothMap f = parse_map(gen::tame_on_j(n, e, rng));
        const SmoothMap g = extend_tame(f, params, tol);
        for (const auto& p : grid_points(CubicalComplex::j_complex(n), axis_samples(tol.grid_res))) {
          on_j = std::max(on_j, max_abs_diff(f(p), g(p)));
        }
        tame_worst = std::max(tame_worst, check_tame(g, CubicalComplex::full(n), sigma, tol).worst);
        const CubicalComplex bottom(n, {Face::facet(n, n - 1, 0)});
        bottom_worst = std::max(bottom_worst, check_tame(g, bottom, params.sigma_prime, tol).worst);
      }
      const Json pj{{"n", n}, {"eps", e}, {"sigma", sigma}, {"sigma_prime", params.sigma_prime}, {"maps", 2}};
      b.add("extension_restricts_to_input", pj, on_j, tol.eq_tol);
      b.add("extension_sigma_tame", pj, tame_worst, tol.eq_tol);
      b.add("extension_bottom_sigma_prime_tame", pj, bottom_worst, tol.eq_tol);
    }

    if (n >= 2) {
      const double e = 0.3;
      const SmoothMap f = parse_map("(compose " + gen::polynomial(n, rng) + " (smash 0.3 0.5 " + [&] {
        std::string s = "(tuple";
        for (int i = 1; i <= n; ++i) s += " (coord " + std::to_string(i) + ")";
        return s + ")";
      }() + "))");
      const SmoothMap fe = extend_to_jdelta(f, e, tol);
      double gap = 0.0;
      for (const auto& p : grid_points(CubicalComplex::j_complex(n), axis_samples(tol.grid_res))) {
        gap = std::max(gap, max_abs_diff(f(p), fe(p)));
      }
      const auto adm = check_admissible(fe, j_delta_region(n, std::pow(e, n - 1)), e, tol);
      b.add("jdelta_agrees_on_J", {{"n", n}, {"eps", e}}, gap, tol.eq_tol);
      b.add("jdelta_admissible", {{"n", n}, {"eps", e}}, adm.worst, tol.eq_tol);
    }

    {
      const auto pair = gen::homotopy_pair(n, rng);
      const Homotopy hf(parse_map(pair.first));
      const Homotopy hg(parse_map(pair.second));
      const Homotopy fg = concat_homotopy(hf, hg, tol);
      ToleranceConfig seam_tol = tol;
      seam_tol.grid_res = std::min(tol.grid_res, 9);
      const auto seam = check_seams(fg.map(), CubicalComplex::full(n + 1), seam_tol);
      b.add("concat_seam_values", {{"n", n}}, seam.value_gap, tol.eq_tol);
      b.add("concat_seam_derivatives", {{"n", n}}, seam.deriv_gap, tol.deriv_tol);
      double ends = 0.0;
      for (const auto& p : grid_points(CubicalComplex::full(n), axis_samples(seam_tol.grid_res))) {
        ends = std::max(ends, max_abs_diff(fg(p, 0.0), hf(p, 0.0)));
        ends = std::max(ends, max_abs_diff(fg(p, 1.0), hg(p, 1.0)));
      }
      b.add("concat_endpoints", {{"n", n}}, ends, tol.eq_tol);
    }

    {
      std::string rim = "(prod";
      for (int i = 1; i <= n; ++i) {
        rim += " (coord " + std::to_string(i) + ") (sum 1 (prod -1 (coord " + std::to_string(i) + ")))";
      }
      rim += ")";
      const SmoothMap phi = parse_map("(sum 0.75 (prod " + rim + " " + gen::polynomial(n, rng) + "))");
      const SmoothMap psi = parse_map("(sum 0.75 (prod " + rim + " " + gen::polynomial(n, rng) + "))");
      const SmoothMap both = concat_maps(phi, psi, tol);
      double off = 0.0;
      for (const auto& p : grid_points(CubicalComplex::boundary(n), axis_samples(std::min(tol.grid_res, 17)))) {
        off = std::max(off, std::abs(both(p)[0] - 0.75));
      }
      b.add("concat_maps_constant_on_boundary", {{"n", n}}, off, tol.eq_tol);
    }

    {
      const double e = 0.2, tau = 0.35;
      const SmoothMap tn = maps::smash({e, tau}, n).on_unit_cube();
      const auto ok = check_fiber_constant(tn, e, tau, tol);
      const auto bad = check_fiber_constant(identity(n).on_unit_cube(), e, tau, tol);
      b.add("fiber_constant_smash", {{"n", n}, {"eps", e}, {"tau", tau}}, ok.worst, tol.eq_tol);
      b.add_flag("fiber_constant_rejects_identity", {{"n", n}}, !bad.passed && bad.witness.has_value());
    }
  }
}

// ----------------------------------------------------------------- replace

void replace_suite(const SuiteConfig& cfg, Battery& b) {
  std::mt19937_64 rng(cfg.tol.seed + 4);
  const ToleranceConfig& tol = cfg.tol;
  ToleranceConfig fine = tol;
  fine.grid_res = 2 * tol.grid_res - 1;
  const double eps = 0.2;
  {
    const SmoothMap id1 = coord(0, 1).on_unit_cube();
    const auto r = admissible_replace(id1, CubicalComplex::full(1), CubicalComplex::empty(1), 0.25, tol);
    b.add("replace_interval_admissible", {{"eps", 0.25}}, check_admissible(r.g, CubicalComplex::full(1), 0.25, tol).worst,
          tol.eq_tol);
  }
  for (int n : cfg.n) {
    if (n < 2 || n > 3) continue;
    for (int c = 0; c < 3; ++c) {
      const auto rc = gen::replacement_case(n, rng);
      const SmoothMap f = parse_map(rc.map);
      const auto r = admissible_replace(f, rc.k, rc.l, eps, tol);
      double rel = 0.0, e0 = 0.0, e1 = 0.0;
      for (const auto& p : grid_points(rc.l, axis_samples(tol.grid_res))) {
        for (double u : {0.0, 0.25, 0.5, 0.75, 1.0}) rel = std::max(rel, max_abs_diff(r.h(p, u), f(p)));
      }
      for (const auto& p : grid_points(rc.k, axis_samples(tol.grid_res))) {
        e0 = std::max(e0, max_abs_diff(r.h(p, 0.0), f(p)));
        e1 = std::max(e1, max_abs_diff(r.h(p, 1.0), r.g(p)));
      }
      double progress = 0.0;
      for (const auto& s : r.trace.steps) {
        for (const auto& fs : s.faces) {
          if (fs.attempts > 0) progress = std::max(progress, fs.report.worst);
        }
      }
      std::string lsig;
      for (const auto& face : rc.l.maximal_faces()) lsig += (lsig.empty() ? "" : ",") + face.signature();
      const Json pj{{"n", n}, {"case", c}, {"eps", eps}, {"L", lsig}};
      b.add("replace_admissible", pj, r.trace.final_report.worst, tol.eq_tol);
      b.add("replace_admissible_fine_grid", pj, check_admissible(r.g, rc.k, eps, fine).worst, tol.eq_tol);
      b.add("replace_relative_to_L", pj, rel, tol.eq_tol);
      b.add("replace_starts_at_f", pj, e0, tol.eq_tol);
      b.add("replace_ends_at_g", pj, e1, tol.eq_tol);
      b.add("replace_face_progress", pj, progress, tol.eq_tol);
    }
  }
}

using SuiteFn = void (*)(const SuiteConfig&, Battery&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"kernels", kernels_suite}, {"cubelat", cubelat_suite}, {"fnexpr", fnexpr_suite},
      {"retract", retract_suite}, {"tame", tame_suite},       {"replace", replace_suite}};
  return r;
}

}  // namespace

void SuiteConfig::validate() const {
  tol.validate();
  if (n.empty() || eps.empty()) throw DomainError("suite needs at least one n and one eps");
  for (int v : n) {
    if (v < 1 || v > 4) throw DomainError("suite dimensions must lie in [1, 4]");
  }
  for (double e : eps) {
    if (!(e > 0.0 && e < 0.5)) throw DomainError("suite eps values must lie in (0, 1/2)");
  }
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

std::vector<PropertyResult> run_suite(const SuiteConfig& cfg) {
  const auto& reg = registry();
  const bool all = cfg.suite == "all";
  if (!all && std::none_of(reg.begin(), reg.end(), [&](const auto& e) { return e.first == cfg.suite; })) {
    throw UnknownSuite("unknown suite '" + cfg.suite + "'");
  }
  cfg.validate();
  std::vector<PropertyResult> out;
  for (const auto& [name, fn] : reg) {
    if (!all && name != cfg.suite) continue;
    const std::size_t first = out.size();
    Battery b(out);
    fn(cfg, b);
    for (std::size_t i = first; i < out.size(); ++i) out[i].name = name + "." + out[i].name;
  }
  return out;
}

Json suite_report(const SuiteConfig& cfg, const std::vector<PropertyResult>& results) {
  Json props = Json::array();
  bool all = true;
  for (const auto& r : results) {
    props.push_back({{"name", r.name},
                     {"params", r.params},
                     {"worst", r.worst},
                     {"tol", r.tol},
                     {"passed", r.passed}});
    all = all && r.passed;
  }
  Json j;
  j["schema"] = kReportSchemaVersion;
  j["suite"] = cfg.suite;
  j["seed"] = cfg.tol.seed;
  j["config"] = {{"n", cfg.n},
                 {"eps", cfg.eps},
                 {"grid", cfg.tol.grid_res},
                 {"eq_tol", cfg.tol.eq_tol},
                 {"deriv_tol", cfg.tol.deriv_tol}};
  j["properties"] = std::move(props);
  j["passed"] = all;
  return j;
}

}  // namespace tamecube
