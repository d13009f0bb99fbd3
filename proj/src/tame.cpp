#include "tamecube/tame.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "parallel.hpp"
#include "tamecube/errors.hpp"
#include "tamecube/retract.hpp"

namespace tamecube {

namespace {

using namespace maps;

struct Worst {
  double value = 0.0;
  std::size_t index = std::numeric_limits<std::size_t>::max();
  int axis = 0;
  int alpha = 0;

  void offer(double v, std::size_t i, int j, int a) {
    if (v > value || (v == value && v > 0.0 && i < index)) *this = {v, i, j, a};
  }
  void merge(const Worst& o) { offer(o.value, o.index, o.axis, o.alpha); }
};

void require_eps(double eps, const char* what) {
  if (!(eps > 0.0 && eps <= 0.5)) {
    std::ostringstream msg;
    msg << what << ": eps must satisfy 0 < eps <= 1/2, got " << eps;
    throw DomainError(msg.str());
  }
}

std::vector<double> collar_coords(double eps) {
  std::vector<double> v;
  for (double c : {0.25 * eps, 0.5 * eps, 0.75 * eps, eps}) {
    v.push_back(c);
    v.push_back(1.0 - c);
  }
  return v;
}

std::vector<Point> samples(const Region& r, double eps, const ToleranceConfig& cfg) {
  const auto extra = collar_coords(eps);
  const auto coords = axis_samples(cfg.grid_res, extra);
  std::vector<Point> pts = grid_points(r, coords);
  std::mt19937_64 rng(cfg.seed);
  auto rnd = random_points(r, cfg.grid_res, rng);
  pts.insert(pts.end(), std::make_move_iterator(rnd.begin()), std::make_move_iterator(rnd.end()));
  return pts;
}

TamenessReport finish(const Worst& w, const std::vector<Point>& pts, double eps,
                      const ToleranceConfig& cfg) {
  TamenessReport rep;
  rep.eps = eps;
  rep.worst = w.value;
  rep.samples = static_cast<std::int64_t>(pts.size());
  rep.passed = !(w.value > cfg.eq_tol);
  if (!rep.passed) rep.witness = Witness{pts[w.index], w.axis, w.alpha};
  return rep;
}

template <typename PerSample>
Worst scan(const std::vector<Point>& pts, PerSample&& per_sample) {
  Worst total;
  std::mutex mu;
  detail::parallel_chunks(pts.size(), [&](std::size_t lo, std::size_t hi) {
    Worst local;
    for (std::size_t i = lo; i < hi; ++i) per_sample(i, local);
    std::lock_guard lock(mu);
    total.merge(local);
  });
  return total;
}

std::vector<Face> positive_faces(int n) {
  std::vector<Face> out;
  for (const auto& f : Face::full(n).subfaces()) {
    if (f.dim() > 0) out.push_back(f);
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.signature() < b.signature();
  });
  return out;
}

SmoothMap lambda_of(SmoothMap g) { return compose(smooth_step(1), std::move(g)); }

SmoothMap smashv_of(SmoothMap sigma, SmoothMap tau, SmoothMap t) {
  return compose(smash_var(), tuple({std::move(sigma), std::move(tau), std::move(t)}));
}

std::vector<int> iota_axes(int from, int to) {
  std::vector<int> v;
  for (int i = from; i < to; ++i) v.push_back(i);
  return v;
}

// x -> f(x with x_axis replaced by value), as a map of the same input dim.
SmoothMap pin_axis(const SmoothMap& f, int axis, SmoothMap value) {
  const int n = f.in_dim();
  std::vector<SmoothMap> parts;
  for (int i = 0; i < n; ++i) parts.push_back(i == axis ? value : coord(i, n));
  return compose(f, tuple(std::move(parts)));
}

double endpoint_gap(const SmoothMap& a, const SmoothMap& b, const Region& where,
                    const ToleranceConfig& cfg) {
  double gap = 0.0;
  for (const auto& p : grid_points(where, axis_samples(cfg.grid_res))) {
    gap = std::max(gap, max_abs_diff(a(p), b(p)));
  }
  return gap;
}

CubicalComplex bottom_edge(int n) {
  std::vector<Face> faces;
  for (int k = 0; k + 1 < n; ++k) {
    for (int a : {0, 1}) {
      std::vector<std::int8_t> pins(n, Face::kFree);
      pins[k] = static_cast<std::int8_t>(a);
      pins[n - 1] = 0;
      faces.emplace_back(std::move(pins));
    }
  }
  return CubicalComplex(n, std::move(faces));
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("TAMECUBE_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void ToleranceConfig::validate() const {
  if (!(eq_tol > 0.0) || !(deriv_tol > 0.0) || grid_res < 3) {
    throw DomainError("tolerances must be positive and grid_res at least 3");
  }
}

TamenessReport check_tame(const SmoothMap& f, const Region& k, double eps,
                          const ToleranceConfig& cfg) {
  cfg.validate();
  require_eps(eps, "check_tame");
  const int n = ambient_dim(k);
  if (f.in_dim() != n) {
    throw DimensionError("check_tame: map has input dimension " + std::to_string(f.in_dim()) +
                         " but the region lives in dimension " + std::to_string(n));
  }
  const auto pts = samples(k, eps, cfg);
  const Worst w = scan(pts, [&](std::size_t i, Worst& local) {
    const Point& p = pts[i];
    std::optional<std::vector<double>> fp;
    Point q = p;
    for (int j = 0; j < n; ++j) {
      for (int a : {0, 1}) {
        const double depth = std::abs(p[j] - a);
        if (!(depth > 0.0 && depth <= eps)) continue;
        q[j] = a;
        if (contains(k, q)) {
          if (!fp) fp = f(p);
          local.offer(max_abs_diff(*fp, f(q)), i, j, a);
        }
        q[j] = p[j];
      }
    }
  });
  return finish(w, pts, eps, cfg);
}

TamenessReport check_admissible(const SmoothMap& f, const Region& k, double eps,
                                const ToleranceConfig& cfg) {
  require_eps(eps, "check_admissible");
  const int n = ambient_dim(k);
  TamenessReport total;
  total.eps = eps;
  for (const auto& face : positive_faces(n)) {
    const Region part = intersect(k, face);
    if (is_empty(part)) continue;
    const TamenessReport r = check_tame(f, part, std::pow(eps, face.dim()), cfg);
    total.samples += r.samples;
    if (!r.passed && (total.passed || r.worst > total.worst)) total.witness = r.witness;
    total.worst = std::max(total.worst, r.worst);
    total.passed = total.passed && r.passed;
  }
  if (total.passed) total.witness.reset();
  return total;
}

Taming tame_replace(const SmoothMap& f, double sigma, double eps) {
  if (!(sigma > 0.0 && sigma < eps && eps <= 0.5)) {
    std::ostringstream msg;
    msg << "tame_replace needs 0 < sigma < eps <= 1/2, got sigma=" << sigma << " eps=" << eps;
    throw DomainError(msg.str());
  }
  const int n = f.in_dim();
  if (n < 1) throw DimensionError("tame_replace needs a map on I^n with n >= 1");
  const SmoothMap t = smash({sigma, eps}, n);
  SmoothMap g = compose(f, t);

  const int in = n + 1;
  SmoothMap v = select(iota_axes(0, n), in);
  SmoothMap u = coord(n, in);
  SmoothMap tv = compose(t, v);
  SmoothMap path = sum({product({linear_in(n, 1.0, -1.0, in), v}), product({u, tv})});
  Homotopy h(compose(f, path).on_unit_cube());
  return {g, h};
}

void ExtensionParams::validate() const {
  if (!(sigma > 0.0 && sigma < eps && eps < eps_prime && eps_prime <= 0.5 &&
        sigma < sigma_prime && sigma_prime < eps_prime)) {
    std::ostringstream msg;
    msg << "extension parameters must satisfy 0 < sigma < eps < eps' <= 1/2 and "
           "sigma < sigma' < eps', got sigma="
        << sigma << " eps=" << eps << " eps'=" << eps_prime << " sigma'=" << sigma_prime;
    throw DomainError(msg.str());
  }
}

ExtensionParams default_extension_params(double eps, double sigma) {
  if (!(sigma > 0.0 && sigma < eps && eps <= 0.5)) {
    std::ostringstream msg;
    msg << "extension needs 0 < sigma < eps <= 1/2, got sigma=" << sigma << " eps=" << eps;
    throw DomainError(msg.str());
  }
  const double mid = 0.5 * (sigma + eps);
  return {mid, sigma, eps, mid};
}

SmoothMap extend_tame(const SmoothMap& f, const ExtensionParams& p,
                      const ToleranceConfig& cfg, bool check_input) {
  p.validate();
  const int n = f.in_dim();
  if (n < 1) throw DimensionError("extend_tame needs a map on J^{n-1} with n >= 1");
  if (check_input) {
    const auto on_j = check_tame(f, CubicalComplex::j_complex(n), p.eps, cfg);
    if (!on_j.passed) {
      std::ostringstream msg;
      msg << "extend_tame: input is not " << p.eps << "-tame on J (worst " << on_j.worst << ")";
      throw PreconditionError(msg.str());
    }
    if (n >= 2) {
      const auto on_edge = check_tame(f, bottom_edge(n), p.eps_prime, cfg);
      if (!on_edge.passed) {
        std::ostringstream msg;
        msg << "extend_tame: input is not " << p.eps_prime
            << "-tame on the bottom edge (worst " << on_edge.worst << ")";
        throw PreconditionError(msg.str());
      }
    }
  }

  const int u_axis = n - 1;
  SmoothMap u = coord(u_axis, n);
  // Weight 1 while u <= sigma, 0 once u >= eps.
  SmoothMap w = lambda_of(linear_in(u_axis, p.eps / (p.eps - p.sigma),
                                    -1.0 / (p.eps - p.sigma), n));
  SmoothMap a = sum({scalar(p.sigma, n), scale(p.sigma_prime - p.sigma, w)});
  SmoothMap b = sum({scalar(p.eps, n), scale(p.eps_prime - p.eps, w)});

  std::vector<SmoothMap> moved;
  for (int k = 0; k < u_axis; ++k) moved.push_back(smashv_of(a, b, coord(k, n)));
  moved.push_back(compose(smash({p.sigma, p.eps}, 1), u));

  const RetractionParams rp = RetractionParams::with_defaults(n, p.eps);
  SmoothMap r = approx_retraction(rp);
  return compose(f, compose(r, tuple(std::move(moved)))).on_unit_cube();
}

SmoothMap extend_tame(const SmoothMap& f, double eps, double sigma, const ToleranceConfig& cfg) {
  return extend_tame(f, default_extension_params(eps, sigma), cfg);
}

SmoothMap extend_to_jdelta(const SmoothMap& f, double eps, const ToleranceConfig& cfg) {
  require_eps(eps, "extend_to_jdelta");
  const int n = f.in_dim();
  if (n < 1) throw DimensionError("extend_to_jdelta needs n >= 1");
  const auto adm = check_admissible(f, CubicalComplex::j_complex(n), eps, cfg);
  if (!adm.passed) {
    std::ostringstream msg;
    msg << "extend_to_jdelta: input is not " << eps << "-admissible on J (worst " << adm.worst
        << ")";
    throw PreconditionError(msg.str());
  }
  if (n == 1) return f;
  const double top = std::pow(eps, n);
  const double mid = std::pow(eps, n - 1);
  const double low = std::min(std::pow(eps, n - 2), 0.5);
  if (!(mid < low)) {
    std::ostringstream msg;
    msg << "extend_to_jdelta: collar width eps^(n-1)=" << mid << " must be below " << low;
    throw DomainError(msg.str());
  }
  const int u_axis = n - 1;
  SmoothMap l = lambda_of(linear_in(u_axis, 0.0, 1.0 / top, n));
  SmoothMap sigma_u = sum({scalar(mid, n), scale(top - mid, l)});
  SmoothMap tau_u = sum({scalar(low, n), scale(mid - low, l)});
  std::vector<SmoothMap> moved;
  for (int k = 0; k < u_axis; ++k) moved.push_back(smashv_of(sigma_u, tau_u, coord(k, n)));
  moved.push_back(coord(u_axis, n));
  return compose(f, tuple(std::move(moved))).on_unit_cube();
}

SeamReport check_seams(const SmoothMap& m, const Region& region, const ToleranceConfig& cfg) {
  cfg.validate();
  const MapNode& node = m.node();
  if (node.op != Op::kPiecewise) throw DomainError("check_seams needs a piecewise map");
  if (ambient_dim(region) != m.in_dim()) throw DimensionError("check_seams: region dimension");
  constexpr double h = 1e-4;
  const int axis = node.index;
  SeamReport rep;
  const auto grid = grid_points(region, axis_samples(cfg.grid_res));
  for (std::size_t i = 0; i < node.values.size(); ++i) {
    const double b = node.values[i];
    std::vector<Point> seam;
    for (Point p : grid) {
      p[axis] = b;
      if (contains(region, p)) seam.push_back(std::move(p));
    }
    std::sort(seam.begin(), seam.end());
    seam.erase(std::unique(seam.begin(), seam.end()), seam.end());
    const SmoothMap& left = node.children[i];
    const SmoothMap& right = node.children[i + 1];
    for (const auto& p : seam) {
      rep.value_gap = std::max(rep.value_gap, max_abs_diff(left(p), right(p)));
      const auto dl = fd_partial(left, p, axis, h, FdScheme::kBackward);
      const auto dr = fd_partial(right, p, axis, h, FdScheme::kForward);
      rep.deriv_gap = std::max(rep.deriv_gap, max_abs_diff(dl, dr));
      ++rep.samples;
    }
  }
  rep.passed = !(rep.value_gap > cfg.eq_tol) && !(rep.deriv_gap > cfg.deriv_tol);
  return rep;
}

Homotopy concat_homotopy(const Homotopy& f, const Homotopy& g, const Region& space,
                         const ToleranceConfig& cfg) {
  cfg.validate();
  const int n = f.space_dim();
  if (g.space_dim() != n || f.out_dim() != g.out_dim()) {
    throw DimensionError("concat_homotopy: homotopies have different shapes");
  }
  if (ambient_dim(space) != n) throw DimensionError("concat_homotopy: region dimension");
  const double gap = endpoint_gap(slice(f, 1.0), slice(g, 0.0), space, cfg);
  if (gap > cfg.eq_tol) {
    std::ostringstream msg;
    msg << "concat_homotopy: end of the first homotopy differs from the start of the second by "
        << gap;
    throw PreconditionError(msg.str());
  }
  const int in = n + 1;
  auto reparam = [&](const Homotopy& h, double shift) {
    std::vector<SmoothMap> parts;
    if (n > 0) parts.push_back(select(iota_axes(0, n), in));
    parts.push_back(lambda_of(linear_in(n, shift, 3.0, in)));
    return compose(h.map(), tuple(std::move(parts)));
  };
  return Homotopy(piecewise(n, {0.5}, {reparam(f, 0.0), reparam(g, -2.0)}).on_unit_cube());
}

Homotopy concat_homotopy(const Homotopy& f, const Homotopy& g, const ToleranceConfig& cfg) {
  return concat_homotopy(f, g, CubicalComplex::full(f.space_dim()), cfg);
}

SmoothMap concat_maps(const SmoothMap& phi, const SmoothMap& psi, const ToleranceConfig& cfg) {
  cfg.validate();
  const int n = phi.in_dim();
  if (n < 1 || psi.in_dim() != n || phi.out_dim() != psi.out_dim()) {
    throw DimensionError("concat_maps: maps must share input dimension >= 1 and output dimension");
  }
  const double gap = endpoint_gap(pin_axis(phi, 0, scalar(1.0, n)), pin_axis(psi, 0, scalar(0.0, n)),
                                  CubicalComplex::full(n), cfg);
  if (gap > cfg.eq_tol) {
    std::ostringstream msg;
    msg << "concat_maps: phi on {t1 = 1} differs from psi on {t1 = 0} by " << gap;
    throw PreconditionError(msg.str());
  }
  SmoothMap left = pin_axis(phi, 0, lambda_of(linear_in(0, 0.0, 3.0, n)));
  SmoothMap right = pin_axis(psi, 0, lambda_of(linear_in(0, -2.0, 3.0, n)));
  return piecewise(0, {0.5}, {left, right}).on_unit_cube();
}

TamenessReport check_fiber_constant(const SmoothMap& f, double eps, double tau,
                                    const ToleranceConfig& cfg) {
  cfg.validate();
  const SmashParams sp{eps, tau};
  sp.validate();
  if (!(eps > 0.0)) throw DomainError("check_fiber_constant: eps must be positive");
  const int n = f.in_dim();
  const auto pts = samples(CubicalComplex::full(n), eps, cfg);
  std::vector<double> offsets{0.0, eps / 3.0, 2.0 * eps / 3.0, eps};
  const Worst w = scan(pts, [&](std::size_t i, Worst& local) {
    const Point& p = pts[i];
    const auto fp = f(p);
    Point q = p;
    for (int j = 0; j < n; ++j) {
      for (int a : {0, 1}) {
        if (!(std::abs(p[j] - a) <= eps)) continue;
        for (double o : offsets) {
          q[j] = a == 0 ? o : 1.0 - o;
          // Same fibre of T_{eps,tau}; both ends collapse.
          if (smash(sp, q[j]) != smash(sp, p[j])) continue;
          local.offer(max_abs_diff(fp, f(q)), i, j, a);
        }
        q[j] = p[j];
      }
    }
  });
  return finish(w, pts, eps, cfg);
}

}  // namespace tamecube
