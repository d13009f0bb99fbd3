#pragma once

// Tameness checks and the constructions that produce tame maps.
//
// A map f on a region K of I^n is eps-tame when f(P) = f(pi(P)) for every
// face projection pi = pi_j^alpha with |t_j - alpha| <= eps and pi(P) in K.
// It is eps-admissible when its restriction to K n F is eps^dim(F)-tame for
// every positive-dimensional face F of I^n.

#include <cstdint>
#include <optional>
#include <vector>

#include "tamecube/cubelat.hpp"
#include "tamecube/fnexpr.hpp"

namespace tamecube {

struct ToleranceConfig {
  double eq_tol = 1e-9;
  double deriv_tol = 1e-6;
  int grid_res = 33;
  std::uint64_t seed = 0;

  void validate() const;
};

struct Witness {
  Point point;
  int axis = 0;  // 0-based
  int alpha = 0;
};

struct TamenessReport {
  bool passed = true;
  double eps = 0.0;
  double worst = 0.0;
  std::optional<Witness> witness;
  std::int64_t samples = 0;
};

/// Compares f at grid and random samples of K against f at their face
/// projections. The worst violation is an exact max; among equal maxima
/// the first sample in sampling order is the witness.
TamenessReport check_tame(const SmoothMap& f, const Region& k, double eps,
                          const ToleranceConfig& cfg = {});

/// check_tame on K n F at eps^dim(F) for every positive-dimensional face F
/// of I^n, keeping the worst result.
TamenessReport check_admissible(const SmoothMap& f, const Region& k, double eps,
                                const ToleranceConfig& cfg = {});

struct Taming {
  SmoothMap g;
  Homotopy h;
};

/// g = f o T^n_{sigma,eps} and H(v, u) = f((1 - u) v + u T^n_{sigma,eps}(v)).
Taming tame_replace(const SmoothMap& f, double sigma, double eps);

struct ExtensionParams {
  double eps = 0.0;
  double sigma = 0.0;
  double eps_prime = 0.0;
  double sigma_prime = 0.0;

  /// Requires 0 < sigma < eps < eps_prime <= 1/2 and
  /// sigma < sigma_prime < eps_prime.
  void validate() const;
};

/// Extends f, given on J^{n-1} = dI^{n-1} x I u I^{n-1} x {1}, to a map g on
/// I^n that equals f on J^{n-1}, is sigma-tame, and is sigma_prime-tame on
/// the bottom face. f must be eps-tame on J^{n-1} and eps_prime-tame on
/// dI^{n-1} x {0}; both are checked when `check_input` is set.
SmoothMap extend_tame(const SmoothMap& f, const ExtensionParams& p,
                      const ToleranceConfig& cfg = {}, bool check_input = true);

/// Parameters used when only eps and sigma are known: eps_prime = eps,
/// working eps = sigma_prime = (sigma + eps) / 2.
ExtensionParams default_extension_params(double eps, double sigma);
SmoothMap extend_tame(const SmoothMap& f, double eps, double sigma,
                      const ToleranceConfig& cfg = {});

/// Extends an eps-admissible f on J^{n-1} over the bottom collar, giving a
/// map on j_delta_region(n, eps^{n-1}) equal to f on J^{n-1}.
SmoothMap extend_to_jdelta(const SmoothMap& f, double eps,
                           const ToleranceConfig& cfg = {});

struct SeamReport {
  bool passed = true;
  double value_gap = 0.0;
  double deriv_gap = 0.0;
  std::int64_t samples = 0;
};

/// For every breakpoint of a top-level piecewise map: values of adjacent
/// pieces at the seam, and one-sided second-order derivatives along the
/// split axis taken inside each piece. Seam points are grid points of the
/// hyperplane lying in `region`.
SeamReport check_seams(const SmoothMap& piecewise_map, const Region& region,
                       const ToleranceConfig& cfg = {});

/// (F * G)(x, t) = F(x, lambda(3t)) for t <= 1/2, G(x, lambda(3t - 2)) after.
/// F(., 1) and G(., 0) must agree on the grid of `space`.
Homotopy concat_homotopy(const Homotopy& f, const Homotopy& g, const Region& space,
                         const ToleranceConfig& cfg = {});
Homotopy concat_homotopy(const Homotopy& f, const Homotopy& g,
                         const ToleranceConfig& cfg = {});

/// (phi * psi)(t) = phi(lambda(3 t_1), ...) for t_1 <= 1/2 and
/// psi(lambda(3 t_1 - 2), ...) after. phi on {t_1 = 1} must match psi on
/// {t_1 = 0}.
SmoothMap concat_maps(const SmoothMap& phi, const SmoothMap& psi,
                      const ToleranceConfig& cfg = {});

/// Checks that f is constant on the fibres of T^n_{eps,tau}: moving any
/// coordinate inside [0, eps] or [1 - eps, 1] leaves f unchanged. A map
/// that is not eps-tame is reported as failing, not rejected.
TamenessReport check_fiber_constant(const SmoothMap& f, double eps, double tau,
                                    const ToleranceConfig& cfg = {});

/// Worker count for sample loops: TAMECUBE_THREADS if set, else the
/// hardware concurrency.
int worker_count();

}  // namespace tamecube
