#pragma once

// Scalar smooth functions every construction in the library is built from:
//
//   flat_exp(t)     = exp(-1/t) for t > 0, 0 otherwise
//   smooth_step(t)  = flat_exp(t) / (flat_exp(t) + flat_exp(1 - t))
//   smash(p, t)     = non-decreasing smooth surjection R -> [0,1] that is
//                     0 on (-inf, sigma], the identity on [tau, 1 - tau],
//                     1 on [1 - sigma, inf) and symmetric about 1/2.
//
// smash is assembled from smash_profile, which integrates smooth_step
// numerically (adaptive Simpson).

namespace tamecube {

struct SmashParams {
  double sigma = 0.0;
  double tau = 0.5;

  /// Throws DomainError unless 0 <= sigma < tau <= 1/2 (all finite).
  void validate() const;
};

struct QuadratureConfig {
  double abs_tol = 1e-12;
  int max_depth = 40;

  void validate() const;
};

double flat_exp(double t);
double smooth_step(double t);

/// Integral of smooth_step over [0, s]. Exactly s - 1/2 for s >= 1.
double smooth_step_integral(double s, const QuadratureConfig& q = {});

/// The profile function F with F = 0 on (-inf, sigma/tau], F(x) = x for
/// x >= 1, non-decreasing in between.
double smash_profile(const SmashParams& p, double x,
                     const QuadratureConfig& q = {});

/// T_{sigma,tau}(t), clamped to [0, 1].
double smash(const SmashParams& p, double t, const QuadratureConfig& q = {});

/// smash with parameters that were already validated; used on hot paths.
double smash_unchecked(double sigma, double tau, double t);

}  // namespace tamecube
