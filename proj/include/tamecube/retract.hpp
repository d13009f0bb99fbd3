#pragma once

// Approximate retractions of I^n onto J^{n-1} and the deformation of I^n
// into J^{n-1} built from them.

#include <string>
#include <vector>

#include "tamecube/fnexpr.hpp"

namespace tamecube {

struct RetractionParams {
  int n = 1;
  double eps = 0.25;
  double sigma = 0.125;
  double eps_prime = 0.1875;

  /// Requires n >= 1 and 0 < sigma < eps_prime < eps < 1/2.
  void validate() const;
  /// sigma = eps / 2, eps_prime = 3 eps / 4.
  static RetractionParams with_defaults(int n, double eps);
};

/// R(t, u) = (T_{m(u),eps}(t_1), ..., T_{m(u),eps}(t_{n-1}), v(t, u)) with
/// m(u) = (1 - u) eps' + u sigma and
/// v = T_{sigma,eps}(u) + T_{sigma,eps}(1 - u) prod_k lambda(t_k/m) lambda((1-t_k)/m).
/// Maps I^n into J^{n-1} and fixes the eps-chamber of J^{n-1}.
SmoothMap approx_retraction(const RetractionParams& p);

struct DeformationRetraction {
  Homotopy h;
  RetractionParams retraction;
  /// Set when eps^{n-2} exceeded 1/2 and was replaced by 1/2.
  bool tau_clamped = false;
  /// Set when eps^{n-1} was not below 1/2 and the retraction width was capped.
  bool retraction_capped = false;
  std::vector<std::string> notes;
};

/// h(s, t, u) = (1 - u)(s, t) + u R(T^{n-1}_{sigma(t),tau(t)}(s), t) with
/// sigma(t) = (1 - l) eps^{n-1} + l eps^n, tau(t) = (1 - l) eps^{n-2} + l eps^{n-1},
/// l = lambda(t / eps^n), and R the eps^{n-1}-approximate retraction.
DeformationRetraction deformation_retraction_homotopy(int n, double eps);

/// Cap applied to the retraction width when eps^{n-1} >= 1/2.
inline constexpr double kRetractionWidthCap = 0.45;

}  // namespace tamecube
