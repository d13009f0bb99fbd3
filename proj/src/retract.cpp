#include "tamecube/retract.hpp"

#include <cmath>
#include <sstream>

#include "tamecube/errors.hpp"

namespace tamecube {

namespace {

using namespace maps;

SmoothMap lambda_of(SmoothMap g) { return compose(smooth_step(1), std::move(g)); }

SmoothMap smash_of(double sigma, double tau, SmoothMap g) {
  return compose(smash({sigma, tau}, 1), std::move(g));
}

SmoothMap smashv_of(SmoothMap sigma, SmoothMap tau, SmoothMap t) {
  return compose(smash_var(), tuple({std::move(sigma), std::move(tau), std::move(t)}));
}

// (1 - u) x + u y for vector-valued x, y, with u the given scalar map.
SmoothMap blend(const SmoothMap& x, const SmoothMap& y, const SmoothMap& u) {
  const int in = u.in_dim();
  SmoothMap one_minus_u = sum({scalar(1.0, in), scale(-1.0, u)});
  return sum({product({one_minus_u, x}), product({u, y})});
}

}  // namespace

void RetractionParams::validate() const {
  if (n < 1) throw DomainError("retraction dimension must be at least 1");
  if (!(sigma > 0.0 && sigma < eps_prime && eps_prime < eps && eps < 0.5)) {
    std::ostringstream msg;
    msg << "retraction parameters must satisfy 0 < sigma < eps' < eps < 1/2, got sigma="
        << sigma << " eps'=" << eps_prime << " eps=" << eps;
    throw DomainError(msg.str());
  }
}

RetractionParams RetractionParams::with_defaults(int n, double eps) {
  return {n, eps, 0.5 * eps, 0.75 * eps};
}

SmoothMap approx_retraction(const RetractionParams& p) {
  p.validate();
  const int n = p.n;
  const int u_axis = n - 1;
  SmoothMap u = coord(u_axis, n);
  SmoothMap m = linear_in(u_axis, p.eps_prime, p.sigma - p.eps_prime, n);
  SmoothMap eps = scalar(p.eps, n);

  std::vector<SmoothMap> out;
  std::vector<SmoothMap> factors;
  for (int k = 0; k < u_axis; ++k) {
    out.push_back(smashv_of(m, eps, coord(k, n)));
    factors.push_back(lambda_of(quotient(coord(k, n), m)));
    factors.push_back(lambda_of(quotient(linear_in(k, 1.0, -1.0, n), m)));
  }
  SmoothMap lift = smash_of(p.sigma, p.eps, u);
  SmoothMap rest = smash_of(p.sigma, p.eps, linear_in(u_axis, 1.0, -1.0, n));
  if (!factors.empty()) {
    factors.insert(factors.begin(), rest);
    rest = product(std::move(factors));
  }
  out.push_back(sum({lift, rest}));
  return tuple(std::move(out)).on_unit_cube();
}

DeformationRetraction deformation_retraction_homotopy(int n, double eps) {
  if (n < 1) throw DomainError("deformation dimension must be at least 1");
  if (!(eps > 0.0 && eps <= 0.5)) throw DomainError("eps must satisfy 0 < eps <= 1/2");

  DeformationRetraction out{Homotopy(scalar(0.0, 1)), {}, false, false, {}};
  const double top = std::pow(eps, n);         // eps^n
  const double mid = std::pow(eps, n - 1);     // eps^{n-1}
  double low = std::pow(eps, n - 2);           // eps^{n-2}
  if (low > 0.5) {
    low = 0.5;
    out.tau_clamped = true;
    out.notes.push_back("tau schedule start eps^(n-2) clamped to 1/2");
  }
  double width = mid;
  if (!(width < 0.5)) {
    width = kRetractionWidthCap;
    out.retraction_capped = true;
    std::ostringstream msg;
    msg << "retraction width eps^(n-1) capped at " << kRetractionWidthCap;
    out.notes.push_back(msg.str());
  }
  out.retraction = RetractionParams::with_defaults(n, width);
  SmoothMap r = approx_retraction(out.retraction);

  // Inputs (s_1..s_{n-1}, t, u).
  const int in = n + 1;
  const int t_axis = n - 1;
  const int u_axis = n;
  SmoothMap u = coord(u_axis, in);
  std::vector<int> space_axes(n);
  for (int i = 0; i < n; ++i) space_axes[i] = i;
  SmoothMap x = select(space_axes, in);

  std::vector<SmoothMap> moved;
  if (n >= 2) {
    if (!(mid < low)) {
      std::ostringstream msg;
      msg << "smash schedule degenerates: eps^(n-1)=" << mid << " is not below " << low;
      throw DomainError(msg.str());
    }
    SmoothMap l = lambda_of(linear_in(t_axis, 0.0, 1.0 / top, in));
    SmoothMap sigma_t = sum({scalar(mid, in), scale(top - mid, l)});
    SmoothMap tau_t = sum({scalar(low, in), scale(mid - low, l)});
    for (int k = 0; k < t_axis; ++k) moved.push_back(smashv_of(sigma_t, tau_t, coord(k, in)));
  }
  moved.push_back(coord(t_axis, in));
  SmoothMap retracted = compose(r, tuple(std::move(moved)));
  out.h = Homotopy(blend(x, retracted, u).on_unit_cube());
  return out;
}

}  // namespace tamecube
