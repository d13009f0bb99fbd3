#include "tamecube/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <utility>
#include <vector>

#include "tamecube/errors.hpp"

namespace tamecube {

namespace {

// Cumulative integral of smooth_step is tabulated on [0, 1/2] at this many
// equal panels; values above 1/2 follow from the reflection identity.
constexpr int kPanels = 1024;
constexpr double kPanelWidth = 0.5 / kPanels;

void require_finite(double t, const char* where) {
  if (!std::isfinite(t)) {
    throw DomainError(std::string(where) + ": argument is not finite");
  }
}

struct SimpsonState {
  double sum = 0.0;
  double error = 0.0;
  bool converged = true;
};

void simpson_step(double a, double b, double fa, double fm, double fb,
                  double whole, double tol, int depth, SimpsonState& st) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = smooth_step(lm);
  const double frm = smooth_step(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || depth <= 0) {
    if (std::abs(delta) > 15.0 * tol) st.converged = false;
    st.sum += left + right + delta / 15.0;
    st.error += std::abs(delta) / 15.0;
    return;
  }
  simpson_step(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, st);
  simpson_step(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, st);
}

double integrate_step(double a, double b, const QuadratureConfig& q) {
  if (b <= a) return 0.0;
  const double fa = smooth_step(a);
  const double fb = smooth_step(b);
  const double fm = smooth_step(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  SimpsonState st;
  simpson_step(a, b, fa, fm, fb, whole, q.abs_tol, q.max_depth, st);
  if (!st.converged) {
    std::ostringstream msg;
    msg << "adaptive Simpson did not converge on [" << a << ", " << b
        << "] within depth " << q.max_depth << " (estimate " << st.error
        << ")";
    throw NumericalError(msg.str(), st.error);
  }
  return st.sum;
}

using Table = std::vector<double>;

std::shared_ptr<const Table> build_table(const QuadratureConfig& q) {
  auto table = std::make_shared<Table>(kPanels + 1, 0.0);
  QuadratureConfig panel_q = q;
  panel_q.abs_tol = q.abs_tol / kPanels;
  for (int k = 0; k < kPanels; ++k) {
    (*table)[k + 1] = (*table)[k] + integrate_step(k * kPanelWidth,
                                                   (k + 1) * kPanelWidth,
                                                   panel_q);
  }
  return table;
}

// Tables are immutable once published; the lock only guards the map.
std::shared_ptr<const Table> table_for(const QuadratureConfig& q) {
  static std::mutex mutex;
  static std::map<std::pair<double, int>, std::shared_ptr<const Table>> cache;
  const auto key = std::make_pair(q.abs_tol, q.max_depth);
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto table = build_table(q);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(table)).first->second;
}

const Table& default_table() {
  static const std::shared_ptr<const Table> table = table_for({});
  return *table;
}

double step_integral(double s, const Table& table, const QuadratureConfig& q) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return s - 0.5;
  if (s > 0.5) return s - 0.5 + step_integral(1.0 - s, table, q);
  const int k = std::min(static_cast<int>(s / kPanelWidth), kPanels);
  const double base = k * kPanelWidth;
  return table[k] + integrate_step(base, s, q);
}

// tau * F(t / tau), written directly in t.
double scaled_profile(double sigma, double tau, double t, const Table& table,
                      const QuadratureConfig& q) {
  const double s = (t - sigma) / (tau - sigma);
  if (s <= 0.0) return 0.0;
  if (t >= tau) return t;
  return (tau - sigma) * step_integral(s, table, q) +
         0.5 * (tau + sigma) * smooth_step(s);
}

double smash_with(double sigma, double tau, double t, const Table& table,
                  const QuadratureConfig& q) {
  if (t <= sigma) return 0.0;
  if (t >= 1.0 - sigma) return 1.0;
  if (t >= tau && t <= 1.0 - tau) return t;
  const double r = t <= 0.5 ? scaled_profile(sigma, tau, t, table, q)
                            : 1.0 - scaled_profile(sigma, tau, 1.0 - t, table, q);
  return std::clamp(r, 0.0, 1.0);
}

}  // namespace

void SmashParams::validate() const {
  if (!std::isfinite(sigma) || !std::isfinite(tau) || sigma < 0.0 ||
      !(sigma < tau) || tau > 0.5) {
    std::ostringstream msg;
    msg << "smash parameters must satisfy 0 <= sigma < tau <= 1/2, got sigma="
        << sigma << " tau=" << tau;
    throw DomainError(msg.str());
  }
}

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol) || max_depth < 1) {
    throw DomainError("quadrature config requires abs_tol > 0 and max_depth >= 1");
  }
}

double flat_exp(double t) {
  require_finite(t, "flat_exp");
  return t > 0.0 ? std::exp(-1.0 / t) : 0.0;
}

double smooth_step(double t) {
  require_finite(t, "smooth_step");
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double smooth_step_integral(double s, const QuadratureConfig& q) {
  require_finite(s, "smooth_step_integral");
  q.validate();
  return step_integral(s, *table_for(q), q);
}

double smash_profile(const SmashParams& p, double x, const QuadratureConfig& q) {
  p.validate();
  q.validate();
  require_finite(x, "smash_profile");
  if (p.tau * x <= p.sigma) return 0.0;
  if (x >= 1.0) return x;
  const double s = (p.tau * x - p.sigma) / (p.tau - p.sigma);
  const Table& table = *table_for(q);
  return (p.tau - p.sigma) / p.tau * step_integral(s, table, q) +
         (p.tau + p.sigma) / (2.0 * p.tau) * smooth_step(s);
}

double smash(const SmashParams& p, double t, const QuadratureConfig& q) {
  p.validate();
  q.validate();
  require_finite(t, "smash");
  return smash_with(p.sigma, p.tau, t, *table_for(q), q);
}

double smash_unchecked(double sigma, double tau, double t) {
  require_finite(t, "smash");
  static const QuadratureConfig q{};
  return smash_with(sigma, tau, t, default_table(), q);
}

}  // namespace tamecube
