#include "oddlef/mehler.hpp"

#include <cmath>
#include <vector>

namespace oddlef {

namespace {

constexpr double kPi = 3.14159265358979323846;

// x/sinh(x), stable through x = 0
double x_over_sinh(double x) {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0 - 31.0 * x2 * x2 * x2 / 15120.0;
  }
  return x / std::sinh(x);
}

// x*coth(x), stable through x = 0
double x_coth(double x) {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return 1.0 + x2 / 3.0 - x2 * x2 / 45.0 + 2.0 * x2 * x2 * x2 / 945.0;
  }
  return x / std::tanh(x);
}

}  // namespace

double mehler_density(double a, double y1, double y2, double t) {
  if (t <= 0.0) throw std::invalid_argument("mehler density needs t > 0");
  const double x = a * t / 2.0;
  if (std::abs(x) > 700.0) throw ConvergenceError("sinh overflow: |a t| too large");
  if (std::abs(x) >= 1e-2 && std::abs(std::sinh(x)) < 1e-12)
    throw ConvergenceError("pole proximity: |sinh(at/2)| below threshold");
  const double r2 = y1 * y1 + y2 * y2;
  // a/(8 pi sinh(at/2)) = x_over_sinh(x) / (4 pi t);
  // (a/8) coth(at/2) = x_coth(x) / (4 t)
  return x_over_sinh(x) / (4.0 * kPi * t) * std::exp(-x_coth(x) * r2 / (4.0 * t));
}

double hermite_heat_kernel_1d(double a, double x, double z, double t, double tol) {
  if (t <= 0.0) throw std::invalid_argument("hermite kernel needs t > 0");
  if (a < 0.0) throw std::invalid_argument("hermite kernel needs a >= 0");
  if (a == 0.0) {
    // free limit: the expansion degenerates to the plain Gaussian
    const double d = x - z;
    return std::exp(-d * d / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
  }
  const double w = a / 4.0;
  const double sw = std::sqrt(w);
  const double xix = sw * x, xiz = sw * z;
  // normalized Hermite functions via the stable two-term recurrence
  const double g = std::sqrt(sw) * std::pow(kPi, -0.25);
  double px0 = g * std::exp(-xix * xix / 2.0), pz0 = g * std::exp(-xiz * xiz / 2.0);
  double px1 = std::sqrt(2.0) * xix * px0, pz1 = std::sqrt(2.0) * xiz * pz0;
  const double decay = std::exp(-2.0 * w * t);
  double heat = std::exp(-w * t);
  double sum = heat * px0 * pz0;
  heat *= decay;
  sum += heat * px1 * pz1;
  const double geom = decay / (1.0 - decay);
  constexpr long kMaxTerms = 2000000;
  double peak = std::max(std::abs(px0 * pz0), std::abs(px1 * pz1));
  for (long n = 1;; ++n) {
    const double c1 = std::sqrt(2.0 / (n + 1));
    const double c2 = std::sqrt(n / (n + 1.0));
    const double px2 = c1 * xix * px1 - c2 * px0;
    const double pz2 = c1 * xiz * pz1 - c2 * pz0;
    px0 = px1;
    px1 = px2;
    pz0 = pz1;
    pz1 = pz2;
    heat *= decay;
    const double term = heat * px1 * pz1;
    sum += term;
    peak = std::max(peak, std::abs(px1 * pz1));
    // |psi_n| is bounded along n, so the remaining tail is geometric
    if (heat * peak * geom < tol) break;
    if (n > kMaxTerms)
      throw ConvergenceError("hermite expansion did not reach the requested precision");
  }
  return sum;
}

double hermite_heat_oracle(double a, double y1, double y2, double t, double tol) {
  return hermite_heat_kernel_1d(a, y1, 0.0, t, tol) * hermite_heat_kernel_1d(a, y2, 0.0, t, tol);
}

}  // namespace oddlef
