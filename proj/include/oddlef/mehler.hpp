#pragma once

#include <stdexcept>
#include <string>

namespace oddlef {

struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Closed-form harmonic-oscillator heat density with real curvature parameter a:
//   (a / (8 pi sinh(at/2))) exp(-(a/8) coth(at/2) (y1^2 + y2^2)).
// a = 0 degenerates to the flat Gaussian (1/(4 pi t)) e^{-|y|^2/(4t)}.
double mehler_density(double a, double y1, double y2, double t);

// Heat kernel of -d^2/dx^2 + (a/4)^2 x^2 between points x and z, summed from
// its Hermite eigenfunction expansion until the tail drops below `tol`.
double hermite_heat_kernel_1d(double a, double x, double z, double t, double tol = 1e-13);

// The 2-d kernel from the origin factorizes over the axes; this is the
// independent check of mehler_density.
double hermite_heat_oracle(double a, double y1, double y2, double t, double tol = 1e-13);

}  // namespace oddlef
