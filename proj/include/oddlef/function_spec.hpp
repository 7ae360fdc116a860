#pragma once

#include <array>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

namespace oddlef {

using Frequency = std::array<int, 3>;

struct FunctionError : std::runtime_error {
  explicit FunctionError(const std::string& what) : std::runtime_error(what) {}
};

// Real-valued trigonometric polynomial sum_q c_q e^{i q.x} on the model
// (unused axes carry frequency 0). Realness c_{-q} = conj(c_q) is enforced.
class FunctionSpec {
 public:
  FunctionSpec() = default;
  explicit FunctionSpec(std::map<Frequency, std::complex<double>> coefficients);

  static FunctionSpec constant(double c);
  static FunctionSpec sine(int axis, int frequency = 1);
  static FunctionSpec cosine(int axis, int frequency = 1);

  const std::map<Frequency, std::complex<double>>& coefficients() const { return coeffs_; }

  bool tau_invariant(int reflection_axis) const;
  int max_abs_frequency(int axis) const;
  bool is_constant() const;

  std::complex<double> eval(const std::array<double, 3>& x) const;

  // d/dx_axis, again a trigonometric polynomial
  FunctionSpec derivative(int axis) const;
  // the function with coordinate `axis` frozen at `value`
  FunctionSpec restricted(int axis, double value) const;

  friend FunctionSpec operator*(const FunctionSpec& a, const FunctionSpec& b);
  friend FunctionSpec operator+(const FunctionSpec& a, const FunctionSpec& b);
  friend FunctionSpec operator*(double s, const FunctionSpec& a);

 private:
  std::map<Frequency, std::complex<double>> coeffs_;
  void prune();
};

}  // namespace oddlef
