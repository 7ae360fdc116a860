#include "oddlef/function_spec.hpp"

#include <cmath>
#include <cstdlib>

namespace oddlef {

namespace {
constexpr double kRealnessTol = 1e-12;
}

FunctionSpec::FunctionSpec(std::map<Frequency, std::complex<double>> coefficients)
    : coeffs_(std::move(coefficients)) {
  prune();
  for (const auto& [q, c] : coeffs_) {
    Frequency neg = {-q[0], -q[1], -q[2]};
    auto it = coeffs_.find(neg);
    std::complex<double> other = it == coeffs_.end() ? 0.0 : it->second;
    if (std::abs(other - std::conj(c)) > kRealnessTol)
      throw FunctionError("function is not real valued: coefficient at -q must conjugate q");
  }
}

void FunctionSpec::prune() {
  for (auto it = coeffs_.begin(); it != coeffs_.end();)
    it = (it->second == std::complex<double>(0.0)) ? coeffs_.erase(it) : std::next(it);
}

FunctionSpec FunctionSpec::constant(double c) {
  std::map<Frequency, std::complex<double>> m;
  if (c != 0.0) m[{0, 0, 0}] = c;
  return FunctionSpec(std::move(m));
}

FunctionSpec FunctionSpec::sine(int axis, int frequency) {
  std::map<Frequency, std::complex<double>> m;
  Frequency q = {0, 0, 0};
  q[axis] = frequency;
  m[q] = std::complex<double>(0.0, -0.5);
  q[axis] = -frequency;
  m[q] = std::complex<double>(0.0, 0.5);
  return FunctionSpec(std::move(m));
}

FunctionSpec FunctionSpec::cosine(int axis, int frequency) {
  std::map<Frequency, std::complex<double>> m;
  Frequency q = {0, 0, 0};
  q[axis] = frequency;
  m[q] = 0.5;
  q[axis] = -frequency;
  m[q] = 0.5;
  return FunctionSpec(std::move(m));
}

bool FunctionSpec::tau_invariant(int reflection_axis) const {
  for (const auto& [q, c] : coeffs_) {
    Frequency r = q;
    r[reflection_axis] = -r[reflection_axis];
    auto it = coeffs_.find(r);
    std::complex<double> other = it == coeffs_.end() ? 0.0 : it->second;
    if (std::abs(other - c) > kRealnessTol) return false;
  }
  return true;
}

int FunctionSpec::max_abs_frequency(int axis) const {
  int m = 0;
  for (const auto& [q, c] : coeffs_) m = std::max(m, std::abs(q[axis]));
  return m;
}

bool FunctionSpec::is_constant() const {
  for (const auto& [q, c] : coeffs_)
    if (q != Frequency{0, 0, 0}) return false;
  return true;
}

std::complex<double> FunctionSpec::eval(const std::array<double, 3>& x) const {
  std::complex<double> s = 0.0;
  for (const auto& [q, c] : coeffs_)
    s += c * std::exp(std::complex<double>(0.0, q[0] * x[0] + q[1] * x[1] + q[2] * x[2]));
  return s;
}

FunctionSpec FunctionSpec::derivative(int axis) const {
  std::map<Frequency, std::complex<double>> m;
  for (const auto& [q, c] : coeffs_)
    if (q[axis] != 0) m[q] = c * std::complex<double>(0.0, static_cast<double>(q[axis]));
  return FunctionSpec(std::move(m));
}

FunctionSpec FunctionSpec::restricted(int axis, double value) const {
  std::map<Frequency, std::complex<double>> m;
  for (const auto& [q, c] : coeffs_) {
    Frequency r = q;
    r[axis] = 0;
    m[r] += c * std::exp(std::complex<double>(0.0, q[axis] * value));
  }
  FunctionSpec out;
  out.coeffs_ = std::move(m);
  out.prune();
  return out;
}

FunctionSpec operator*(const FunctionSpec& a, const FunctionSpec& b) {
  std::map<Frequency, std::complex<double>> m;
  for (const auto& [qa, ca] : a.coeffs_)
    for (const auto& [qb, cb] : b.coeffs_)
      m[{qa[0] + qb[0], qa[1] + qb[1], qa[2] + qb[2]}] += ca * cb;
  FunctionSpec out;
  out.coeffs_ = std::move(m);
  out.prune();
  return out;
}

FunctionSpec operator+(const FunctionSpec& a, const FunctionSpec& b) {
  std::map<Frequency, std::complex<double>> m = a.coeffs_;
  for (const auto& [q, c] : b.coeffs_) m[q] += c;
  FunctionSpec out;
  out.coeffs_ = std::move(m);
  out.prune();
  return out;
}

FunctionSpec operator*(double s, const FunctionSpec& a) {
  std::map<Frequency, std::complex<double>> m = a.coeffs_;
  for (auto& [q, c] : m) c *= s;
  FunctionSpec out;
  out.coeffs_ = std::move(m);
  out.prune();
  return out;
}

}  // namespace oddlef
