#include "oddlef/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace oddlef {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kAxiomTol = 1e-12;

// Pauli matrices; the Dirac symbol on the 3-torus is sigma . k.
const std::array<std::array<Complex, 4>, 3>& pauli() {
  static const std::array<std::array<Complex, 4>, 3> s = {{
      {Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)},
      {Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0)},
      {Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0)},
  }};
  return s;
}

std::array<Complex, 2> apply_pauli(int axis, const std::array<Complex, 2>& u) {
  const auto& m = pauli()[axis];
  return {m[0] * u[0] + m[1] * u[1], m[2] * u[0] + m[3] * u[1]};
}

Complex dot(const std::array<Complex, 2>& a, const std::array<Complex, 2>& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

// Eigenvectors of sigma . k for k != 0; branch 0 has eigenvalue +|k|,
// branch 1 has -|k|. The branch-0 vector uses the pole-free formula for the
// sign of kz; branch 1 is its orthogonal complement.
std::array<Complex, 2> symbol_eigenvector(double kx, double ky, double kz, int branch) {
  const double n = std::sqrt(kx * kx + ky * ky + kz * kz);
  std::array<Complex, 2> up;
  if (kz >= 0) {
    up = {Complex(n + kz, 0), Complex(kx, ky)};
  } else {
    up = {Complex(kx, -ky), Complex(n - kz, 0)};
  }
  const double norm = std::sqrt(std::norm(up[0]) + std::norm(up[1]));
  up = {up[0] / norm, up[1] / norm};
  if (branch == 0) return up;
  return {-std::conj(up[1]), std::conj(up[0])};
}

}  // namespace

Basis::Basis(std::vector<Mode> modes, std::vector<std::uint8_t> core)
    : modes_(std::move(modes)), core_(std::move(core)) {
  for (std::size_t i = 0; i < modes_.size(); ++i)
    index_[{modes_[i].k2, modes_[i].branch}] = static_cast<long>(i);
}

long Basis::index_of(const std::array<int, 3>& k2, int branch) const {
  auto it = index_.find({k2, branch});
  return it == index_.end() ? -1 : it->second;
}

SparseOp SparseOp::identity(std::size_t n) {
  SparseOp out(n);
  for (std::size_t i = 0; i < n; ++i) out.insert(i, i, 1.0);
  out.finalize();
  return out;
}

void SparseOp::insert(std::size_t row, std::size_t col, Complex v) {
  rows_[row].push_back({col, v});
}

void SparseOp::finalize() {
  for (auto& r : rows_) {
    std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    std::vector<Entry> merged;
    for (const auto& e : r) {
      if (!merged.empty() && merged.back().col == e.col)
        merged.back().value += e.value;
      else
        merged.push_back(e);
    }
    std::erase_if(merged, [](const Entry& e) { return e.value == Complex(0.0); });
    r = std::move(merged);
  }
}

Complex SparseOp::coeff(std::size_t r, std::size_t c) const {
  const auto& row = rows_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const Entry& e, std::size_t col) { return e.col < col; });
  return (it != row.end() && it->col == c) ? it->value : Complex(0.0);
}

std::size_t SparseOp::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

SparseOp SparseOp::multiply(const SparseOp& o) const {
  SparseOp out(size());
  std::vector<Complex> acc(size(), Complex(0.0));
  std::vector<std::size_t> touched;
  for (std::size_t i = 0; i < size(); ++i) {
    touched.clear();
    for (const auto& a : rows_[i]) {
      for (const auto& b : o.rows_[a.col]) {
        if (acc[b.col] == Complex(0.0)) touched.push_back(b.col);
        acc[b.col] += a.value * b.value;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::size_t c : touched) {
      if (acc[c] != Complex(0.0)) out.rows_[i].push_back({c, acc[c]});
      acc[c] = Complex(0.0);
    }
  }
  return out;
}

SparseOp SparseOp::adjoint() const {
  SparseOp out(size());
  for (std::size_t i = 0; i < size(); ++i)
    for (const auto& e : rows_[i]) out.insert(e.col, i, std::conj(e.value));
  out.finalize();
  return out;
}

SparseOp SparseOp::scaled(Complex s) const {
  SparseOp out = *this;
  for (auto& r : out.rows_)
    for (auto& e : r) e.value *= s;
  return out;
}

SparseOp SparseOp::plus(const SparseOp& o) const {
  SparseOp out = *this;
  for (std::size_t i = 0; i < o.size(); ++i)
    for (const auto& e : o.rows_[i]) out.rows_[i].push_back(e);
  out.finalize();
  return out;
}

double SparseOp::max_abs_difference(const SparseOp& o) const {
  double m = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (const auto& e : rows_[i]) m = std::max(m, std::abs(e.value - o.coeff(i, e.col)));
    for (const auto& e : o.rows_[i]) m = std::max(m, std::abs(e.value - coeff(i, e.col)));
  }
  return m;
}

void HeatCurve::validate() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].first <= 0.0)
      throw std::invalid_argument("heat curve needs strictly positive t values");
    if (i > 0 && samples[i].first >= samples[i - 1].first)
      throw std::invalid_argument("heat curve t values must strictly decrease toward 0");
  }
}

ModelGeometry::ModelGeometry(ModelDescriptor desc, int ambient_dim, int reflection_axis,
                             std::vector<FixedComponentSpec> comps,
                             std::vector<std::array<double, 3>> pos)
    : desc_(std::move(desc)),
      ambient_dim_(ambient_dim),
      reflection_axis_(reflection_axis),
      fixed_components_(std::move(comps)),
      fixed_pos_(std::move(pos)) {
  if (desc_.lift_sign != 1 && desc_.lift_sign != -1)
    throw LiftError("LiftSign", "lift sign must be +1 or -1");
  if (desc_.cutoff < 1) throw LiftError("Cutoff", "cutoff K must be >= 1");
  verify_lift_axioms();
}

Basis ModelGeometry::make_basis(int pad) const {
  const int P = desc_.cutoff + pad;
  std::vector<Mode> modes;
  std::vector<std::uint8_t> core;
  auto axis_values = [&](int axis) {
    std::vector<int> vals;
    if (axis >= ambient_dim_) {
      vals.push_back(0);
      return vals;
    }
    const bool periodic = desc_.spin[axis] == SpinStructure::periodic;
    // k2 = twice the momentum: even for periodic, odd for antiperiodic
    for (int k2 = periodic ? -2 * P : -(2 * P - 1); k2 <= 2 * P; k2 += 2) vals.push_back(k2);
    return vals;
  };
  const auto xs = axis_values(0), ys = axis_values(1), zs = axis_values(2);
  const int branches = ambient_dim_ == 1 ? 1 : 2;
  for (int kx : xs) {
    for (int ky : ys) {
      for (int kz : zs) {
        for (int b = 0; b < branches; ++b) {
          Mode m;
          m.k2 = {kx, ky, kz};
          m.branch = b;
          if (ambient_dim_ == 1) {
            m.lambda = kx / 2.0;
            m.spinor = {Complex(1.0), Complex(0.0)};
          } else {
            const double n =
                std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz) / 2.0;
            if (kx == 0 && ky == 0 && kz == 0) {
              m.lambda = 0.0;
              m.spinor = b == 0 ? std::array<Complex, 2>{1.0, 0.0}
                                : std::array<Complex, 2>{0.0, 1.0};
            } else {
              m.lambda = b == 0 ? n : -n;
              m.spinor = symbol_eigenvector(kx / 2.0, ky / 2.0, kz / 2.0, b);
            }
          }
          modes.push_back(m);
          const bool in_core = std::abs(kx) <= 2 * desc_.cutoff &&
                               std::abs(ky) <= 2 * desc_.cutoff &&
                               std::abs(kz) <= 2 * desc_.cutoff;
          core.push_back(in_core ? 1 : 0);
        }
      }
    }
  }
  return Basis(std::move(modes), std::move(core));
}

SparseOp ModelGeometry::tau_matrix(const Basis& b) const {
  SparseOp out(b.size());
  const double eta = desc_.lift_sign;
  for (std::size_t j = 0; j < b.size(); ++j) {
    const Mode& mj = b.modes()[j];
    std::array<int, 3> tk = mj.k2;
    tk[reflection_axis_] = -tk[reflection_axis_];
    if (ambient_dim_ == 1) {
      long i = b.index_of(tk, 0);
      if (i < 0) throw LiftError("BasisClosure", "basis not closed under the involution");
      out.insert(static_cast<std::size_t>(i), j, eta);
      continue;
    }
    const auto su = apply_pauli(reflection_axis_, mj.spinor);
    for (int s2 = 0; s2 < 2; ++s2) {
      long i = b.index_of(tk, s2);
      if (i < 0) throw LiftError("BasisClosure", "basis not closed under the involution");
      const Complex ov = dot(b.modes()[static_cast<std::size_t>(i)].spinor, su);
      if (std::abs(ov) > 0.0) out.insert(static_cast<std::size_t>(i), j, eta * ov);
    }
  }
  out.finalize();
  return out;
}

SparseOp ModelGeometry::multiplication_operator(const Basis& b, const FunctionSpec& f) const {
  SparseOp out(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    const Mode& mj = b.modes()[j];
    for (const auto& [q, c] : f.coefficients()) {
      std::array<int, 3> k2 = {mj.k2[0] + 2 * q[0], mj.k2[1] + 2 * q[1], mj.k2[2] + 2 * q[2]};
      if (ambient_dim_ == 1) {
        if (q[1] != 0 || q[2] != 0)
          throw FunctionError("function uses axes absent from the circle model");
        long i = b.index_of(k2, 0);
        if (i >= 0) out.insert(static_cast<std::size_t>(i), j, c);
        continue;
      }
      for (int s2 = 0; s2 < 2; ++s2) {
        long i = b.index_of(k2, s2);
        if (i < 0) continue;
        const Complex ov = dot(b.modes()[static_cast<std::size_t>(i)].spinor, mj.spinor);
        if (std::abs(ov) > 0.0) out.insert(static_cast<std::size_t>(i), j, c * ov);
      }
    }
  }
  out.finalize();
  return out;
}

void ModelGeometry::verify_lift_axioms() const {
  const Basis b = make_basis(0);
  const SparseOp tau = tau_matrix(b);
  const SparseOp id = SparseOp::identity(b.size());
  if (tau.multiply(tau).max_abs_difference(id) > kAxiomTol)
    throw LiftError("TauSquare", "tau^2 = 1 fails for " + desc_.model + " with lift sign " +
                                     std::to_string(desc_.lift_sign));
  const SparseOp adj = tau.adjoint();
  if (tau.max_abs_difference(adj) > kAxiomTol)
    throw LiftError("SelfAdjoint", "tau is not self-adjoint");
  if (tau.multiply(adj).max_abs_difference(id) > kAxiomTol)
    throw LiftError("Unitary", "tau is not unitary");
  // anticommutation: every nonzero entry must connect opposite eigenvalues
  for (std::size_t i = 0; i < b.size(); ++i)
    for (const auto& e : tau.row(i)) {
      const double sum = b.modes()[i].lambda + b.modes()[e.col].lambda;
      if (std::abs(e.value) * std::abs(sum) > kAxiomTol)
        throw LiftError("Anticommute", "tau D + D tau != 0 on the truncated basis");
    }
}

TraceValue ModelGeometry::heat_supertrace(double t, Exec ex) const {
  if (t <= 0.0) throw std::invalid_argument("heat supertrace needs t > 0");
  const Basis b = make_basis(0);
  const SparseOp tau = tau_matrix(b);
  const Complex sum = indexed_sum<Complex>(
      b.size(),
      [&](std::size_t i) {
        const Complex d = tau.coeff(i, i);
        if (d == Complex(0.0)) return Complex(0.0);
        const double lam = b.modes()[i].lambda;
        return d * std::exp(-t * lam * lam);
      },
      ex);
  TraceValue out;
  out.value = sum.real();

  // Gaussian tail over the involution-fixed momenta beyond the cutoff; those
  // are the only modes whose lift diagonal can be nonzero.
  const int K = desc_.cutoff;
  double tail = 0.0;
  if (ambient_dim_ == 3 && desc_.spin[reflection_axis_] == SpinStructure::periodic) {
    auto axis_sum = [&](int axis, int bound) {
      const bool periodic = desc_.spin[axis] == SpinStructure::periodic;
      double s = 0.0;
      for (int k2 = periodic ? 0 : 1; k2 <= 2 * bound; k2 += 2) {
        const double lam = k2 / 2.0;
        const double w = std::exp(-t * lam * lam);
        s += (k2 == 0 ? w : 2 * w);
      }
      return s;
    };
    int a1 = -1, a2 = -1;
    for (int a = 0; a < 3; ++a)
      if (a != reflection_axis_) (a1 < 0 ? a1 : a2) = a;
    const int B = K + 256;
    const double full = axis_sum(a1, B) * axis_sum(a2, B);
    const double inner = axis_sum(a1, K) * axis_sum(a2, K);
    tail = 2.0 * (full - inner);  // two spinor branches
  }
  out.tail_bound = tail;
  return out;
}

HeatCurve ModelGeometry::heat_curve(const std::vector<double>& ts, Exec ex) const {
  HeatCurve curve;
  for (double t : ts) curve.samples.emplace_back(t, Complex(heat_supertrace(t, ex).value, 0.0));
  curve.validate();
  return curve;
}

namespace {

// per-mode weight and frequency for the density sum; the density of the flat
// models depends only on the reflected coordinate x_r:
//   density(x_r) = eta (2pi)^{-n} sum_i w_i e^{-t lambda_i^2} e^{-i k2_r x_r}
struct DensityTerms {
  std::vector<double> weight;  // real spinor overlaps
  std::vector<double> lambda2;
  std::vector<int> freq;  // k2 along the reflected axis
  double prefactor = 0.0;
};

}  // namespace

struct ModelGeometry::DensityContext : DensityTerms {};

ModelGeometry::DensityContext ModelGeometry::density_terms() const {
  const Basis b = make_basis(0);
  DensityContext ctx;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Mode& m = b.modes()[i];
    double w = 1.0;
    if (ambient_dim_ != 1) {
      const Complex ov = dot(m.spinor, apply_pauli(reflection_axis_, m.spinor));
      w = ov.real();
      if (std::abs(ov.imag()) > 1e-14)
        throw LiftError("SelfAdjoint", "density weight should be real");
      if (w == 0.0) continue;
    }
    ctx.weight.push_back(w);
    ctx.lambda2.push_back(m.lambda * m.lambda);
    ctx.freq.push_back(m.k2[reflection_axis_]);
  }
  ctx.prefactor = desc_.lift_sign * std::pow(2 * kPi, -ambient_dim_);
  return ctx;
}

double ModelGeometry::density_at(const DensityContext& ctx, double xr, double t) {
  double sum = 0.0;
  for (std::size_t i = 0; i < ctx.weight.size(); ++i)
    sum += ctx.weight[i] * std::exp(-t * ctx.lambda2[i]) * std::cos(ctx.freq[i] * xr);
  return ctx.prefactor * sum;
}

double ModelGeometry::local_density(const std::array<double, 3>& x, double t) const {
  if (t <= 0.0) throw std::invalid_argument("local density needs t > 0");
  const DensityContext ctx = density_terms();
  return density_at(ctx, x[reflection_axis_], t);
}

double ModelGeometry::integrate_density(double t, int grid_per_axis, Exec ex) const {
  // the transverse directions integrate to their volume factor
  const int n = grid_per_axis;
  const double h = 2 * kPi / n;
  const double transverse = std::pow(2 * kPi, ambient_dim_ - 1);
  const DensityContext ctx = density_terms();
  const double sum = indexed_sum<double>(
      static_cast<std::size_t>(n), [&](std::size_t i) { return density_at(ctx, i * h, t); },
      ex);
  return sum * h * transverse;
}

double ModelGeometry::outside_fixed_set_mass(double eps, double t, int grid_points,
                                             Exec ex) const {
  const int n = grid_points;
  const double h = 2 * kPi / n;
  const double transverse = std::pow(2 * kPi, ambient_dim_ - 1);
  const DensityContext ctx = density_terms();
  const double sum = indexed_sum<double>(
      static_cast<std::size_t>(n),
      [&](std::size_t i) {
        const double s = i * h;
        const double d0 = std::min(s, 2 * kPi - s);
        const double dpi = std::abs(s - kPi);
        if (d0 <= eps || dpi <= eps) return 0.0;
        return std::abs(density_at(ctx, s, t));
      },
      ex);
  return sum * h * transverse;
}

namespace {

std::vector<FixedComponentSpec> circle_components(SpinStructure spin, int lift_sign) {
  // localized masses from the Poisson-summed mode sums: the point at 0 always
  // carries the lift sign; the image at pi flips it for the antiperiodic
  // structure (alternating theta sum)
  FixedComponentSpec p0;
  p0.name = "theta=0";
  p0.dim_f = 0;
  p0.codim = 1;
  p0.orientation_sign = lift_sign;
  p0.flat = true;
  p0.volume = 1.0;
  FixedComponentSpec p1 = p0;
  p1.name = "theta=pi";
  p1.orientation_sign = spin == SpinStructure::periodic ? lift_sign : -lift_sign;
  return {p0, p1};
}

std::vector<FixedComponentSpec> torus_components(const std::array<SpinStructure, 3>& spin,
                                                 int reflection_axis, int lift_sign) {
  FixedComponentSpec f0;
  f0.name = "plane=0";
  f0.dim_f = 2;
  f0.codim = 1;
  f0.orientation_sign = lift_sign;
  f0.flat = true;
  f0.volume = 4 * kPi * kPi;
  FixedComponentSpec f1 = f0;
  f1.name = "plane=pi";
  f1.orientation_sign =
      spin[reflection_axis] == SpinStructure::periodic ? lift_sign : -lift_sign;
  return {f0, f1};
}

}  // namespace

ModelGeometry build_circle(SpinStructure spin, int lift_sign, int cutoff) {
  ModelDescriptor d;
  d.model = "circle";
  d.cutoff = cutoff;
  d.spin = {spin};
  d.lift_sign = lift_sign;
  d.reflection_axis = 0;
  std::vector<std::array<double, 3>> pos = {{0, 0, 0}, {kPi, 0, 0}};
  return ModelGeometry(std::move(d), 1, 0, circle_components(spin, lift_sign), std::move(pos));
}

ModelGeometry build_torus3(int reflection_axis, const std::array<SpinStructure, 3>& spin,
                           int lift_sign, int cutoff) {
  if (reflection_axis < 0 || reflection_axis > 2)
    throw LiftError("ReflectionAxis", "reflection axis must be 0, 1 or 2");
  ModelDescriptor d;
  d.model = "torus3";
  d.cutoff = cutoff;
  d.spin = {spin[0], spin[1], spin[2]};
  d.lift_sign = lift_sign;
  d.reflection_axis = reflection_axis;
  std::vector<std::array<double, 3>> pos(2, {0, 0, 0});
  pos[1][reflection_axis] = kPi;
  return ModelGeometry(std::move(d), 3, reflection_axis,
                       torus_components(spin, reflection_axis, lift_sign), std::move(pos));
}

ModelGeometry build_geometry(const ModelDescriptor& desc) {
  if (desc.model == "circle") {
    if (desc.spin.size() != 1)
      throw LiftError("SpinStructure", "circle expects one spin structure flag");
    return build_circle(desc.spin[0], desc.lift_sign, desc.cutoff);
  }
  if (desc.model == "torus3") {
    if (desc.spin.size() != 3)
      throw LiftError("SpinStructure", "torus3 expects three spin structure flags");
    return build_torus3(desc.reflection_axis, {desc.spin[0], desc.spin[1], desc.spin[2]},
                        desc.lift_sign, desc.cutoff);
  }
  throw LiftError("Model", "unknown model " + desc.model);
}

std::vector<double> log_spaced(double tmin, double tmax, int count) {
  std::vector<double> out;
  if (count == 1) {
    out.push_back(tmax);
    return out;
  }
  const double r = std::log(tmin / tmax) / (count - 1);
  for (int i = 0; i < count; ++i) out.push_back(tmax * std::exp(r * i));
  return out;
}

}  // namespace oddlef
