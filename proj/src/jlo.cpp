#include "oddlef/jlo.hpp"

#include <algorithm>
#include <cmath>

namespace oddlef {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

int LambdaMulti::weight() const {
  int s = 0;
  for (int v : lambda) s += v;
  return s;
}

std::int64_t lambda_factorial(const LambdaMulti& l) {
  std::int64_t r = 1;
  for (int v : l.lambda)
    for (int i = 2; i <= v; ++i) r *= i;
  return r;
}

std::int64_t lambda_tilde_factorial(const LambdaMulti& l) {
  std::int64_t r = 1;
  int partial = 0;
  for (std::size_t j = 0; j < l.lambda.size(); ++j) {
    partial += l.lambda[j];
    r *= partial + static_cast<std::int64_t>(j) + 1;
  }
  return r;
}

SparseOp commutator_matrix(const ModelGeometry& geom, const Basis& b, const FunctionSpec& f) {
  const SparseOp M = geom.multiplication_operator(b, f);
  SparseOp out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double li = b.modes()[i].lambda;
    for (const auto& e : M.row(i)) {
      const double lj = b.modes()[e.col].lambda;
      const Complex v = e.value * (li - lj);
      if (v != Complex(0.0)) out.insert(i, e.col, v);
    }
  }
  out.finalize();
  return out;
}

SparseOp d2_commutator_power(const Basis& b, const SparseOp& B, int l) {
  if (l == 0) return B;
  SparseOp out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double mi = b.modes()[i].lambda * b.modes()[i].lambda;
    for (const auto& e : B.row(i)) {
      const double mj = b.modes()[e.col].lambda * b.modes()[e.col].lambda;
      const Complex v = e.value * std::pow(mi - mj, l);
      if (v != Complex(0.0)) out.insert(i, e.col, v);
    }
  }
  out.finalize();
  return out;
}

namespace {

int padding_for(const std::vector<FunctionSpec>& fs) {
  int pad = 0;
  for (int axis = 0; axis < 3; ++axis) {
    int s = 0;
    for (const auto& f : fs) s += f.max_abs_frequency(axis);
    pad = std::max(pad, s);
  }
  return pad;
}

SparseOp restrict_rows_to_core(const Basis& b, const SparseOp& op) {
  SparseOp out(op.size());
  for (std::size_t i = 0; i < op.size(); ++i) {
    if (!b.is_core(i)) continue;
    for (const auto& e : op.row(i)) out.insert(i, e.col, e.value);
  }
  out.finalize();
  return out;
}

// trace path (i, j1..jk) with the product of matrix weights; the heat factor
// exponents attach to mu at (j1..jk, i)
struct PathSet {
  std::vector<Complex> weight;
  std::vector<std::size_t> idx;  // stride k+1: j1..jk, i
  int k = 0;
};

// js holds j1..jm with current = jm; the factors T, A_1..A_{m-1} are already
// consumed and A_m is next. At m = k the last factor must close the cycle.
void walk_paths(const std::vector<const SparseOp*>& as, std::size_t m, std::size_t start,
                std::size_t current, Complex w, std::vector<std::size_t>& js, PathSet& out) {
  if (m == as.size()) {
    const Complex v = as[m - 1]->coeff(current, start);
    if (v == Complex(0.0)) return;
    out.weight.push_back(w * v);
    out.idx.insert(out.idx.end(), js.begin(), js.end());
    out.idx.push_back(start);
    return;
  }
  for (const auto& e : as[m - 1]->row(current)) {
    js.push_back(e.col);
    walk_paths(as, m + 1, start, e.col, w * e.value, js, out);
    js.pop_back();
  }
}

PathSet enumerate_paths(const Basis& b, const SparseOp& T,
                        const std::vector<SparseOp>& commutators) {
  PathSet out;
  out.k = static_cast<int>(commutators.size());
  if (out.k == 0) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!b.is_core(i)) continue;
      const Complex d = T.coeff(i, i);
      if (d == Complex(0.0)) continue;
      out.weight.push_back(d);
      out.idx.push_back(i);
    }
    return out;
  }
  std::vector<const SparseOp*> as;
  for (const auto& c : commutators) as.push_back(&c);
  std::vector<std::size_t> js;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!b.is_core(i)) continue;
    for (const auto& e : T.row(i)) {
      js.assign({e.col});
      walk_paths(as, 1, i, e.col, e.value, js, out);
    }
  }
  return out;
}

// ordered-simplex Gauss-Legendre nodes: 0 <= s1 <= ... <= sk <= 1
struct SimplexNodes {
  std::vector<double> s;  // stride k
  std::vector<double> w;
};

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  // nodes of P_n on [-1,1] by Newton from Chebyshev initial guesses
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) {
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        break;
      }
    }
  }
}

void build_simplex_nodes(int k, int n, int depth, std::vector<double>& point, double upper,
                         double weight, const std::vector<double>& gx,
                         const std::vector<double>& gw, SimplexNodes& out) {
  if (depth == k) {
    out.s.insert(out.s.end(), point.begin(), point.end());
    out.w.push_back(weight);
    return;
  }
  // integrate s_{k-depth} over [0, upper]: point is filled from the top down
  for (int i = 0; i < n; ++i) {
    const double s = upper * 0.5 * (gx[i] + 1.0);
    point[k - 1 - depth] = s;
    build_simplex_nodes(k, n, depth + 1, point, s, weight * upper * 0.5 * gw[i], gx, gw, out);
  }
}

SimplexNodes simplex_nodes(int k, int nodes_per_dim) {
  SimplexNodes out;
  std::vector<double> gx, gw;
  gauss_legendre(nodes_per_dim, gx, gw);
  std::vector<double> point(k, 0.0);
  build_simplex_nodes(k, nodes_per_dim, 0, point, 1.0, 1.0, gx, gw, out);
  return out;
}

Complex evaluate_at_nodes(const PathSet& paths, const std::vector<double>& mu, double t,
                          const SimplexNodes& nodes, Exec ex) {
  const int k = paths.k;
  const std::size_t npaths = paths.weight.size();
  const std::size_t nnodes = nodes.w.size();
  if (k == 0) {
    return indexed_sum<Complex>(
        npaths,
        [&](std::size_t p) { return paths.weight[p] * std::exp(-t * mu[paths.idx[p]]); },
        ex);
  }
  return indexed_sum<Complex>(
      nnodes,
      [&](std::size_t node) {
        const double* s = nodes.s.data() + node * k;
        Complex acc = 0.0;
        for (std::size_t p = 0; p < npaths; ++p) {
          const std::size_t* ix = paths.idx.data() + p * (k + 1);
          double expo = 0.0;
          double prev = 0.0;
          for (int j = 0; j < k; ++j) {
            expo += (s[j] - prev) * mu[ix[j]];
            prev = s[j];
          }
          expo += (1.0 - prev) * mu[ix[k]];
          acc += paths.weight[p] * std::exp(-t * expo);
        }
        return nodes.w[node] * acc;
      },
      ex);
}

}  // namespace

JLOResult jlo_ch_k(const ModelGeometry& geom, const std::vector<FunctionSpec>& fs, double t,
                   const SimplexQuadrature& quad, Exec ex) {
  if (fs.empty()) throw std::invalid_argument("jlo_ch_k needs k+1 functions");
  const int k = static_cast<int>(fs.size()) - 1;
  if (k % 2 != 0) throw std::invalid_argument("jlo_ch_k is defined for even k");
  if (t <= 0.0) throw std::invalid_argument("jlo_ch_k needs t > 0");

  JLOResult res;
  res.k = k;
  res.t = t;
  res.basis_cutoff = geom.cutoff();
  for (std::size_t i = 0; i < fs.size(); ++i)
    if (!fs[i].tau_invariant(geom.reflection_axis()))
      res.warnings.push_back("function " + std::to_string(i) +
                             " is not invariant under the involution");

  const Basis b = geom.make_basis(padding_for(fs));
  std::vector<double> mu(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    mu[i] = b.modes()[i].lambda * b.modes()[i].lambda;

  const SparseOp T =
      restrict_rows_to_core(b, geom.tau_matrix(b).multiply(geom.multiplication_operator(b, fs[0])));
  std::vector<SparseOp> commutators;
  for (int j = 1; j <= k; ++j) commutators.push_back(commutator_matrix(geom, b, fs[j]));

  const PathSet paths = enumerate_paths(b, T, commutators);
  const double pref = std::pow(t, k / 2.0);
  if (k == 0) {
    res.value = pref * evaluate_at_nodes(paths, mu, t, SimplexNodes{}, ex);
    res.quadrature_error = 0.0;
    return res;
  }
  const SimplexNodes fine = simplex_nodes(k, quad.nodes_per_dim);
  const Complex vf = evaluate_at_nodes(paths, mu, t, fine, ex);
  const int coarse_n = std::max(2, quad.nodes_per_dim / 2);
  const SimplexNodes coarse = simplex_nodes(k, coarse_n);
  const Complex vc = evaluate_at_nodes(paths, mu, t, coarse, ex);
  res.value = pref * vf;
  res.quadrature_error = std::abs(pref * (vf - vc));
  return res;
}

Complex d_lambda_supertrace(const ModelGeometry& geom, const std::vector<FunctionSpec>& fs,
                            const LambdaMulti& lambda, double t, Exec ex) {
  const int p = lambda.order();
  if (static_cast<int>(fs.size()) != p + 1)
    throw std::invalid_argument("d_lambda_supertrace needs p+1 functions for lambda of order p");
  if (t <= 0.0) throw std::invalid_argument("d_lambda_supertrace needs t > 0");
  const Basis b = geom.make_basis(padding_for(fs));
  const SparseOp T =
      restrict_rows_to_core(b, geom.tau_matrix(b).multiply(geom.multiplication_operator(b, fs[0])));
  SparseOp X = T;
  for (int j = 1; j <= p; ++j) {
    SparseOp Bj = d2_commutator_power(b, commutator_matrix(geom, b, fs[j]), lambda.lambda[j - 1]);
    X = X.multiply(Bj);
  }
  const Complex trace = indexed_sum<Complex>(
      b.size(),
      [&](std::size_t i) {
        if (!b.is_core(i)) return Complex(0.0);
        const Complex d = X.coeff(i, i);
        if (d == Complex(0.0)) return Complex(0.0);
        const double lam = b.modes()[i].lambda;
        return d * std::exp(-t * lam * lam);
      },
      ex);
  return std::pow(t, p / 2.0 + lambda.weight()) * trace;
}

namespace {

// integral over one flat component of f0 df1 ^ ... ^ dfk in its cyclic
// coordinate orientation (reflected axis r orients the pair as (r+1, r+2))
Complex component_form_integral(const ModelGeometry& geom, const FixedComponentSpec& comp,
                                const std::array<double, 3>& position,
                                const std::vector<FunctionSpec>& fs, int k) {
  const int dim = comp.dim_f;
  if (k != dim) return 0.0;  // flat components: only the top insertion survives
  if (dim != 0 && dim != 2)
    throw std::invalid_argument("flat components of dim > 2 are not supported");
  const int r = geom.reflection_axis();
  std::vector<FunctionSpec> restricted;
  for (const auto& f : fs) restricted.push_back(f.restricted(r, position[r]));
  if (dim == 0) return restricted[0].eval(position) * comp.volume;

  const int a1 = (r + 1) % 3, a2 = (r + 2) % 3;
  int maxfreq = 2;
  for (const auto& f : restricted)
    maxfreq += f.max_abs_frequency(a1) + f.max_abs_frequency(a2);
  const int M = 2 * maxfreq + 2;
  const double h = 2 * kPi / M;
  // f0 (d f1 / d a1 * d f2 / d a2 - d f1 / d a2 * d f2 / d a1), trapezoid
  const FunctionSpec d11 = restricted[1].derivative(a1), d12 = restricted[1].derivative(a2);
  const FunctionSpec d21 = restricted[2].derivative(a1), d22 = restricted[2].derivative(a2);
  Complex sum = 0.0;
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < M; ++j) {
      std::array<double, 3> x = position;
      x[a1] = i * h;
      x[a2] = j * h;
      sum += restricted[0].eval(x) * (d11.eval(x) * d22.eval(x) - d12.eval(x) * d21.eval(x));
    }
  }
  return sum * h * h;
}

}  // namespace

Complex limit_rhs(const ModelGeometry& geom, const std::vector<FunctionSpec>& fs, int k) {
  if (k % 2 != 0) throw std::invalid_argument("limit_rhs is defined for even k");
  if (static_cast<int>(fs.size()) != k + 1)
    throw std::invalid_argument("limit_rhs needs k+1 functions");
  const auto& comps = geom.fixed_components();
  validate(comps);
  int m1 = 0;
  for (const auto& c : comps) m1 = std::max(m1, c.m());
  // 1/(k! (2 pi i)^{k/2})
  std::int64_t kfact = 1;
  for (int i = 2; i <= k; ++i) kfact *= i;
  Complex tp(1.0);
  const Complex two_pi_i(0.0, 2 * kPi);
  for (int i = 0; i < k / 2; ++i) tp *= two_pi_i;
  const Complex prefactor = 1.0 / (static_cast<double>(kfact) * tp);

  Complex sum = 0.0;
  for (std::size_t q = 0; q < comps.size(); ++q) {
    const auto& c = comps[q];
    const double phase = ((m1 - c.m()) / 2) % 2 == 0 ? 1.0 : -1.0;
    const double class_const = std::pow(2.0, -c.m());
    const Complex integral =
        component_form_integral(geom, c, geom.fixed_point_positions()[q], fs, k);
    sum += c.orientation_sign * phase * 0.5 * class_const * integral;
  }
  return prefactor * sum;
}

Extrapolation extrapolate_to_zero(const HeatCurve& curve, double power,
                                  double noise_tolerance) {
  curve.validate();
  const std::size_t n = curve.samples.size();
  if (n < 3)
    throw std::invalid_argument("extrapolation needs at least 3 samples of decreasing t");
  std::vector<double> h(n);
  std::vector<Complex> tab(n);
  for (std::size_t i = 0; i < n; ++i) {
    h[i] = std::pow(curve.samples[i].first, power);
    tab[i] = curve.samples[i].second;
  }
  // Neville evaluation at h = 0; corrections tracked per column
  Complex previous = tab[0];
  double prev_corr = -1.0;
  Extrapolation out;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i + j < n; ++i)
      tab[i] = ((0.0 - h[i + j]) * tab[i] - (0.0 - h[i]) * tab[i + 1]) / (h[i] - h[i + j]);
    const double corr = std::abs(tab[0] - previous);
    if (prev_corr >= 0.0 && corr > prev_corr && corr > noise_tolerance)
      throw ConvergenceError("extrapolation corrections grow: noise above tolerance");
    previous = tab[0];
    prev_corr = corr;
  }
  out.value = tab[0];
  out.error_bar = prev_corr < 0.0 ? 0.0 : prev_corr;
  return out;
}

}  // namespace oddlef
