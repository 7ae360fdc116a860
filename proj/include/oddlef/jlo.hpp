#pragma once

#include "oddlef/mehler.hpp"
#include "oddlef/spectral.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace oddlef {

// nonnegative multi-index (lambda_1, ..., lambda_p)
struct LambdaMulti {
  std::vector<int> lambda;
  int order() const { return static_cast<int>(lambda.size()); }
  int weight() const;  // |lambda|
};

// lambda(p)! = prod_i lambda_i!
std::int64_t lambda_factorial(const LambdaMulti& l);
// lambda~(p)! = (l1+1)(l1+l2+2)...(l1+...+lp+p)
std::int64_t lambda_tilde_factorial(const LambdaMulti& l);

struct SimplexQuadrature {
  int nodes_per_dim = 8;
};

struct JLOResult {
  int k = 0;
  double t = 0.0;
  Complex value;
  double quadrature_error = 0.0;
  int basis_cutoff = 0;
  std::vector<std::string> warnings;
};

// [D, M_f] = D M_f - M_f D on the given basis; exact matrix elements since D
// is diagonal in the eigenbasis.
SparseOp commutator_matrix(const ModelGeometry& geom, const Basis& b, const FunctionSpec& f);

// l-fold iterated commutator [D^2, .] applied to B: entries scale by
// (lambda_i^2 - lambda_j^2)^l.
SparseOp d2_commutator_power(const Basis& b, const SparseOp& B, int l);

// Deformed Chern-Connes character
//   t^{k/2} int_{simplex} str(a0 e^{-s1 t D^2} [D,a1] ... [D,ak] e^{-(1-sk) t D^2}) ds
// evaluated with iterated Gauss-Legendre quadrature on the ordered simplex.
// fs holds the k+1 functions a0..ak; k must be even. Functions that are not
// invariant under the involution produce a warning, not an error.
JLOResult jlo_ch_k(const ModelGeometry& geom, const std::vector<FunctionSpec>& fs, double t,
                   const SimplexQuadrature& quad = {}, Exec ex = Exec::parallel);

// str(tau D^lambda_t e^{-t D^2}) with
//   D^lambda = f0 [c(df1)]^{[lambda_1]} ... [c(dfp)]^{[lambda_p]},
//   D^lambda_t = t^{p/2+|lambda|} D^lambda, c(df) = [D, f].
Complex d_lambda_supertrace(const ModelGeometry& geom, const std::vector<FunctionSpec>& fs,
                            const LambdaMulti& lambda, double t, Exec ex = Exec::parallel);

// Local limit of the degree-k character:
//   (1/(k! (2 pi i)^{k/2})) sum_q sign_q ((i)^{m1-mq}/2) int_{F_q}
//       f0 df1 ^ ... ^ dfk ^ Ahat(TF_q) chDelta(N_q)^{-1}.
// For the flat built-in geometries the class factor contributes its constant
// term 2^{-mq} and the form integral is evaluated by tensor-grid quadrature
// over each component with its cyclic coordinate orientation.
Complex limit_rhs(const ModelGeometry& geom, const std::vector<FunctionSpec>& fs, int k);

struct Extrapolation {
  Complex value;
  double error_bar = 0.0;
};

// Richardson/Neville extrapolation of a curve sampled at decreasing t to
// t = 0, in powers of t^power (default sqrt t). Needs >= 3 samples. When the
// Neville corrections stop decreasing and exceed noise_tolerance the curve is
// considered noise-dominated.
Extrapolation extrapolate_to_zero(const HeatCurve& curve, double power = 0.5,
                                  double noise_tolerance = 1e300);

}  // namespace oddlef
