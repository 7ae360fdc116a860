#pragma once

#include "oddlef/graded_series.hpp"

#include <string>
#include <vector>

namespace oddlef {

// Chern roots of one fixed component: n' tangent roots u1..un' for TF
// (dim F = 2n') and m normal roots v1..vm for N (codim F = 2m+1; the odd
// normal direction carries no root).
struct RootSet {
  std::vector<std::string> tangent;
  std::vector<std::string> normal;

  static RootSet make(int n_tangent, int m_normal);

  // tangent roots followed by normal roots, all of form degree 2
  VariableSet variables() const;
  // Pontryagin variables pT1..pTn', pN1..pNm with form degree 4i
  VariableSet pontryagin_variables() const;
};

// A-hat of TF: prod over tangent roots of (u/2)/sinh(u/2), through cap.
GradedSeries ahat_series(const RootSet& roots, int cap);

// ch-Delta of N: prod over normal roots of (e^{v/2} + e^{-v/2}); the constant
// term is 2^m.
GradedSeries ch_delta(const RootSet& roots, int cap);

GradedSeries ch_delta_inverse(const RootSet& roots, int cap);

// A-hat(TF) * ch-Delta(N)^{-1}, the local integrand of the fixed point formula.
GradedSeries local_density(const RootSet& roots, int cap);

// Rewrites a series that is symmetric in the squared roots of each group in
// terms of Pontryagin classes p_i = e_i(squared roots). The input must be even
// in every root and invariant under permutations within each group (checked).
GradedSeries roots_to_pontryagin(const GradedSeries& s, const RootSet& roots);

// Inverse substitution p_i -> e_i(squared roots).
GradedSeries pontryagin_to_roots(const GradedSeries& p, const RootSet& roots, int cap);

}  // namespace oddlef
