#include "oddlef/charclass.hpp"

#include <algorithm>

namespace oddlef {

RootSet RootSet::make(int n_tangent, int m_normal) {
  if (n_tangent < 0 || m_normal < 0) throw SeriesError("root counts must be nonnegative");
  RootSet r;
  for (int i = 1; i <= n_tangent; ++i) r.tangent.push_back("u" + std::to_string(i));
  for (int i = 1; i <= m_normal; ++i) r.normal.push_back("v" + std::to_string(i));
  return r;
}

VariableSet RootSet::variables() const {
  std::vector<std::string> names = tangent;
  names.insert(names.end(), normal.begin(), normal.end());
  return VariableSet::roots(std::move(names));
}

VariableSet RootSet::pontryagin_variables() const {
  std::vector<std::string> names;
  std::vector<int> degrees;
  for (std::size_t i = 1; i <= tangent.size(); ++i) {
    names.push_back("pT" + std::to_string(i));
    degrees.push_back(4 * static_cast<int>(i));
  }
  for (std::size_t i = 1; i <= normal.size(); ++i) {
    names.push_back("pN" + std::to_string(i));
    degrees.push_back(4 * static_cast<int>(i));
  }
  return VariableSet(std::move(names), std::move(degrees));
}

namespace {

// (x/2)/sinh(x/2) for the root at position idx: the reciprocal of
// sum_k x^{2k} / (4^k (2k+1)!), inverted degreewise with exact rationals.
GradedSeries ahat_factor(const VariableSet& vars, std::size_t idx, int cap) {
  GradedSeries denom(vars, cap);
  Exponents e(vars.size(), 0);
  for (int k = 0; 4 * k <= cap; ++k) {
    e[idx] = static_cast<unsigned>(2 * k);
    Rational c = Rational(1) / (Rational(BigInt(1) << (2 * k)) * Rational(factorial(2 * k + 1)));
    denom.add_term(e, c);
  }
  return invert(denom);
}

// e^{v/2} + e^{-v/2} via the exponential series
GradedSeries ch_delta_factor(const VariableSet& vars, std::size_t idx, int cap) {
  GradedSeries half(vars, cap);
  Exponents e(vars.size(), 0);
  e[idx] = 1;
  half.add_term(e, Rational(1, 2));
  return add(exp_series(half), exp_series(scale(half, Rational(-1))));
}

}  // namespace

GradedSeries ahat_series(const RootSet& roots, int cap) {
  VariableSet vars = roots.variables();
  GradedSeries out = GradedSeries::constant(vars, cap, Rational(1));
  for (std::size_t i = 0; i < roots.tangent.size(); ++i)
    out = mul(out, ahat_factor(vars, i, cap));
  return out;
}

GradedSeries ch_delta(const RootSet& roots, int cap) {
  VariableSet vars = roots.variables();
  GradedSeries out = GradedSeries::constant(vars, cap, Rational(1));
  for (std::size_t i = 0; i < roots.normal.size(); ++i)
    out = mul(out, ch_delta_factor(vars, roots.tangent.size() + i, cap));
  return out;
}

GradedSeries ch_delta_inverse(const RootSet& roots, int cap) {
  return invert(ch_delta(roots, cap));
}

GradedSeries local_density(const RootSet& roots, int cap) {
  return mul(ahat_series(roots, cap), ch_delta_inverse(roots, cap));
}

namespace {

// elementary symmetric polynomial e_i of the squared roots of one group,
// expressed in the root variables (exponent 2 per chosen root)
GradedSeries elementary_symmetric_sq(const VariableSet& vars, std::size_t offset,
                                     std::size_t count, unsigned i, int cap) {
  GradedSeries out(vars, cap);
  if (i == 0) {
    out.add_term(Exponents(vars.size(), 0), Rational(1));
    return out;
  }
  if (i > count) return out;
  std::vector<unsigned> pick(i);
  // iterate over i-subsets of {0..count-1}
  for (unsigned j = 0; j < i; ++j) pick[j] = j;
  while (true) {
    Exponents e(vars.size(), 0);
    for (unsigned j = 0; j < i; ++j) e[offset + pick[j]] = 2;
    out.add_term(e, Rational(1));
    // next subset
    int pos = static_cast<int>(i) - 1;
    while (pos >= 0 && pick[pos] == count - i + pos) --pos;
    if (pos < 0) break;
    ++pick[pos];
    for (unsigned j = pos + 1; j < i; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

struct GroupView {
  std::size_t offset;
  std::size_t count;
};

}  // namespace

GradedSeries roots_to_pontryagin(const GradedSeries& s, const RootSet& roots) {
  const VariableSet vars = roots.variables();
  if (!(s.variables() == vars))
    throw SeriesError("series does not use the variables of the given root set");
  const std::size_t nt = roots.tangent.size();
  const std::size_t nn = roots.normal.size();
  const GroupView groups[2] = {{0, nt}, {nt, nn}};

  // evenness: only even exponents may appear (sign-flip invariance)
  for (const auto& [e, c] : s.terms())
    for (unsigned x : e)
      if (x % 2 != 0) throw SeriesError("series is not even in every root");

  // symmetry within each group: coefficient must match the one of the
  // descending-sorted exponent pattern
  for (const auto& [e, c] : s.terms()) {
    Exponents rep = e;
    for (const auto& g : groups)
      std::sort(rep.begin() + g.offset, rep.begin() + g.offset + g.count,
                std::greater<unsigned>());
    if (s.coefficient(rep) != c)
      throw SeriesError("series is not symmetric under root permutations");
  }

  const VariableSet pvars = roots.pontryagin_variables();
  const int cap = s.degree_cap();
  GradedSeries out(pvars, cap);
  GradedSeries rem = s;

  // Gauss reduction: repeatedly cancel the lex-greatest monomial with the
  // matching product of elementary symmetric polynomials in squared roots.
  while (!rem.is_zero()) {
    auto it = std::prev(rem.terms().end());  // lex-greatest key
    const Exponents lead = it->first;
    const Rational c = it->second;
    Exponents pexp(pvars.size(), 0);
    GradedSeries prod = GradedSeries::constant(vars, cap, Rational(1));
    for (std::size_t g = 0; g < 2; ++g) {
      const auto& gv = groups[g];
      std::vector<unsigned> sq(gv.count);
      for (std::size_t j = 0; j < gv.count; ++j) sq[j] = lead[gv.offset + j] / 2;
      std::sort(sq.begin(), sq.end(), std::greater<unsigned>());
      for (std::size_t j = 0; j < gv.count; ++j) {
        unsigned power = sq[j] - (j + 1 < gv.count ? sq[j + 1] : 0);
        if (power == 0) continue;
        pexp[gv.offset + j] = power;
        GradedSeries ei = elementary_symmetric_sq(vars, gv.offset, gv.count,
                                                  static_cast<unsigned>(j + 1), cap);
        for (unsigned p = 0; p < power; ++p) prod = mul(prod, ei);
      }
    }
    out.add_term(pexp, c);
    rem = sub(rem, scale(prod, c));
  }
  return out;
}

GradedSeries pontryagin_to_roots(const GradedSeries& p, const RootSet& roots, int cap) {
  const VariableSet vars = roots.variables();
  const VariableSet pvars = roots.pontryagin_variables();
  if (!(p.variables() == pvars))
    throw SeriesError("series does not use the Pontryagin variables of the root set");
  const std::size_t nt = roots.tangent.size();
  GradedSeries out(vars, cap);
  for (const auto& [e, c] : p.terms()) {
    GradedSeries term = GradedSeries::constant(vars, cap, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      const bool tangent_group = i < nt;
      const std::size_t offset = tangent_group ? 0 : nt;
      const std::size_t count = tangent_group ? nt : roots.normal.size();
      const unsigned order = static_cast<unsigned>(tangent_group ? i + 1 : i - nt + 1);
      GradedSeries ei = elementary_symmetric_sq(vars, offset, count, order, cap);
      for (unsigned q = 0; q < e[i]; ++q) term = mul(term, ei);
    }
    out = add(out, term);
  }
  return out;
}

}  // namespace oddlef
