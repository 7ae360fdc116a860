#pragma once

#include "oddlef/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace oddlef {

struct SeriesError : std::runtime_error {
  explicit SeriesError(const std::string& what) : std::runtime_error(what) {}
};

// Ordered set of named commuting variables, each carrying a positive even
// form degree. Chern roots have degree 2; Pontryagin classes p_i degree 4i.
class VariableSet {
 public:
  VariableSet() = default;
  VariableSet(std::vector<std::string> names, std::vector<int> degrees);

  // All-degree-2 variables (the root convention).
  static VariableSet roots(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  int degree(std::size_t i) const { return degrees_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const VariableSet& o) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> degrees_;
};

using Exponents = std::vector<unsigned>;

// Truncated power series with exact rational coefficients in the variables
// of a VariableSet. Invariants: every stored monomial has total form degree
// <= degree_cap, no zero coefficients are stored, and exponent keys follow
// the fixed variable order, so equality is structural.
class GradedSeries {
 public:
  GradedSeries(VariableSet vars, int degree_cap);

  static GradedSeries constant(const VariableSet& vars, int cap, const Rational& c);
  static GradedSeries monomial(const VariableSet& vars, int cap, const Exponents& e,
                               const Rational& c);

  const VariableSet& variables() const { return vars_; }
  int degree_cap() const { return cap_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int form_degree(const Exponents& e) const;
  Rational coefficient(const Exponents& e) const;
  Rational constant_term() const;

  // Adds c * x^e, dropping the term if it cancels or exceeds the cap.
  void add_term(const Exponents& e, const Rational& c);

  GradedSeries truncated(int new_cap) const;
  GradedSeries homogeneous_part(int form_degree) const;

  bool operator==(const GradedSeries& o) const;

  // Sorted plain-text monomial list, e.g. "1 - 1/24*u1^2 + 7/5760*u1^4".
  std::string to_text() const;

 private:
  VariableSet vars_;
  int cap_ = 0;
  std::map<Exponents, Rational> terms_;
};

GradedSeries add(const GradedSeries& a, const GradedSeries& b);
GradedSeries sub(const GradedSeries& a, const GradedSeries& b);
GradedSeries mul(const GradedSeries& a, const GradedSeries& b);
GradedSeries scale(const GradedSeries& a, const Rational& c);

// Multiplicative inverse through the cap; requires nonzero constant term.
GradedSeries invert(const GradedSeries& a);

// exp of a series with zero constant term, truncated at the cap.
GradedSeries exp_series(const GradedSeries& u);

GradedSeries pow_series(const GradedSeries& a, unsigned n);

// Extracts the homogeneous degree-d part (d even, 0 <= d <= cap).
GradedSeries extract_degree(const GradedSeries& a, int d);

// Substitutes real values for all variables; the sum is carried out in exact
// rational arithmetic and converted to double once at the end.
double eval_numeric(const GradedSeries& a, const std::map<std::string, double>& assignment);

}  // namespace oddlef
