#pragma once

#include "oddlef/charclass.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace oddlef {

struct ValidationError : std::runtime_error {
  ValidationError(std::string kind_, const std::string& what)
      : std::runtime_error(kind_ + ": " + what), kind(std::move(kind_)) {}
  std::string kind;  // CodimParity, CodimMod4Mismatch, AmbientMismatch, EmptyComponentList
};

// One fixed point component F_q of the involution: dim F = 2n', codim = 2m+1.
// char_numbers maps canonical Pontryagin monomials of total form degree dim_f
// (keys like "1", "pT1", "pT1^2*pN1") to the value of their integral over F_q.
// Missing keys pair to zero. flat is a shortcut: all positive-degree
// characteristic numbers vanish and the pairing of 1 is `volume` (which only
// enters the index when dim_f = 0; jlo uses it for function integrals).
struct FixedComponentSpec {
  std::string name;
  int dim_f = 0;
  int codim = 1;
  int orientation_sign = 1;
  bool flat = false;
  double volume = 1.0;
  std::map<std::string, double> char_numbers;

  int m() const { return (codim - 1) / 2; }
  double char_number(const std::string& monomial) const;
};

struct LefschetzReport {
  int m1 = 0;
  std::vector<std::pair<std::string, double>> contributions;
  double total = 0.0;
  std::vector<std::string> notes;
};

// Passes iff all codims are odd, pairwise congruent mod 4, and the ambient
// dimension dim_f + codim is consistent and odd across components.
void validate(const std::vector<FixedComponentSpec>& components);

// orientation_sign * (1/2) * (-1)^{(m1-mq)/2} * <top-degree local density in
// the Pontryagin basis, char_numbers>. Requires m1 - mq even.
double component_contribution(const FixedComponentSpec& spec, int m1);

// Evaluates the fixed point formula; m1 is the maximum m over the components.
LefschetzReport lefschetz_index(const std::vector<FixedComponentSpec>& components);

// Power of sqrt(-1) relating the index computed with the grading based on a
// component with m_i to the one based on m_1; requires m_i = m_1 mod 2.
// The result (m_i - m_1) mod 4 is 0 or 2; applied as (-1)^{(m_i-m_1)/2}.
int grading_dependence(int m_i, int m_1);

// The same report with the grading rebased on a component of normal count m_i.
LefschetzReport rebase_grading(const LefschetzReport& report, int m_i);

// Canonical monomial key for char_numbers given Pontryagin exponents.
std::string pontryagin_monomial_key(const VariableSet& pvars, const Exponents& e);

}  // namespace oddlef
