#include "oddlef/lefschetz.hpp"

namespace oddlef {

double FixedComponentSpec::char_number(const std::string& monomial) const {
  if (flat) {
    if (monomial == "1" && dim_f == 0) return volume;
    return 0.0;
  }
  auto it = char_numbers.find(monomial);
  return it == char_numbers.end() ? 0.0 : it->second;
}

std::string pontryagin_monomial_key(const VariableSet& pvars, const Exponents& e) {
  std::string key;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!key.empty()) key += "*";
    key += pvars.name(i);
    if (e[i] > 1) key += "^" + std::to_string(e[i]);
  }
  return key.empty() ? "1" : key;
}

void validate(const std::vector<FixedComponentSpec>& components) {
  if (components.empty())
    throw ValidationError("EmptyComponentList", "at least one fixed component is required");
  for (const auto& c : components) {
    if (c.codim < 1 || c.codim % 2 == 0)
      throw ValidationError("CodimParity",
                            "component " + c.name + " has even or nonpositive codim " +
                                std::to_string(c.codim));
    if (c.dim_f < 0 || c.dim_f % 2 != 0)
      throw ValidationError("CodimParity", "component " + c.name + " has odd or negative dim " +
                                               std::to_string(c.dim_f));
    if (c.orientation_sign != 1 && c.orientation_sign != -1)
      throw ValidationError("CodimParity",
                            "component " + c.name + " needs orientation sign +1 or -1");
  }
  const auto& first = components.front();
  for (const auto& c : components) {
    if ((c.codim - first.codim) % 4 != 0)
      throw ValidationError("CodimMod4Mismatch",
                            "components " + first.name + " and " + c.name + " have codims " +
                                std::to_string(first.codim) + " and " + std::to_string(c.codim) +
                                " not congruent mod 4");
    if (c.dim_f + c.codim != first.dim_f + first.codim)
      throw ValidationError("AmbientMismatch",
                            "components " + first.name + " and " + c.name +
                                " imply ambient dims " +
                                std::to_string(first.dim_f + first.codim) + " and " +
                                std::to_string(c.dim_f + c.codim));
  }
}

double component_contribution(const FixedComponentSpec& spec, int m1) {
  const int mq = spec.m();
  if ((m1 - mq) % 2 != 0)
    throw ValidationError("CodimMod4Mismatch",
                          "odd phase exponent m1 - mq for component " + spec.name +
                              "; run validate first");
  const int np = spec.dim_f / 2;
  const RootSet roots = RootSet::make(np, mq);
  const GradedSeries density = local_density(roots, spec.dim_f);
  const GradedSeries top = extract_degree(density, spec.dim_f);
  const GradedSeries pbasis = roots_to_pontryagin(top, roots);
  const VariableSet pvars = roots.pontryagin_variables();
  double pairing = 0.0;
  for (const auto& [e, c] : pbasis.terms())
    pairing += to_double(c) * spec.char_number(pontryagin_monomial_key(pvars, e));
  const double phase = ((m1 - mq) / 2) % 2 == 0 ? 1.0 : -1.0;
  return spec.orientation_sign * 0.5 * phase * pairing;
}

LefschetzReport lefschetz_index(const std::vector<FixedComponentSpec>& components) {
  validate(components);
  LefschetzReport report;
  for (const auto& c : components) report.m1 = std::max(report.m1, c.m());
  for (const auto& c : components) {
    double v = component_contribution(c, report.m1);
    report.contributions.emplace_back(c.name, v);
    report.total += v;
  }
  report.notes.push_back("m1 = " + std::to_string(report.m1) +
                         " (maximum normal count over components)");
  return report;
}

int grading_dependence(int m_i, int m_1) {
  if ((m_i - m_1) % 2 != 0)
    throw ValidationError("CodimMod4Mismatch", "grading rebase requires m_i = m_1 mod 2");
  return ((m_i - m_1) % 4 + 4) % 4;
}

LefschetzReport rebase_grading(const LefschetzReport& report, int m_i) {
  const int exponent = grading_dependence(m_i, report.m1);
  const double sign = exponent == 0 ? 1.0 : -1.0;
  LefschetzReport out = report;
  for (auto& [name, v] : out.contributions) v *= sign;
  out.total *= sign;
  out.notes.push_back("grading rebased to m_i = " + std::to_string(m_i) +
                      ", every contribution scaled by " + (sign > 0 ? "+1" : "-1"));
  return out;
}

}  // namespace oddlef
