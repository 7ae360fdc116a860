#include "oddlef/graded_series.hpp"

#include <algorithm>
#include <sstream>

namespace oddlef {

VariableSet::VariableSet(std::vector<std::string> names, std::vector<int> degrees)
    : names_(std::move(names)), degrees_(std::move(degrees)) {
  if (names_.size() != degrees_.size())
    throw SeriesError("variable names and degrees differ in length");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (degrees_[i] <= 0 || degrees_[i] % 2 != 0)
      throw SeriesError("variable degree must be positive and even: " + names_[i]);
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw SeriesError("duplicate variable name: " + names_[i]);
  }
}

VariableSet VariableSet::roots(std::vector<std::string> names) {
  std::vector<int> degs(names.size(), 2);
  return VariableSet(std::move(names), std::move(degs));
}

GradedSeries::GradedSeries(VariableSet vars, int degree_cap)
    : vars_(std::move(vars)), cap_(degree_cap) {
  if (cap_ < 0) throw SeriesError("degree cap must be nonnegative");
}

GradedSeries GradedSeries::constant(const VariableSet& vars, int cap, const Rational& c) {
  GradedSeries s(vars, cap);
  s.add_term(Exponents(vars.size(), 0), c);
  return s;
}

GradedSeries GradedSeries::monomial(const VariableSet& vars, int cap, const Exponents& e,
                                    const Rational& c) {
  GradedSeries s(vars, cap);
  s.add_term(e, c);
  return s;
}

int GradedSeries::form_degree(const Exponents& e) const {
  if (e.size() != vars_.size()) throw SeriesError("exponent vector has wrong length");
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += static_cast<int>(e[i]) * vars_.degree(i);
  return d;
}

Rational GradedSeries::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational GradedSeries::constant_term() const {
  return coefficient(Exponents(vars_.size(), 0));
}

void GradedSeries::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  if (form_degree(e) > cap_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

GradedSeries GradedSeries::truncated(int new_cap) const {
  GradedSeries out(vars_, new_cap);
  for (const auto& [e, c] : terms_) out.add_term(e, c);
  return out;
}

GradedSeries GradedSeries::homogeneous_part(int d) const {
  GradedSeries out(vars_, cap_);
  for (const auto& [e, c] : terms_)
    if (form_degree(e) == d) out.add_term(e, c);
  return out;
}

bool GradedSeries::operator==(const GradedSeries& o) const {
  return vars_ == o.vars_ && terms_ == o.terms_;
}

std::string GradedSeries::to_text() const {
  if (terms_.empty()) return "0";
  // sort by (form degree, exponents lex)
  std::vector<const std::pair<const Exponents, Rational>*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(), [this](auto* a, auto* b) {
    int da = form_degree(a->first), db = form_degree(b->first);
    if (da != db) return da < db;
    return a->first < b->first;
  });
  std::ostringstream os;
  bool first = true;
  for (auto* t : order) {
    Rational c = t->second;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    std::string mono;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      unsigned e = t->first[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_.name(i);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      os << to_string(c);
    } else if (c == 1) {
      os << mono;
    } else {
      os << to_string(c) << "*" << mono;
    }
    first = false;
  }
  return os.str();
}

namespace {

void require_same_vars(const GradedSeries& a, const GradedSeries& b) {
  if (!(a.variables() == b.variables()))
    throw SeriesError("variable-set mismatch between series operands");
}

}  // namespace

GradedSeries add(const GradedSeries& a, const GradedSeries& b) {
  require_same_vars(a, b);
  GradedSeries out(a.variables(), std::min(a.degree_cap(), b.degree_cap()));
  for (const auto& [e, c] : a.terms()) out.add_term(e, c);
  for (const auto& [e, c] : b.terms()) out.add_term(e, c);
  return out;
}

GradedSeries sub(const GradedSeries& a, const GradedSeries& b) {
  return add(a, scale(b, Rational(-1)));
}

GradedSeries scale(const GradedSeries& a, const Rational& c) {
  GradedSeries out(a.variables(), a.degree_cap());
  for (const auto& [e, k] : a.terms()) out.add_term(e, k * c);
  return out;
}

GradedSeries mul(const GradedSeries& a, const GradedSeries& b) {
  require_same_vars(a, b);
  int cap = std::min(a.degree_cap(), b.degree_cap());
  GradedSeries out(a.variables(), cap);
  const std::size_t n = a.variables().size();
  Exponents e(n);
  for (const auto& [ea, ca] : a.terms()) {
    int da = a.form_degree(ea);
    if (da > cap) continue;
    for (const auto& [eb, cb] : b.terms()) {
      if (da + b.form_degree(eb) > cap) continue;
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

GradedSeries invert(const GradedSeries& a) {
  Rational a0 = a.constant_term();
  if (a0 == 0) throw SeriesError("cannot invert a series with zero constant term");
  const int cap = a.degree_cap();
  // degreewise long division: b_d = -(sum_{0<e<=d} a_e * b_{d-e}) / a_0
  std::map<int, GradedSeries> a_parts;
  for (int d = 2; d <= cap; d += 2) {
    GradedSeries p = a.homogeneous_part(d);
    if (!p.is_zero()) a_parts.emplace(d, std::move(p));
  }
  GradedSeries out = GradedSeries::constant(a.variables(), cap, Rational(1) / a0);
  std::map<int, GradedSeries> b_parts;
  b_parts.emplace(0, out);
  for (int d = 2; d <= cap; d += 2) {
    GradedSeries acc(a.variables(), cap);
    for (const auto& [e, ae] : a_parts) {
      if (e > d) break;
      auto it = b_parts.find(d - e);
      if (it == b_parts.end()) continue;
      acc = add(acc, mul(ae, it->second));
    }
    if (acc.is_zero()) continue;
    GradedSeries bd = scale(acc, Rational(-1) / a0);
    b_parts.emplace(d, bd);
    out = add(out, bd);
  }
  return out;
}

GradedSeries exp_series(const GradedSeries& u) {
  if (u.constant_term() != 0)
    throw SeriesError("exp requires a series with zero constant term");
  const int cap = u.degree_cap();
  GradedSeries out = GradedSeries::constant(u.variables(), cap, Rational(1));
  GradedSeries power = out;
  Rational inv_fact(1);
  // every positive-degree monomial has form degree >= 2, so u^p dies past cap/2
  for (int p = 1; 2 * p <= cap; ++p) {
    power = mul(power, u);
    if (power.is_zero()) break;
    inv_fact /= p;
    out = add(out, scale(power, inv_fact));
  }
  return out;
}

GradedSeries pow_series(const GradedSeries& a, unsigned n) {
  GradedSeries out = GradedSeries::constant(a.variables(), a.degree_cap(), Rational(1));
  for (unsigned i = 0; i < n; ++i) out = mul(out, a);
  return out;
}

GradedSeries extract_degree(const GradedSeries& a, int d) {
  if (d % 2 != 0) throw SeriesError("form degree must be even");
  if (d < 0 || d > a.degree_cap()) throw SeriesError("form degree out of range");
  return a.homogeneous_part(d);
}

double eval_numeric(const GradedSeries& a, const std::map<std::string, double>& assignment) {
  const auto& vars = a.variables();
  std::vector<Rational> values(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = assignment.find(vars.name(i));
    if (it == assignment.end())
      throw SeriesError("missing assignment for variable " + vars.name(i));
    values[i] = rational_from_double(it->second);
  }
  Rational sum(0);
  for (const auto& [e, c] : a.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned p = 0; p < e[i]; ++p) term *= values[i];
    sum += term;
  }
  return to_double(sum);
}

}  // namespace oddlef
