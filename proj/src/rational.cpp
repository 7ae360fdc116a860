#include "oddlef/rational.hpp"

#include <sstream>

namespace oddlef {

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace oddlef
