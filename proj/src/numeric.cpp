#include "tkft/numeric.hpp"

namespace tkft {

Rational pow3(std::int64_t e) {
  Natural p = 1;
  const auto n = static_cast<unsigned>(e < 0 ? -e : e);
  p = boost::multiprecision::pow(Natural(3), n);
  return e < 0 ? Rational(Natural(1), p) : Rational(p);
}

std::string to_string(const Rational& q) { return q.str(); }

}  // namespace tkft
