#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace tkft {

using Natural = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// 3^e as an exact rational; e may be negative.
Rational pow3(std::int64_t e);

inline std::string to_string(const Natural& n) { return n.str(); }
std::string to_string(const Rational& q);

}  // namespace tkft
