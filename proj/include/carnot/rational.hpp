#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace carnot {

// Arbitrary-precision rationals, always kept canonical.
using Rational = mpq_class;

// Accepts "7", "-3/4", "0.125" (decimals are converted exactly).
Rational parse_rational(std::string_view text);

// "3/4", "-2", "0".
std::string to_string(const Rational& q);

// num/den in lowest terms. mpq_class's two-argument constructor does not
// reduce, and unreduced values compare unequal to reduced ones.
inline Rational ratio(const mpz_class& num, const mpz_class& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace carnot
