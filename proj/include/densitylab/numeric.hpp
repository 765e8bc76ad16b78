#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace densitylab {

// Naturals and integers share one arbitrary-precision type; domain
// functions document which values they accept.
using Natural = mpz_class;
using Integer = mpz_class;
using Rational = mpq_class;

Natural factorial(unsigned long n);

/// Canonical text form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Rational parse_rational(std::string_view text);
Natural parse_natural(std::string_view text);

Rational make_rational(long num, long den = 1);
/// Canonical num/den.
Rational ratio(const Integer& num, const Integer& den);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

/// Only for values already known to fit; throws otherwise.
std::uint64_t to_u64(const Natural& n);
bool fits_u64(const Natural& n);

Integer lcm_of(const Integer& a, const Integer& b);

}  // namespace densitylab
