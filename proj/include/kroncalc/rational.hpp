#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace kroncalc {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVec = std::vector<long>;
using RatVec = std::vector<Rational>;

// "p" or "p/q"
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);
Rational parse_rational(std::string_view s);

Rational make_rational(long num, long den = 1);

Integer binomial(long n, long k);
Integer factorial(long n);

long lcm_long(long a, long b);
long gcd_long(long a, long b);

}  // namespace kroncalc
