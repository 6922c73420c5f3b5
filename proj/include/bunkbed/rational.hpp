#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bunkbed {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "7", "-3/4", " 1/100 ". Decimals are rejected.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

int sign(const Rational& r);
int sign(const Integer& z);

// floor(r * 10^digits) / 10^digits rendered with exactly `digits` places.
std::string truncate_decimal(const Rational& r, int digits);
Rational floor_to(const Rational& r, int digits);

Rational pow(const Rational& base, unsigned exponent);
Integer pow(const Integer& base, unsigned exponent);

}  // namespace bunkbed
