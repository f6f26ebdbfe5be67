#pragma once

#include <gmpxx.h>

#include <string>

namespace dppc {

// Dyadic rational m * 2^e in canonical form: m odd, or m = 0 and e = 0.
// Addition and multiplication are exact; precision is controlled solely by
// the explicit truncate steps.
struct Dyadic {
  mpz_class m;
  long e = 0;
};

Dyadic dyadic(long value);
Dyadic dyadic(mpz_class mantissa, long exponent);

Dyadic operator+(const Dyadic& a, const Dyadic& b);
Dyadic operator-(const Dyadic& a, const Dyadic& b);
Dyadic operator*(const Dyadic& a, const Dyadic& b);
bool operator==(const Dyadic& a, const Dyadic& b);

// negative / zero / positive as -1 / 0 / +1
int sign(const Dyadic& a);
int compare(const Dyadic& a, const Dyadic& b);

mpq_class to_rational(const Dyadic& a);

// Round toward zero keeping `bits` fractional binary digits.
Dyadic truncate(const Dyadic& a, unsigned long bits);
Dyadic truncate(const mpq_class& q, unsigned long bits);

// Some s with 2^-s <= a, the smallest derivable from the leading mantissa
// bit (so at most one above optimal); requires a > 0. Turns a positive
// lower bound into a power-of-two one.
unsigned long lower_bound_exponent(const Dyadic& a);

// Decimal rendering truncated to `digits` fractional digits; requires a >= 0.
std::string to_decimal(const Dyadic& a, std::size_t digits);

}  // namespace dppc
