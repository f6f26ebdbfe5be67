#include "dppc/dyadic.hpp"

#include <cassert>

#include "dppc/error.hpp"

namespace dppc {

namespace {

Dyadic normalized(mpz_class m, long e) {
  if (m == 0) return {0, 0};
  mp_bitcnt_t low = mpz_scan1(m.get_mpz_t(), 0);
  if (low > 0) {
    mpz_tdiv_q_2exp(m.get_mpz_t(), m.get_mpz_t(), low);
    e += long(low);
  }
  return {std::move(m), e};
}

}  // namespace

Dyadic dyadic(long value) { return normalized(mpz_class(value), 0); }
Dyadic dyadic(mpz_class mantissa, long exponent) {
  return normalized(std::move(mantissa), exponent);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.m == 0) return b;
  if (b.m == 0) return a;
  long e = std::min(a.e, b.e);
  mpz_class ma = a.m, mb = b.m;
  mpz_mul_2exp(ma.get_mpz_t(), ma.get_mpz_t(), mp_bitcnt_t(a.e - e));
  mpz_mul_2exp(mb.get_mpz_t(), mb.get_mpz_t(), mp_bitcnt_t(b.e - e));
  return normalized(ma + mb, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + Dyadic{-b.m, b.e}; }

Dyadic operator*(const Dyadic& a, const Dyadic& b) { return normalized(a.m * b.m, a.e + b.e); }

bool operator==(const Dyadic& a, const Dyadic& b) { return a.e == b.e && a.m == b.m; }

int sign(const Dyadic& a) { return sgn(a.m); }

int compare(const Dyadic& a, const Dyadic& b) { return sign(a - b); }

mpq_class to_rational(const Dyadic& a) {
  mpq_class q(a.m);
  if (a.e >= 0)
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), mp_bitcnt_t(a.e));
  else
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), mp_bitcnt_t(-a.e));
  return q;
}

Dyadic truncate(const Dyadic& a, unsigned long bits) {
  if (a.e >= -long(bits)) return a;  // already at most `bits` fractional digits
  mpz_class m;
  mpz_tdiv_q_2exp(m.get_mpz_t(), a.m.get_mpz_t(), mp_bitcnt_t(-a.e - long(bits)));
  return normalized(std::move(m), -long(bits));
}

Dyadic truncate(const mpq_class& q, unsigned long bits) {
  mpz_class scaled;
  mpz_mul_2exp(scaled.get_mpz_t(), q.get_num().get_mpz_t(), bits);
  mpz_class m;
  mpz_tdiv_q(m.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  return normalized(std::move(m), -long(bits));
}

unsigned long lower_bound_exponent(const Dyadic& a) {
  check(sign(a) > 0, ErrorKind::validation, "lower_bound_exponent needs a positive value");
  // a = m 2^e >= 2^(e + bitlen(m) - 1), so s = max(0, -(e + bitlen - 1)) works
  long lead = a.e + long(mpz_sizeinbase(a.m.get_mpz_t(), 2)) - 1;
  return lead >= 0 ? 0 : (unsigned long)(-lead);
}

std::string to_decimal(const Dyadic& a, std::size_t digits) {
  check(sign(a) >= 0, ErrorKind::validation, "to_decimal needs a nonnegative value");
  // floor(a * 10^digits), then split off the integer part
  mpz_class scaled;
  mpz_ui_pow_ui(scaled.get_mpz_t(), 10, digits);
  scaled *= a.m;
  if (a.e >= 0)
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), mp_bitcnt_t(a.e));
  else
    mpz_tdiv_q_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), mp_bitcnt_t(-a.e));

  std::string s = scaled.get_str();
  if (digits == 0) return s;
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return s;
}

}  // namespace dppc
