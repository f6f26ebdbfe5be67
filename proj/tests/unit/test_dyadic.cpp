#include "dppc/dyadic.hpp"

#include <random>

#include "doctest.h"
#include "dppc/error.hpp"

using namespace dppc;

TEST_CASE("dyadic construction is canonical") {
  CHECK(dyadic(0).m == 0);
  CHECK(dyadic(0).e == 0);
  CHECK(dyadic(12).m == 3);
  CHECK(dyadic(12).e == 2);
  CHECK(dyadic(mpz_class(12), -2).m == 3);
  CHECK(dyadic(mpz_class(12), -2).e == 0);
  CHECK(dyadic(mpz_class(-8), 1).m == -1);
  CHECK(dyadic(mpz_class(-8), 1).e == 4);
  CHECK(dyadic(mpz_class(4), -2) == dyadic(1));
}

TEST_CASE("dyadic arithmetic agrees with exact rationals") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 300; ++it) {
    Dyadic a = dyadic(mpz_class(long(rng() % 2001) - 1000), long(rng() % 41) - 20);
    Dyadic b = dyadic(mpz_class(long(rng() % 2001) - 1000), long(rng() % 41) - 20);
    mpq_class qa = to_rational(a), qb = to_rational(b);
    CHECK(to_rational(a + b) == qa + qb);
    CHECK(to_rational(a - b) == qa - qb);
    CHECK(to_rational(a * b) == qa * qb);
    CHECK(compare(a, b) == cmp(qa, qb));
    CHECK(sign(a) == sgn(qa));
  }
}

TEST_CASE("truncation rounds toward zero") {
  // 5/8 = 0.101b; two fractional bits keep 0.10b = 1/2
  CHECK(truncate(dyadic(mpz_class(5), -3), 2) == dyadic(mpz_class(1), -1));
  CHECK(truncate(dyadic(mpz_class(-5), -3), 2) == dyadic(mpz_class(-1), -1));
  CHECK(truncate(mpq_class(1, 3), 4) == dyadic(mpz_class(5), -4));
  CHECK(truncate(mpq_class(-1, 3), 4) == dyadic(mpz_class(-5), -4));
  // already at most that many fractional digits: unchanged
  CHECK(truncate(dyadic(mpz_class(3), -2), 10) == dyadic(mpz_class(3), -2));
  CHECK(truncate(dyadic(7), 0) == dyadic(7));

  std::mt19937_64 rng(12);
  for (int it = 0; it < 300; ++it) {
    mpq_class q(long(rng() % 4001) - 2000, long(rng() % 999) + 1);
    q.canonicalize();
    unsigned long bits = rng() % 12;
    mpq_class t = to_rational(truncate(q, bits));
    CHECK(abs(t) <= abs(q));          // toward zero
    CHECK(sgn(t * q) >= 0);           // never crosses zero
    mpq_class step(1);
    step /= (mpz_class(1) << bits);
    CHECK(abs(q - t) < step);          // within one unit in the last place
    // idempotent, and consistent between the two overloads
    Dyadic d = truncate(q, bits + 7);
    CHECK(truncate(d, bits) == truncate(to_rational(d), bits));
  }
}

TEST_CASE("lower_bound_exponent certifies a power-of-two lower bound") {
  CHECK(lower_bound_exponent(dyadic(mpz_class(1), -5)) == 5);
  CHECK(lower_bound_exponent(dyadic(mpz_class(3), -5)) == 4);  // 3/32 >= 1/16
  CHECK(lower_bound_exponent(dyadic(1)) == 0);
  CHECK(lower_bound_exponent(dyadic(100)) == 0);
  CHECK_THROWS_AS(lower_bound_exponent(dyadic(0)), Error);
  CHECK_THROWS_AS(lower_bound_exponent(dyadic(-3)), Error);

  std::mt19937_64 rng(13);
  for (int it = 0; it < 200; ++it) {
    Dyadic a = dyadic(mpz_class(long(rng() % 5000) + 1), long(rng() % 61) - 40);
    unsigned long s = lower_bound_exponent(a);
    mpq_class pow2(1);
    pow2 /= (mpz_class(1) << s);
    CHECK(pow2 <= to_rational(a));
    if (s > 0) CHECK(to_rational(a) < 2 * pow2);  // at most one bit slack
  }
}

TEST_CASE("decimal rendering truncates") {
  CHECK(to_decimal(dyadic(mpz_class(1), -1), 3) == "0.500");
  CHECK(to_decimal(dyadic(mpz_class(3), -2), 1) == "0.7");
  CHECK(to_decimal(dyadic(0), 3) == "0.000");
  CHECK(to_decimal(dyadic(5), 3) == "5.000");
  CHECK(to_decimal(dyadic(mpz_class(3), -1), 0) == "1");
  // 1/1024 needs enough digits to show up at all
  CHECK(to_decimal(dyadic(mpz_class(1), -10), 3) == "0.000");
  CHECK(to_decimal(dyadic(mpz_class(1), -10), 7) == "0.0009765");
  CHECK_THROWS_AS(to_decimal(dyadic(-1), 2), Error);
}
