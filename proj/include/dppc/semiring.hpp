#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "dppc/error.hpp"

namespace dppc {

// Value algebras used to evaluate diagrams, terms and circuits. Each backend
// provides: Value, zero(), one(), add, mul, eq, less (a total order, used for
// canonical sorting of constants), to_string, name(). All four are commutative
// semirings with absorbing zero; circuit canonicalization relies on both
// properties, and the law tests sample-check them.

struct RationalSemiring {
  using Value = mpq_class;
  Value zero() const { return Value(0); }
  Value one() const { return Value(1); }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  bool eq(const Value& a, const Value& b) const { return a == b; }
  bool less(const Value& a, const Value& b) const { return a < b; }
  std::string to_string(const Value& v) const { return v.get_str(); }
  static const char* name() { return "rational"; }
};

inline mpq_class make_rational(long num, long den) {
  check(den != 0, ErrorKind::validation, "rational with zero denominator");
  mpq_class q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return q;
}

struct BoolSemiring {
  using Value = std::uint8_t;  // 0 or 1 (keeps matrices plain vectors, unlike vector<bool>)
  Value zero() const { return 0; }
  Value one() const { return 1; }
  Value add(Value a, Value b) const { return a | b; }
  Value mul(Value a, Value b) const { return a & b; }
  bool eq(Value a, Value b) const { return a == b; }
  bool less(Value a, Value b) const { return a < b; }
  std::string to_string(Value v) const { return v ? "1" : "0"; }
  static const char* name() { return "bool"; }
};

// Min-plus costs. UINT64_MAX encodes +infinity: neutral for min, absorbing for +.
struct TropicalSemiring {
  using Value = std::uint64_t;
  static constexpr Value INF = ~std::uint64_t(0);
  Value zero() const { return INF; }
  Value one() const { return 0; }
  Value add(Value a, Value b) const { return a < b ? a : b; }
  Value mul(Value a, Value b) const {
    if (a == INF || b == INF) return INF;
    Value s = a + b;
    return s < a ? INF : s;  // saturate on overflow
  }
  bool eq(Value a, Value b) const { return a == b; }
  bool less(Value a, Value b) const { return a < b; }
  std::string to_string(Value v) const { return v == INF ? "inf" : std::to_string(v); }
  static const char* name() { return "tropical"; }
};

// Prime field F_p, p = 2^61 - 1 (Mersenne, so 2^61 == 1 mod p).
struct Fp61Semiring {
  using Value = std::uint64_t;  // canonical representative < P
  static constexpr Value P = (std::uint64_t(1) << 61) - 1;
  Value zero() const { return 0; }
  Value one() const { return 1; }
  Value add(Value a, Value b) const {
    Value s = a + b;
    return s >= P ? s - P : s;
  }
  Value mul(Value a, Value b) const {
    unsigned __int128 p = (unsigned __int128)a * b;
    Value r = (Value)(p >> 61) + ((Value)p & P);  // fold: 2^61 == 1 (mod P)
    return r >= P ? r - P : r;
  }
  bool eq(Value a, Value b) const { return a == b; }
  bool less(Value a, Value b) const { return a < b; }
  Value pow(Value a, std::uint64_t e) const {
    Value r = 1;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }
  Value inv(Value a) const { return pow(a, P - 2); }  // Fermat; requires a != 0
  std::string to_string(Value v) const { return std::to_string(v); }
  static const char* name() { return "fp61"; }
};

enum class SemiringId { rational, boolean, tropical, fp61 };

SemiringId parse_semiring(const std::string& name);
const char* semiring_name(SemiringId id);

}  // namespace dppc
