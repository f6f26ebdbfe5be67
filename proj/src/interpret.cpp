#include "dppc/interpret.hpp"

#include <random>

namespace dppc {

namespace {

template <class A>
Interpretation<A> support_image(const A& alg, const Interpretation<RationalSemiring>& I) {
  Interpretation<A> J;
  J.dim = I.dim;
  J.sym.reserve(I.sym.size());
  for (const auto& m : I.sym) {
    Matrix<typename A::Value> w(m.rows, m.cols, alg.zero());
    for (std::size_t i = 0; i < m.a.size(); ++i)
      if (m.a[i] != 0) w.a[i] = alg.one();
    J.sym.push_back(std::move(w));
  }
  return J;
}

}  // namespace

Interpretation<RationalSemiring> bool_stoch_interpretation(const Signature& sig) {
  RationalSemiring q;
  Interpretation<RationalSemiring> I;
  I.dim.assign(sig.sorts.size(), 2);
  I.sym.resize(sig.symbols.size());
  for (SymbolId s = 0; s < sig.symbols.size(); ++s) {
    const SymbolInfo& si = sig.symbols[s];
    if (si.param) {
      Matrix<mpq_class> m(2, 1, q.zero());
      m.at(0, 0) = 1 - *si.param;
      m.at(1, 0) = *si.param;
      I.sym[s] = std::move(m);
    } else if (si.name == "and" || si.name == "or") {
      Matrix<mpq_class> m(2, 4, q.zero());
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          std::size_t v = si.name == "and" ? (a & b) : (a | b);
          m.at(v, 2 * a + b) = 1;
        }
      I.sym[s] = std::move(m);
    } else if (si.name == "not") {
      Matrix<mpq_class> m(2, 2, q.zero());
      m.at(0, 1) = 1;
      m.at(1, 0) = 1;
      I.sym[s] = std::move(m);
    } else if (si.name == "observe") {
      Matrix<mpq_class> m(1, 2, q.zero());
      m.at(0, 1) = 1;
      I.sym[s] = std::move(m);
    }
  }
  return I;
}

bool is_substochastic(const Matrix<mpq_class>& m) {
  for (const mpq_class& v : m.a)
    if (v < 0) return false;
  for (std::size_t j = 0; j < m.cols; ++j) {
    mpq_class sum = 0;
    for (std::size_t i = 0; i < m.rows; ++i) sum += m.at(i, j);
    if (sum > 1) return false;
  }
  return true;
}

std::uint64_t fp61_of(const mpq_class& q) {
  Fp61Semiring f;
  std::uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), Fp61Semiring::P);
  std::uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), Fp61Semiring::P);
  check(den != 0, ErrorKind::validation, "denominator divisible by the field characteristic");
  return f.mul(num, f.inv(den));
}

Interpretation<Fp61Semiring> fp61_image(const Interpretation<RationalSemiring>& I) {
  Interpretation<Fp61Semiring> J;
  J.dim = I.dim;
  J.sym.reserve(I.sym.size());
  for (const auto& m : I.sym) {
    Matrix<std::uint64_t> w(m.rows, m.cols, 0);
    for (std::size_t i = 0; i < m.a.size(); ++i) w.a[i] = fp61_of(m.a[i]);
    J.sym.push_back(std::move(w));
  }
  return J;
}

Interpretation<BoolSemiring> bool_support_interpretation(const Signature& sig) {
  return support_image(BoolSemiring{}, bool_stoch_interpretation(sig));
}

Interpretation<TropicalSemiring> tropical_support_interpretation(const Signature& sig) {
  return support_image(TropicalSemiring{}, bool_stoch_interpretation(sig));
}

Interpretation<Fp61Semiring> prime_field_interpretation(const Signature& sig, std::uint64_t seed,
                                                        std::size_t dim) {
  Fp61Semiring f;
  std::mt19937_64 rng(seed);
  Interpretation<Fp61Semiring> I;
  I.dim.assign(sig.sorts.size(), dim);
  I.sym.reserve(sig.symbols.size());
  for (const SymbolInfo& si : sig.symbols) {
    std::size_t rows = checked_dim_product(sort_dims(I, si.out_sorts), 1 << 20, "interpretation");
    std::size_t cols = checked_dim_product(sort_dims(I, si.in_sorts), 1 << 20, "interpretation");
    Matrix<std::uint64_t> m(rows, cols, f.zero());
    for (auto& v : m.a) v = rng() % Fp61Semiring::P;
    I.sym.push_back(std::move(m));
  }
  return I;
}

}  // namespace dppc
