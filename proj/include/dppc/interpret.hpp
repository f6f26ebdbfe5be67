#pragma once

#include <cstddef>
#include <vector>

#include "dppc/error.hpp"
#include "dppc/matrix.hpp"
#include "dppc/semiring.hpp"
#include "dppc/signature.hpp"

namespace dppc {

// A concrete meaning for a signature over the value algebra A: one dimension
// per sort, one matrix per symbol shaped (prod of out dims) x (prod of in
// dims). Empty (0x0) matrices mark uninterpreted symbols (e.g. call symbols);
// using one in evaluation is an error.
template <class A>
struct Interpretation {
  std::vector<std::size_t> dim;
  std::vector<Matrix<typename A::Value>> sym;
};

inline std::size_t checked_dim_product(const std::vector<std::size_t>& ds, std::size_t cap,
                                       const char* what) {
  std::size_t p = 1;
  for (std::size_t d : ds) {
    check(d > 0, ErrorKind::validation, "zero dimension");
    check(p <= cap / d, ErrorKind::resource,
          std::string(what) + ": dimension product exceeds limit " + std::to_string(cap));
    p *= d;
  }
  return p;
}

template <class A>
std::vector<std::size_t> sort_dims(const Interpretation<A>& interp,
                                   const std::vector<SortId>& sorts) {
  std::vector<std::size_t> ds;
  ds.reserve(sorts.size());
  for (SortId s : sorts) ds.push_back(interp.dim[s]);
  return ds;
}

// The substochastic-matrix meaning of probabilistic boolean programs: B has
// dimension 2 (index 1 = true); and/or/not are their truth tables, observe is
// the row (0 1), flip(p) the column (1-p p). Symbols outside this vocabulary
// (e.g. call symbols) are left uninterpreted.
Interpretation<RationalSemiring> bool_stoch_interpretation(const Signature& sig);

// Entrywise nonnegative with column sums <= 1.
bool is_substochastic(const Matrix<mpq_class>& m);

// Homomorphic image of a rational in F_p: x/y maps to x * y^-1 mod p.
// Rejects denominators divisible by p.
std::uint64_t fp61_of(const mpq_class& q);
Interpretation<Fp61Semiring> fp61_image(const Interpretation<RationalSemiring>& I);

// Support pattern of the probabilistic meaning, read in other semirings:
// entries of nonzero probability become one, the rest zero. Over booleans
// that is possibility of each in/out combination; over the tropical semiring
// it is cost 0 for possible combinations and +inf for impossible ones, the
// base onto which applications put real costs.
Interpretation<BoolSemiring> bool_support_interpretation(const Signature& sig);
Interpretation<TropicalSemiring> tropical_support_interpretation(const Signature& sig);

// Uniformly random matrices over F_p with every sort at `dim`, deterministic
// per seed; the workhorse of randomized equivalence testing.
Interpretation<Fp61Semiring> prime_field_interpretation(const Signature& sig, std::uint64_t seed,
                                                        std::size_t dim = 2);

}  // namespace dppc
