#pragma once

#include <random>

#include "dppc/hierarchy.hpp"
#include "dppc/interpret.hpp"

namespace dppc::testkit {

// Reference semantics by brute force: sum the weight of every full valuation
// of the diagram's variables into the matrix cell addressed by the output and
// input interface lists. Written against the definition only; the
// compositional pipeline is tested against this.
template <class A>
Matrix<typename A::Value> oracle_matrix(const A& alg, const Interpretation<A>& interp,
                                        const Diagram& f, std::size_t max_valuations = 10000000) {
  const std::size_t n = f.n_vars();
  std::vector<std::size_t> vdim(n);
  for (std::size_t v = 0; v < n; ++v) vdim[v] = interp.dim[f.var_sort[v]];
  checked_dim_product(vdim, max_valuations, "oracle valuation space");

  for (const Assignment& a : f.assignments) {
    const auto& m = interp.sym[a.sym];
    check(m.rows > 0 && m.cols > 0, ErrorKind::validation,
          "oracle: uninterpreted symbol in diagram");
  }

  std::vector<std::size_t> val(n, 0);
  auto list_index = [&](const std::vector<VarId>& vars) {
    std::size_t idx = 0;
    for (VarId v : vars) idx = idx * vdim[v] + val[v];
    return idx;
  };
  auto list_size = [&](const std::vector<VarId>& vars) {
    std::size_t p = 1;
    for (VarId v : vars) {
      check(p <= max_valuations / vdim[v], ErrorKind::resource, "oracle interface too large");
      p *= vdim[v];
    }
    return p;
  };

  Matrix<typename A::Value> M(list_size(f.out), list_size(f.in), alg.zero());
  for (;;) {
    typename A::Value w = alg.one();
    for (const Assignment& a : f.assignments)
      w = alg.mul(w, interp.sym[a.sym].at(list_index(a.outs), list_index(a.ins)));
    auto& cell = M.at(list_index(f.out), list_index(f.in));
    cell = alg.add(cell, w);

    std::size_t p = n;
    while (p > 0 && ++val[p - 1] == vdim[p - 1]) val[--p] = 0;
    if (p == 0) break;
  }
  return M;
}

template <class A>
typename A::Value random_value(const A& alg, std::mt19937_64& rng);

template <>
inline mpq_class random_value(const RationalSemiring&, std::mt19937_64& rng) {
  return make_rational(long(rng() % 5), long(1 + rng() % 4));
}
template <>
inline std::uint8_t random_value(const BoolSemiring&, std::mt19937_64& rng) {
  return std::uint8_t(rng() & 1);
}
template <>
inline std::uint64_t random_value(const TropicalSemiring&, std::mt19937_64& rng) {
  return rng() % 8 == 0 ? TropicalSemiring::INF : rng() % 10;
}
template <>
inline std::uint64_t random_value(const Fp61Semiring&, std::mt19937_64& rng) {
  return rng() % Fp61Semiring::P;
}

template <class A>
Interpretation<A> random_interpretation(const A& alg, const Signature& sig, std::mt19937_64& rng,
                                        std::size_t dim = 2) {
  Interpretation<A> I;
  I.dim.assign(sig.sorts.size(), dim);
  I.sym.reserve(sig.symbols.size());
  for (const SymbolInfo& si : sig.symbols) {
    std::size_t rows = checked_dim_product(sort_dims(I, si.out_sorts), 1 << 20, "interpretation");
    std::size_t cols = checked_dim_product(sort_dims(I, si.in_sorts), 1 << 20, "interpretation");
    Matrix<typename A::Value> m(rows, cols, alg.zero());
    for (auto& v : m.a) v = random_value(alg, rng);
    I.sym.push_back(std::move(m));
  }
  return I;
}

// Probabilistic semantic equivalence: equal oracle matrices under random
// prime-field interpretations. A false result is definitive.
bool equivalent(const Signature& sig, const Diagram& f, const Diagram& g, std::mt19937_64& rng,
                int trials = 3, std::size_t dim = 2);

struct GenOptions {
  std::size_t max_vars = 8;
  std::size_t max_assignments = 8;
  std::size_t max_interface = 3;
  std::size_t n_symbols = 5;
  std::size_t max_arity = 3;  // in-slots + out-slots per generated symbol
  std::size_t n_sorts = 1;
  // "nice" instances additionally have duplicate-free interface lists, no
  // interface-only variables, and every variable in at least two hyperedges
  // of the dependency hypergraph; the width bounds are stated for these.
  bool nice = false;
};

struct GeneratedProgram {
  Signature sig;
  Diagram f;
};

Diagram random_diagram_over(const Signature& sig, std::mt19937_64& rng, const GenOptions& opts);
GeneratedProgram random_program(std::mt19937_64& rng, const GenOptions& opts);

// Random hierarchy over a random base signature; bodies may call earlier
// nodes. Unfolded size is kept small enough for the oracle.
Hierarchy random_hierarchy(std::mt19937_64& rng, const GenOptions& opts, std::size_t n_nodes,
                           std::size_t max_unfolded_vars = 14);

// Satisfied by construction for nice programs; checked in tests.
bool nice_constraints_ok(const Diagram& f);

// Pinned example programs.
struct BoolProgram {
  BoolStochSig bs;
  Hierarchy h;
};
// test(z) = one positive test observation scenario; root observes one
// positive and one negative result of test(x) for x = flip(1/10000).
BoolProgram disease_test_program();
// f_0 = and of two fresh fair flips; f_{k+1} = and of two calls of f_k.
BoolProgram and_chain_program(std::size_t n);

struct BoolDiagram {
  BoolStochSig bs;
  Diagram f;
};
// (flip(1/10) and x) or (x and flip(3/10)) for a shared x = flip(1/5);
// P(true) = 37/500.
BoolDiagram shared_flip_or_of_ands();

}  // namespace dppc::testkit
