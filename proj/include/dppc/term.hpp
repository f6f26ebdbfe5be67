#pragma once

#include <cstdint>
#include <map>
#include <type_traits>

#include "dppc/interpret.hpp"
#include "dppc/signature.hpp"

namespace dppc {

using TermId = std::uint32_t;
using SortListId = std::uint32_t;

// Generators of the term language. `fresh` introduces a wire (all-ones
// column), `del` discards one (all-ones row), `copy` duplicates, `equate`
// merges two equal-sorted bundles diagonally, `swap` crosses two bundles.
// seq(l, r) is l after r (matrix product l * r), par is the Kronecker product
// with the left operand most significant.
enum class TermKind : std::uint8_t { symbol, id, swap, copy, del, equate, fresh, seq, par };

// Hash-consed DAG of terms over a fixed signature. Equal TermIds are equal
// terms; shared subterms are stored once, so term width and DAG size are
// computed over distinct subterms.
struct TermStore {
  struct Node {
    TermKind kind;
    std::uint32_t x0 = 0, x1 = 0;  // symbol id, sort list(s), or child terms
    SortListId dom = 0, cod = 0;
  };

  explicit TermStore(const Signature& sig) : sig_(&sig) {}

  const Signature& sig() const { return *sig_; }

  SortListId intern(std::vector<SortId> sorts);
  const std::vector<SortId>& sorts(SortListId id) const { return sort_lists_[id]; }

  TermId mk_symbol(SymbolId s);
  TermId mk_id(SortListId s);
  TermId mk_swap(SortListId a, SortListId b);
  TermId mk_copy(SortListId s);
  TermId mk_del(SortListId s);
  TermId mk_equate(SortListId s);
  TermId mk_fresh(SortListId s);
  TermId mk_seq(TermId l, TermId r);
  TermId mk_par(TermId l, TermId r);

  const Node& node(TermId t) const { return nodes_[t]; }
  std::size_t size() const { return nodes_.size(); }
  SortListId dom(TermId t) const { return nodes_[t].dom; }
  SortListId cod(TermId t) const { return nodes_[t].cod; }

  // Distinct subterms of root, children before parents.
  std::vector<TermId> reachable(TermId root) const;
  // max |dom| + |cod| over distinct subterms
  std::size_t width(TermId root) const;
  std::size_t dag_size(TermId root) const { return reachable(root).size(); }

 private:
  TermId add(Node n);

  const Signature* sig_;
  std::vector<std::vector<SortId>> sort_lists_;
  std::map<std::vector<SortId>, SortListId> sort_list_ids_;
  std::vector<Node> nodes_;
  std::map<std::tuple<TermKind, std::uint32_t, std::uint32_t>, TermId> interned_;
};

// Replace symbol leaves by terms (interfaces must match); memoized rewrite,
// result re-interned bottom-up.
TermId substitute_symbols(TermStore& st, TermId root, const std::map<SymbolId, TermId>& map);

struct EvalLimits {
  std::size_t max_side = std::size_t(1) << 16;      // max rows or cols of any node matrix
  std::size_t max_entries = std::size_t(1) << 24;   // max rows*cols of any node matrix
  bool checked = false;  // over rationals, assert substochastic closure per product
};

template <class A>
Matrix<typename A::Value> interpret_term(const A& alg, const TermStore& st,
                                         const Interpretation<A>& interp, TermId root,
                                         const EvalLimits& lim = {}) {
  using V = typename A::Value;
  const auto order = st.reachable(root);
  std::map<TermId, Matrix<V>> memo;

  // Every interface dimension stays below max_side, so products of two of
  // them cannot overflow; guard() re-checks each produced matrix.
  auto dims = [&](SortListId sl) {
    return checked_dim_product(sort_dims(interp, st.sorts(sl)), lim.max_side, "term interface");
  };
  auto guard = [&](std::size_t r, std::size_t c) {
    check(r <= lim.max_side && c <= lim.max_side, ErrorKind::resource,
          "term interface dimension exceeds limit");
    check(c == 0 || r <= lim.max_entries / c, ErrorKind::resource,
          "term matrix exceeds entry limit");
  };
  // probabilistic readings are closed under product and tensor; with inputs
  // substochastic a violation in the result can only be an evaluator bug
  auto closure_check = [&](const Matrix<V>& a, const Matrix<V>& b, const Matrix<V>& r) {
    if constexpr (std::is_same_v<A, RationalSemiring>) {
      if (lim.checked && is_substochastic(a) && is_substochastic(b))
        check(is_substochastic(r), ErrorKind::validation, "substochastic closure violated");
    } else {
      (void)a, (void)b, (void)r;
    }
  };

  for (TermId t : order) {
    const auto& n = st.node(t);
    Matrix<V> m;
    switch (n.kind) {
      case TermKind::symbol: {
        m = interp.sym[n.x0];
        check(m.rows > 0 && m.cols > 0, ErrorKind::validation,
              "evaluating a term with an uninterpreted symbol");
        break;
      }
      case TermKind::id: {
        m = identity(alg, dims(n.x0));
        break;
      }
      case TermKind::swap: {
        std::size_t da = dims(n.x0), db = dims(n.x1);
        guard(db * da, da * db);
        m = Matrix<V>(db * da, da * db, alg.zero());
        for (std::size_t i = 0; i < da; ++i)
          for (std::size_t j = 0; j < db; ++j) m.at(j * da + i, i * db + j) = alg.one();
        break;
      }
      case TermKind::copy: {
        std::size_t d = dims(n.x0);
        guard(d * d, d);
        m = Matrix<V>(d * d, d, alg.zero());
        for (std::size_t i = 0; i < d; ++i) m.at(i * d + i, i) = alg.one();
        break;
      }
      case TermKind::del: {
        m = Matrix<V>(1, dims(n.x0), alg.one());
        break;
      }
      case TermKind::equate: {
        std::size_t d = dims(n.x0);
        guard(d, d * d);
        m = Matrix<V>(d, d * d, alg.zero());
        for (std::size_t i = 0; i < d; ++i) m.at(i, i * d + i) = alg.one();
        break;
      }
      case TermKind::fresh: {
        m = Matrix<V>(dims(n.x0), 1, alg.one());
        break;
      }
      case TermKind::seq: {
        const auto& a = memo.at(n.x0);
        const auto& b = memo.at(n.x1);
        guard(a.rows, b.cols);
        m = matmul(alg, a, b);
        closure_check(a, b, m);
        break;
      }
      case TermKind::par: {
        const auto& a = memo.at(n.x0);
        const auto& b = memo.at(n.x1);
        guard(a.rows * b.rows, a.cols * b.cols);
        m = kronecker(alg, a, b);
        closure_check(a, b, m);
        break;
      }
    }
    memo.emplace(t, std::move(m));
  }
  return memo.at(root);
}

}  // namespace dppc
