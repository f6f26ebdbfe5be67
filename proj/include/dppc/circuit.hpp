#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <tuple>
#include <vector>

#include "dppc/term.hpp"

namespace dppc {

enum class GateKind : std::uint8_t { constant, plus, times };

// Arithmetic circuit over the value type of algebra A: a DAG whose leaves are
// constants and whose inner nodes are binary + or *. Node ids are
// topological, children before parents.
template <class A>
struct Circuit {
  struct Node {
    GateKind kind;
    std::uint32_t a = 0, b = 0;  // children, for plus/times
  };
  std::vector<Node> nodes;
  std::vector<typename A::Value> cval;  // aligned with nodes; set for constants

  std::size_t size() const { return nodes.size(); }
};

template <class A>
void validate_circuit(const Circuit<A>& c) {
  check(c.cval.size() == c.nodes.size(), ErrorKind::validation, "circuit value table misaligned");
  for (std::uint32_t i = 0; i < c.nodes.size(); ++i) {
    const auto& n = c.nodes[i];
    if (n.kind != GateKind::constant)
      check(n.a < i && n.b < i, ErrorKind::validation, "circuit children must precede parents");
  }
}

template <class A>
std::vector<typename A::Value> eval_circuit(const A& alg, const Circuit<A>& c) {
  std::vector<typename A::Value> val;
  val.reserve(c.nodes.size());
  for (std::uint32_t i = 0; i < c.nodes.size(); ++i) {
    const auto& n = c.nodes[i];
    switch (n.kind) {
      case GateKind::constant: val.push_back(c.cval[i]); break;
      case GateKind::plus: val.push_back(alg.add(val[n.a], val[n.b])); break;
      case GateKind::times: val.push_back(alg.mul(val[n.a], val[n.b])); break;
    }
  }
  return val;
}

// Hash-consing circuit builder. Constants are interned by value; + and *
// gates by their (sorted) children, which is sound in commutative semirings.
// The only rewrites are the unit laws: x+0 = x, x*1 = x, x*0 = 0. Sums and
// products of non-units always materialize as gates.
template <class A>
struct CircuitBuilder {
  explicit CircuitBuilder(const A& alg) : alg_(alg) {
    zero = constant(alg.zero());
    one = constant(alg.one());
  }

  std::uint32_t constant(const typename A::Value& v) {
    auto it = const_ids_.find(v);
    if (it != const_ids_.end()) return it->second;
    std::uint32_t id = push({GateKind::constant, 0, 0}, v);
    const_ids_.emplace(v, id);
    return id;
  }

  std::uint32_t add(std::uint32_t x, std::uint32_t y) {
    if (x == zero) return y;
    if (y == zero) return x;
    return gate(GateKind::plus, x, y);
  }

  std::uint32_t mul(std::uint32_t x, std::uint32_t y) {
    if (x == zero || y == zero) return zero;
    if (x == one) return y;
    if (y == one) return x;
    return gate(GateKind::times, x, y);
  }

  const Circuit<A>& circuit() const { return c_; }

  // The circuit restricted to what the roots reach, ids renumbered (order
  // preserved, so children still precede parents); roots rewritten in place.
  Circuit<A> prune(std::vector<std::uint32_t>& roots) const {
    std::vector<char> live(c_.nodes.size(), 0);
    for (std::uint32_t r : roots) live[r] = 1;
    for (std::uint32_t i = std::uint32_t(c_.nodes.size()); i-- > 0;)
      if (live[i] && c_.nodes[i].kind != GateKind::constant)
        live[c_.nodes[i].a] = live[c_.nodes[i].b] = 1;

    std::vector<std::uint32_t> id(c_.nodes.size(), 0);
    Circuit<A> out;
    for (std::uint32_t i = 0; i < c_.nodes.size(); ++i) {
      if (!live[i]) continue;
      id[i] = std::uint32_t(out.nodes.size());
      auto n = c_.nodes[i];
      if (n.kind != GateKind::constant) n.a = id[n.a], n.b = id[n.b];
      out.nodes.push_back(n);
      out.cval.push_back(c_.cval[i]);
    }
    for (std::uint32_t& r : roots) r = id[r];
    return out;
  }

  std::uint32_t zero = 0, one = 0;

 private:
  std::uint32_t push(typename Circuit<A>::Node n, const typename A::Value& v) {
    c_.nodes.push_back(n);
    c_.cval.push_back(v);
    return std::uint32_t(c_.nodes.size() - 1);
  }

  std::uint32_t gate(GateKind k, std::uint32_t x, std::uint32_t y) {
    if (x > y) std::swap(x, y);
    auto key = std::tuple(k, x, y);
    auto it = gate_ids_.find(key);
    if (it != gate_ids_.end()) return it->second;
    std::uint32_t id = push({k, x, y}, alg_.zero());
    gate_ids_.emplace(key, id);
    return id;
  }

  const A& alg_;
  Circuit<A> c_;
  std::map<typename A::Value, std::uint32_t> const_ids_;
  std::map<std::tuple<GateKind, std::uint32_t, std::uint32_t>, std::uint32_t> gate_ids_;
};

// Compilation result: the circuit plus one root per entry of the term's
// matrix, row-major.
template <class A>
struct CompiledTerm {
  Circuit<A> circuit;
  std::size_t rows = 0, cols = 0;
  std::vector<std::uint32_t> root;

  std::uint32_t root_at(std::size_t i, std::size_t j) const { return root[i * cols + j]; }
};

namespace circuit_detail {

// Matrix of gate ids, stored sparsely: (row-major linear index, gate) sorted
// by index; absent entries are the zero gate. Wiring matrices have at most
// one entry per column, so products against them stay sparse and create no
// gates (their entries are the one gate, which folds away in mul).
struct IdMat {
  std::size_t rows = 0, cols = 0;
  std::vector<std::pair<std::size_t, std::uint32_t>> nz;
};

}  // namespace circuit_detail

template <class A>
CompiledTerm<A> compile_term(const A& alg, const TermStore& st, const Interpretation<A>& interp,
                             TermId root, const EvalLimits& lim = {}) {
  using circuit_detail::IdMat;
  CircuitBuilder<A> cb(alg);

  auto dims = [&](SortListId sl) {
    return checked_dim_product(sort_dims(interp, st.sorts(sl)), lim.max_side, "term interface");
  };
  auto guard = [&](std::size_t r, std::size_t c) {
    check(r <= lim.max_side && c <= lim.max_side, ErrorKind::resource,
          "term interface dimension exceeds limit");
  };
  auto budget = [&](std::size_t nnz) {
    check(nnz <= lim.max_entries, ErrorKind::resource, "term compilation exceeds entry limit");
  };

  const auto order = st.reachable(root);
  std::map<TermId, IdMat> memo;

  for (TermId t : order) {
    const auto& n = st.node(t);
    IdMat m;
    switch (n.kind) {
      case TermKind::symbol: {
        const auto& sm = interp.sym[n.x0];
        check(sm.rows > 0 && sm.cols > 0, ErrorKind::validation,
              "compiling a term with an uninterpreted symbol");
        m.rows = sm.rows;
        m.cols = sm.cols;
        for (std::size_t idx = 0; idx < sm.a.size(); ++idx)
          if (!alg.eq(sm.a[idx], alg.zero())) m.nz.push_back({idx, cb.constant(sm.a[idx])});
        break;
      }
      case TermKind::id: {
        std::size_t d = dims(n.x0);
        m.rows = m.cols = d;
        for (std::size_t i = 0; i < d; ++i) m.nz.push_back({i * d + i, cb.one});
        break;
      }
      case TermKind::swap: {
        std::size_t da = dims(n.x0), db = dims(n.x1);
        guard(db * da, da * db);
        m.rows = m.cols = da * db;
        for (std::size_t i = 0; i < da; ++i)
          for (std::size_t j = 0; j < db; ++j)
            m.nz.push_back({(j * da + i) * m.cols + (i * db + j), cb.one});
        std::sort(m.nz.begin(), m.nz.end());
        break;
      }
      case TermKind::copy: {
        std::size_t d = dims(n.x0);
        guard(d * d, d);
        m.rows = d * d;
        m.cols = d;
        for (std::size_t i = 0; i < d; ++i) m.nz.push_back({(i * d + i) * d + i, cb.one});
        break;
      }
      case TermKind::del: {
        std::size_t d = dims(n.x0);
        m.rows = 1;
        m.cols = d;
        for (std::size_t j = 0; j < d; ++j) m.nz.push_back({j, cb.one});
        break;
      }
      case TermKind::equate: {
        std::size_t d = dims(n.x0);
        guard(d, d * d);
        m.rows = d;
        m.cols = d * d;
        for (std::size_t i = 0; i < d; ++i) m.nz.push_back({i * d * d + (i * d + i), cb.one});
        break;
      }
      case TermKind::fresh: {
        std::size_t d = dims(n.x0);
        m.rows = d;
        m.cols = 1;
        for (std::size_t i = 0; i < d; ++i) m.nz.push_back({i, cb.one});
        break;
      }
      case TermKind::seq: {
        const IdMat& x = memo.at(n.x0);
        const IdMat& y = memo.at(n.x1);
        assert(x.cols == y.rows);
        m.rows = x.rows;
        m.cols = y.cols;

        // row start offsets of y's sorted entries, for scanning row k
        std::vector<std::size_t> ystart(y.rows + 1, 0);
        for (const auto& e : y.nz) ++ystart[e.first / y.cols + 1];
        for (std::size_t r = 0; r < y.rows; ++r) ystart[r + 1] += ystart[r];

        // x is sorted row-major, so contributions to any z entry arrive with
        // k ascending; the left-deep sums below follow that order
        std::map<std::size_t, std::uint32_t> acc;
        for (const auto& [xi, xg] : x.nz) {
          std::size_t i = xi / x.cols, k = xi % x.cols;
          for (std::size_t p = ystart[k]; p < ystart[k + 1]; ++p) {
            std::size_t j = y.nz[p].first % y.cols;
            std::uint32_t prod = cb.mul(xg, y.nz[p].second);
            if (prod == cb.zero) continue;
            auto [it, fresh_cell] = acc.emplace(i * m.cols + j, prod);
            if (!fresh_cell) it->second = cb.add(it->second, prod);
          }
        }
        m.nz.assign(acc.begin(), acc.end());
        budget(m.nz.size());
        break;
      }
      case TermKind::par: {
        const IdMat& x = memo.at(n.x0);
        const IdMat& y = memo.at(n.x1);
        guard(x.rows * y.rows, x.cols * y.cols);
        m.rows = x.rows * y.rows;
        m.cols = x.cols * y.cols;
        budget(x.nz.size() * y.nz.size());
        for (const auto& [xi, xg] : x.nz) {
          std::size_t i = xi / x.cols, j = xi % x.cols;
          for (const auto& [yi, yg] : y.nz) {
            std::size_t k = yi / y.cols, l = yi % y.cols;
            m.nz.push_back({(i * y.rows + k) * m.cols + (j * y.cols + l), cb.mul(xg, yg)});
          }
        }
        std::sort(m.nz.begin(), m.nz.end());
        break;
      }
    }
    memo.emplace(t, std::move(m));
  }

  const IdMat& rm = memo.at(root);
  CompiledTerm<A> out;
  out.rows = rm.rows;
  out.cols = rm.cols;
  budget(rm.rows * rm.cols);
  out.root.assign(rm.rows * rm.cols, cb.zero);
  for (const auto& [idx, g] : rm.nz) out.root[idx] = g;
  out.circuit = cb.prune(out.root);
  return out;
}

struct CircuitStats {
  std::size_t constants = 0, plus = 0, times = 0;
};

template <class A>
CircuitStats circuit_stats(const Circuit<A>& c) {
  CircuitStats s;
  for (const auto& n : c.nodes) {
    if (n.kind == GateKind::constant) ++s.constants;
    else if (n.kind == GateKind::plus) ++s.plus;
    else ++s.times;
  }
  return s;
}

}  // namespace dppc
