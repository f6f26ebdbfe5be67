#include "dppc/inference.hpp"

#include <cassert>

#include "dppc/error.hpp"

namespace dppc {

std::vector<Dyadic> truncated_eval(const Circuit<RationalSemiring>& c, unsigned long bits) {
  std::vector<Dyadic> val(c.nodes.size());
  for (std::uint32_t i = 0; i < c.nodes.size(); ++i) {
    const auto& n = c.nodes[i];
    switch (n.kind) {
      case GateKind::constant:
        check(c.cval[i] >= 0 && c.cval[i] <= 1, ErrorKind::validation,
              "truncated evaluation needs constants in [0,1]");
        val[i] = truncate(c.cval[i], bits);
        break;
      case GateKind::plus:
        // exact: both operands already have at most `bits` fractional digits
        val[i] = val[n.a] + val[n.b];
        break;
      case GateKind::times:
        val[i] = truncate(val[n.a] * val[n.b], bits);
        break;
    }
  }
  return val;
}

namespace {

struct Compiled {
  Algebrised alg;
  CompiledTerm<RationalSemiring> ct;
};

Compiled compile_for_inference(const Signature& sig, const Diagram& f, const InferOptions& opts) {
  check(f.in.empty(), ErrorKind::validation, "inference needs a program with no inputs");
  check(f.out.size() == 1, ErrorKind::validation, "inference needs exactly one output");

  Compiled r;
  r.alg = algebrise(sig, f, opts.exact_decomposition, opts.exact_max_vertices);
  auto I = bool_stoch_interpretation(sig);
  check(I.dim[f.var_sort[f.out[0]]] == 2, ErrorKind::validation,
        "inference needs a two-valued output sort");
  r.ct = compile_term(RationalSemiring{}, *r.alg.store, I, r.alg.root, opts.limits);
  assert(r.ct.rows == 2 && r.ct.cols == 1);
  return r;
}

// smallest power of two with truncate(v, bits) still positive
Dyadic positive_truncation(const mpq_class& v, unsigned long start_bits) {
  for (unsigned long bits = start_bits;; bits *= 2) {
    Dyadic t = truncate(v, bits);
    if (sign(t) > 0) return t;
  }
}

}  // namespace

InferenceResult infer_circuit(const CompiledTerm<RationalSemiring>& ct, unsigned long d,
                              const InferOptions& opts) {
  check(ct.rows == 2 && ct.cols == 1, ErrorKind::validation,
        "inference needs a circuit with root matrix (q p)^T");
  InferenceResult res;
  res.digits = d;
  res.circuit_size = ct.circuit.size();

  if (ct.circuit.size() <= opts.exact_node_cap) {
    RationalSemiring alg;
    auto vals = eval_circuit(alg, ct.circuit);
    const mpq_class& q = vals[ct.root_at(0, 0)];
    const mpq_class& p = vals[ct.root_at(1, 0)];
    mpq_class pacc = p + q;
    res.exact = true;
    if (pacc == 0) {
      // by definition the conditional probability of an unaccepting program is 0
      res.p_f = dyadic(0);
      res.p_acc_lower = dyadic(0);
      return res;
    }
    res.p_f = truncate(mpq_class(p / pacc), d + 2);
    res.p_acc_lower = positive_truncation(pacc, d + 2);
    return res;
  }

  // Truncated dyadic path. With bits = 2|V(C)| + b every root is within
  // 2^-b of its exact value (and below it: truncation toward zero of
  // nonnegative values, composed through monotone + and *).
  const std::size_t n_nodes = ct.circuit.size();
  auto eval_at = [&](unsigned long b) {
    unsigned long bits = 2 * n_nodes + b;
    check(double(n_nodes) * double(bits) <= double(opts.trunc_total_bits_cap),
          ErrorKind::resource, "truncated evaluation would exceed the memory budget");
    return truncated_eval(ct.circuit, bits);
  };

  unsigned long b = d + 2;
  for (;; b += 8) {
    auto vals = eval_at(b);
    Dyadic sum = vals[ct.root_at(0, 0)] + vals[ct.root_at(1, 0)];
    Dyadic lower = sum - Dyadic{1, 1 - long(b)};  // p+q >= p~+q~ - 2^(1-b)

    if (sign(lower) <= 0) {
      if (b + 8 > opts.bits_cap) {
        Dyadic upper = sum + Dyadic{1, 1 - long(b)};
        raise(ErrorKind::unresolved,
              "acceptance probability cannot be certified positive: p + q <= " +
                  to_decimal(upper, 40) + " at error exponent " + std::to_string(b));
      }
      continue;
    }

    // p + q >= lower >= 2^-s; the certified b must reach d + 2 + s
    unsigned long s = lower_bound_exponent(lower);
    if (d + 2 + s > b) {
      b = d + 2 + s;
      vals = eval_at(b);
      sum = vals[ct.root_at(0, 0)] + vals[ct.root_at(1, 0)];
      lower = sum - Dyadic{1, 1 - long(b)};
      // raising bits only raises truncated values, so the bound tightens
      s = lower_bound_exponent(lower);
      assert(d + 2 + s <= b);
    }

    // |p/(p+q) - p~/(p~+q~)| = |p(q~-q) + q(p-p~)| / ((p+q)(p~+q~))
    //                       <= (p+q) 2^-b / ((p+q)(p~+q~)) = 2^-b / (p~+q~)
    //                       <= 2^-(d+2+s) * 2^s = 2^-(d+2),
    // and truncating the reported quotient adds at most 2^-(d+2) more,
    // for a certified total of 2^-(d+1)
    mpq_class quotient = to_rational(vals[ct.root_at(1, 0)]) / to_rational(sum);
    res.p_f = truncate(quotient, d + 2);
    res.p_acc_lower = lower;
    res.bits_used = b;
    return res;
  }
}

std::pair<mpq_class, mpq_class> exact_inference(const Signature& sig, const Diagram& f,
                                                const InferOptions& opts) {
  Compiled c = compile_for_inference(sig, f, opts);
  RationalSemiring alg;
  auto vals = eval_circuit(alg, c.ct.circuit);
  return {vals[c.ct.root_at(1, 0)], vals[c.ct.root_at(0, 0)]};
}

InferenceResult infer(const Signature& sig, const Diagram& f, unsigned long d,
                      const InferOptions& opts) {
  Compiled c = compile_for_inference(sig, f, opts);
  InferenceResult res = infer_circuit(c.ct, d, opts);
  res.tree_w = c.alg.tree_w;
  res.branch_w = c.alg.branch_w;
  return res;
}

}  // namespace dppc
