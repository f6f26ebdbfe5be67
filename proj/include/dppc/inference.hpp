#pragma once

#include <utility>

#include "dppc/algebraise.hpp"
#include "dppc/circuit.hpp"
#include "dppc/dyadic.hpp"

namespace dppc {

struct InferOptions {
  std::size_t exact_node_cap = 100000;  // circuits up to this size evaluate exactly
  unsigned long bits_cap = 4096;        // precision-search limit on the error exponent b
  bool exact_decomposition = false;     // exact treewidth when the graph is small enough
  std::size_t exact_max_vertices = 20;
  // nodes * bits a truncated evaluation may keep live at once (~1 GiB of mantissas)
  std::size_t trunc_total_bits_cap = std::size_t(1) << 33;
  EvalLimits limits;
};

struct InferenceResult {
  Dyadic p_f;                  // |p_f - P(true | accepted)| <= 2^-(digits+1), certified
  unsigned long digits = 0;    // requested d
  bool exact = false;          // p and q were computed exactly (small circuit)
  Dyadic p_acc_lower;          // certified positive lower bound on the acceptance probability
  unsigned long bits_used = 0; // final error exponent b of the truncated evaluation (0 if exact)
  std::size_t circuit_size = 0;
  std::size_t tree_w = 0, branch_w = 0;
};

// Bottom-up evaluation over exact rationals, truncating every intermediate
// (and every constant) toward zero to `bits` fractional binary digits.
// For circuits whose true node values all lie in [0,1], taking
// bits = 2 * size(C) + b certifies every node within 2^-b of its exact value.
std::vector<Dyadic> truncated_eval(const Circuit<RationalSemiring>& c, unsigned long bits);

// p = P(output true and all observations pass), q = P(output false and all
// pass), computed exactly through the decomposition pipeline and circuit.
// The diagram must have no inputs and one output of a dimension-2 sort.
std::pair<mpq_class, mpq_class> exact_inference(const Signature& sig, const Diagram& f,
                                                const InferOptions& opts = {});

// P(output true | all observations pass) within 2^-(d+1), via the exact path
// for small circuits and truncated dyadic evaluation with a precision search
// otherwise. Raises an unresolved error if the acceptance probability cannot
// be certified positive within the precision cap.
InferenceResult infer(const Signature& sig, const Diagram& f, unsigned long d,
                      const InferOptions& opts = {});

// The quotient-and-certify step on an already compiled circuit with root
// matrix (q p)^T; exposed for tests and reuse.
InferenceResult infer_circuit(const CompiledTerm<RationalSemiring>& ct, unsigned long d,
                              const InferOptions& opts = {});

}  // namespace dppc
