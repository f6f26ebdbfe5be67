#pragma once

#include <memory>

#include "dppc/decompose.hpp"
#include "dppc/graph.hpp"
#include "dppc/hierarchy.hpp"
#include "dppc/term.hpp"

namespace dppc {

// Term whose output wire i carries input wire out_from[i]. Built as layers
// of disjoint adjacent swaps (odd-even transposition sort), so it has at
// most m layers and width <= 2m.
TermId permutation_term(TermStore& st, const std::vector<SortId>& in_sorts,
                        const std::vector<std::size_t>& out_from);

// Term for a diagram without assignments. Factorises as
//   sigma_out . copy-and-introduce . equate-and-discard . sigma_in
// with the equating stage applied first, so every factor keeps width
// <= 2 max(|in|, |out|).
TermId pure_wiring_term(TermStore& st, const Diagram& w);

// Term for an arbitrary diagram over the store's signature. Assignments are
// applied one at a time over a frontier of live wires:
//   exit-wiring . (sym_m x carry) . wiring . ... . (sym_1 x carry) . wiring
// where each wiring routes the frontier to the next symbol's arguments plus
// the variables that stay relevant (used later, or awaiting equation with
// that symbol's outputs). Interfaces stay near the live-variable count
// instead of summing over assignments.
TermId algebrise_small(TermStore& st, const Diagram& f);

// Rewrite f as a hierarchy shaped like a branch decomposition of its
// dependency hypergraph: one node per internal tree vertex plus a root for
// the output leaf. Each body holds the assignments of adjacent leaves (at
// most two) plus one call per internal child, exposing the child's boundary
// variables as call outputs; the input interface threads verbatim along the
// path from the input leaf to the root. unfold of the result is equivalent
// to f.
Hierarchy refactor_by_branch_decomposition(const Signature& sig, const Diagram& f,
                                           const BranchTree& bt);

// Algebrise every body (call symbols stay symbolic), then splice callee
// terms bottom-up. The store must be bound to h.sig.
TermId algebrise_hierarchy(TermStore& st, const Hierarchy& h);

// Full pipeline result. The hierarchy and store live on the heap so the
// struct can move without invalidating the store's signature pointer.
struct Algebrised {
  Hypergraph dep;
  TreeDecomposition td;
  BranchTree bt;
  std::size_t tree_w = 0;
  std::size_t branch_w = 0;
  std::unique_ptr<Hierarchy> h;
  std::unique_ptr<TermStore> store;
  TermId root = 0;
};

// dependency hypergraph -> tree decomposition (exact when requested and the
// primal graph is small enough, min-fill otherwise) -> branch decomposition
// -> hierarchical refactor -> hash-consed term.
Algebrised algebrise(const Signature& sig, const Diagram& f, bool exact = false,
                     std::size_t exact_max = 20);

}  // namespace dppc
