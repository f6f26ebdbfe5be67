#pragma once

#include <cstdint>
#include <vector>

#include "dppc/signature.hpp"

namespace dppc {

struct Assignment {
  std::vector<VarId> outs;
  SymbolId sym;
  std::vector<VarId> ins;

  bool operator==(const Assignment&) const = default;
};

// A dot diagram: variables 0..var_sort.size()-1, a list of assignments, and
// input/output interface lists (repetitions allowed). Every variable has to
// occur in an interface list or an assignment.
struct Diagram {
  std::vector<SortId> var_sort;
  std::vector<Assignment> assignments;
  std::vector<VarId> in, out;

  std::size_t n_vars() const { return var_sort.size(); }
};

void validate(const Signature& sig, const Diagram& f);

std::vector<SortId> sorts_of(const Diagram& f, const std::vector<VarId>& vars);

// Canonical variable order used throughout: inputs, then each assignment's
// outputs then inputs, then outputs; first occurrence wins.
std::vector<VarId> first_occurrence_order(const Diagram& f);

Diagram renumber(const Diagram& f, const std::vector<VarId>& new_id);
Diagram canonicalize(const Diagram& f);

// Exact structural equality after canonical renumbering. Sound for
// equivalence (equal implies equivalent) but sensitive to assignment order;
// semantic equivalence of reordered diagrams is checked via the oracle.
bool diagram_equal(const Diagram& f, const Diagram& g);

Diagram identity_diagram(const std::vector<SortId>& sorts);
// in = a ++ b, out = b ++ a
Diagram swap_diagram(const std::vector<SortId>& a, const std::vector<SortId>& b);

// Identify the given variable pairs (sorts must agree), drop the resulting
// duplicate variables and renumber canonically.
Diagram quotient(const Diagram& u, const std::vector<std::pair<VarId, VarId>>& links);

// Sequential composition matching matrix product: g feeds f, in = in(g),
// out = out(f); out(g) and in(f) are glued pointwise (sorts must agree).
Diagram compose(const Diagram& f, const Diagram& g);
Diagram tensor(const Diagram& f, const Diagram& g);

}  // namespace dppc
