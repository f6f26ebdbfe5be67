#pragma once

#include <string>
#include <utility>

#include "dppc/diagram.hpp"

namespace dppc {

using NodeId = std::uint32_t;

// Hierarchical dot diagram. The signature extends a base signature with one
// call symbol per node, in node order: symbol (n_base + k) calls node k. A
// body may use base symbols and call symbols of strictly earlier nodes, so
// the call structure is a DAG and nodes are stored topologically sorted.
struct Hierarchy {
  Signature sig;  // base symbols ++ call symbols
  std::size_t n_base = 0;
  struct Node {
    std::string name;
    Diagram body;
  };
  std::vector<Node> nodes;
  NodeId root = 0;

  bool is_call(SymbolId s) const { return s >= n_base; }
  NodeId callee(SymbolId s) const { return NodeId(s - n_base); }
  SymbolId call_symbol(NodeId v) const { return SymbolId(n_base + v); }
};

void validate(const Hierarchy& h);

// Replace the assignment at `index` (whose symbol stands for `callee`) by an
// inline copy of callee: its interface is glued to the assignment's variables
// and its assignments take the replaced assignment's position.
Diagram substitute(const Diagram& caller, std::size_t index, const Diagram& callee);

struct UnfoldLimits {
  std::size_t max_vars = 1000000;
  std::size_t max_assignments = 1000000;
};

// Saturating upper bound for the size of unfold(h): (vars, assignments).
std::pair<std::size_t, std::size_t> unfold_size_bound(const Hierarchy& h);

// Expand all calls bottom-up into a flat diagram over the base signature.
Diagram unfold(const Hierarchy& h, const UnfoldLimits& lim = {});

}  // namespace dppc
