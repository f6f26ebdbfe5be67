#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dppc/diagram.hpp"
#include "dppc/interpret.hpp"
#include "dppc/term.hpp"

namespace dppc {

// Attack tree (more precisely a DAG: children may be shared, and a shared
// basic event is triggered, and paid for, once). Nodes are topological,
// children before parents.
struct AttackTree {
  enum class Gate : std::uint8_t { leaf, and_gate, or_gate };
  struct Node {
    std::string name;
    Gate gate = Gate::leaf;
    std::uint64_t cost = 0;  // leaves only
    std::vector<std::size_t> children;
  };
  std::vector<Node> nodes;
  std::size_t root = 0;
};

void validate(const AttackTree& t);

// JSON: {"nodes": [{"name": "a", "cost": 3},
//                  {"name": "g", "gate": "or", "children": ["a", ...]}, ...],
//        "root": "g"}; children refer to earlier nodes, root defaults to the
// last node.
AttackTree parse_attack_tree(const std::string& json_text);

// One boolean-like sort of dimension 2 (index 1 = triggered); one variable
// per node; gates as binary and/or chains; the tree's root as sole output.
struct AttackDiagram {
  Signature sig;
  Diagram f;
};
AttackDiagram attack_to_diagram(const AttackTree& t);

// Min-cost reading: and/or as zero-cost truth tables (impossible rows at
// +inf), each basic event as the column (0 c): not triggering is free,
// triggering costs c.
Interpretation<TropicalSemiring> attack_cost_interpretation(const Signature& sig,
                                                            const AttackTree& t);

// Cheapest set of basic events that makes the root true: by decomposition
// and tropical term evaluation, and by brute force over all 2^leaves subsets.
std::uint64_t attack_min_cost(const AttackTree& t, const EvalLimits& lim = {});
std::uint64_t attack_min_cost_exhaustive(const AttackTree& t);

}  // namespace dppc
