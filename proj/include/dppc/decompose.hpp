#pragma once

#include <cstdint>
#include <vector>

#include "dppc/graph.hpp"

namespace dppc {

// Tree decomposition: a tree of bags (sorted vertex sets) such that every
// vertex and every edge of the graph appears in a bag and the bags holding
// any fixed vertex form a subtree.
struct TreeDecomposition {
  std::vector<std::vector<VarId>> bags;
  std::vector<std::vector<std::uint32_t>> adj;
};

void validate_tree_decomposition(const Graph& g, const TreeDecomposition& t);

// max bag size - 1 (0 for an empty decomposition)
std::size_t tree_width(const TreeDecomposition& t);

// Eliminate the vertices in the given order, adding fill edges; bag i is
// vertex order[i] plus its not-yet-eliminated neighbours at that time.
TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<VarId>& order);

// Greedy min-fill elimination; ties by smaller degree, then smaller vertex.
TreeDecomposition min_fill_decomposition(const Graph& g);

// Exact treewidth by dynamic programming over vertex subsets. Rejects graphs
// with more than max_vertices vertices (cost grows as 2^n).
std::size_t exact_treewidth(const Graph& g, std::size_t max_vertices = 20);
TreeDecomposition exact_decomposition(const Graph& g, std::size_t max_vertices = 20);

// Branch decomposition from a tree decomposition: every hyperedge hangs off
// its smallest containing bag, bag nodes are binarised into chains, and
// redundant nodes are suppressed. branch width <= tree width + 1.
BranchTree tree_to_branch(const Hypergraph& h, const TreeDecomposition& t);

}  // namespace dppc
