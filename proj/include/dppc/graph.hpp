#pragma once

#include <cstdint>
#include <vector>

#include "dppc/diagram.hpp"

namespace dppc {

// Dependency hypergraph of a diagram: vertices are the variables, one
// hyperedge per assignment plus one for each interface list, in that order.
// Edge sets are sorted and duplicate-free.
struct Hypergraph {
  std::size_t n_vertices = 0;
  std::vector<std::vector<VarId>> edges;

  std::size_t in_edge() const { return edges.size() - 2; }
  std::size_t out_edge() const { return edges.size() - 1; }
};

Hypergraph dependency_hypergraph(const Diagram& f);

// Undirected simple graph; adjacency lists sorted, no self loops.
struct Graph {
  std::size_t n = 0;
  std::vector<std::vector<std::uint32_t>> adj;
};

// Every hyperedge becomes a clique.
Graph primal_graph(const Hypergraph& h);

// Unrooted tree whose leaves carry the hyperedges, one each; every internal
// node has degree exactly 3 (a single tree edge when there are two
// hyperedges, a single node when there is one).
struct BranchTree {
  struct Node {
    std::vector<std::uint32_t> adj;
    std::int32_t edge = -1;  // hyperedge index, >= 0 iff leaf
  };
  std::vector<Node> nodes;
};

void validate_branch_tree(const Hypergraph& h, const BranchTree& t);

// Max over tree edges of the number of vertices with hyperedge occurrences
// on both sides.
std::size_t branch_width(const Hypergraph& h, const BranchTree& t);

// A valid branch tree of no particular width: a spine with the hyperedges
// hanging off in index order. Useful as a baseline and in tests.
BranchTree caterpillar_branch_tree(const Hypergraph& h);

}  // namespace dppc
