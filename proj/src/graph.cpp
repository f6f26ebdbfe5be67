#include "dppc/graph.hpp"

#include <algorithm>

#include "dppc/error.hpp"

namespace dppc {

static std::vector<VarId> sorted_unique(std::vector<VarId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Hypergraph dependency_hypergraph(const Diagram& f) {
  Hypergraph h;
  h.n_vertices = f.n_vars();
  for (const Assignment& a : f.assignments) {
    std::vector<VarId> e = a.outs;
    e.insert(e.end(), a.ins.begin(), a.ins.end());
    h.edges.push_back(sorted_unique(std::move(e)));
  }
  h.edges.push_back(sorted_unique(f.in));
  h.edges.push_back(sorted_unique(f.out));
  return h;
}

Graph primal_graph(const Hypergraph& h) {
  Graph g;
  g.n = h.n_vertices;
  g.adj.assign(g.n, {});
  for (const auto& e : h.edges)
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j) {
        g.adj[e[i]].push_back(e[j]);
        g.adj[e[j]].push_back(e[i]);
      }
  for (auto& a : g.adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return g;
}

void validate_branch_tree(const Hypergraph& h, const BranchTree& t) {
  const std::size_t n = t.nodes.size();
  check(n > 0, ErrorKind::validation, "branch tree is empty");

  std::size_t tree_edges = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const auto& nd = t.nodes[u];
    for (auto v : nd.adj) {
      check(v < n && v != u, ErrorKind::validation, "branch tree adjacency out of range");
      const auto& back = t.nodes[v].adj;
      check(std::count(back.begin(), back.end(), std::uint32_t(u)) == 1 &&
                std::count(nd.adj.begin(), nd.adj.end(), v) == 1,
            ErrorKind::validation, "branch tree adjacency is not symmetric");
    }
    tree_edges += nd.adj.size();
    if (nd.edge >= 0) {
      check(nd.adj.size() <= 1, ErrorKind::validation, "labelled branch node is not a leaf");
      check(std::size_t(nd.edge) < h.edges.size(), ErrorKind::validation,
            "branch leaf label out of range");
    } else {
      check(nd.adj.size() == 3, ErrorKind::validation,
            "internal branch node must have degree 3");
    }
  }
  check(tree_edges == 2 * (n - 1), ErrorKind::validation, "branch tree has wrong edge count");

  // connectedness; together with the edge count this makes it a tree
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> stack = {0};
  seen[0] = 1;
  std::size_t visited = 0;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    ++visited;
    for (auto v : t.nodes[u].adj)
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
  }
  check(visited == n, ErrorKind::validation, "branch tree is not connected");

  std::vector<char> used(h.edges.size(), 0);
  std::size_t leaves = 0;
  for (const auto& nd : t.nodes)
    if (nd.edge >= 0) {
      check(!used[nd.edge], ErrorKind::validation, "hyperedge appears on two branch leaves");
      used[nd.edge] = 1;
      ++leaves;
    }
  check(leaves == h.edges.size(), ErrorKind::validation,
        "branch tree must carry every hyperedge exactly once");
}

std::size_t branch_width(const Hypergraph& h, const BranchTree& t) {
  validate_branch_tree(h, t);
  std::vector<std::uint32_t> total(h.n_vertices, 0);
  for (const auto& e : h.edges)
    for (auto v : e) ++total[v];

  std::size_t best = 0;
  // iterative post-order from node 0; below[u] counts hyperedge occurrences
  // per vertex within u's subtree
  const std::size_t n = t.nodes.size();
  std::vector<std::vector<std::uint32_t>> below(n);
  std::vector<std::int64_t> parent(n, -1);
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> stack = {0};
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (auto v : t.nodes[u].adj)
      if (!seen[v]) {
        seen[v] = 1;
        parent[v] = u;
        stack.push_back(v);
      }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto u = *it;
    below[u].assign(h.n_vertices, 0);
    if (t.nodes[u].edge >= 0)
      for (auto v : h.edges[t.nodes[u].edge]) ++below[u][v];
    for (auto c : t.nodes[u].adj)
      if (parent[c] == std::int64_t(u))
        for (std::size_t v = 0; v < h.n_vertices; ++v) below[u][v] += below[c][v];
    if (parent[u] >= 0) {
      std::size_t crossing = 0;
      for (std::size_t v = 0; v < h.n_vertices; ++v)
        if (below[u][v] > 0 && below[u][v] < total[v]) ++crossing;
      best = std::max(best, crossing);
    }
  }
  return best;
}

BranchTree caterpillar_branch_tree(const Hypergraph& h) {
  const std::size_t m = h.edges.size();
  check(m >= 1, ErrorKind::validation, "hypergraph has no hyperedges");
  BranchTree t;
  auto link = [&](std::uint32_t a, std::uint32_t b) {
    t.nodes[a].adj.push_back(b);
    t.nodes[b].adj.push_back(a);
  };
  for (std::size_t i = 0; i < m; ++i) t.nodes.push_back({{}, std::int32_t(i)});
  if (m == 1) return t;
  if (m == 2) {
    link(0, 1);
    return t;
  }
  std::uint32_t prev = 0;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    std::uint32_t s = std::uint32_t(t.nodes.size());
    t.nodes.push_back({{}, -1});
    link(s, prev);
    link(s, std::uint32_t(i));
    prev = s;
  }
  link(prev, std::uint32_t(m - 1));
  return t;
}

}  // namespace dppc
