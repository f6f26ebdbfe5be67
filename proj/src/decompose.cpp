#include "dppc/decompose.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <numeric>
#include <set>

#include "dppc/error.hpp"

namespace dppc {

void validate_tree_decomposition(const Graph& g, const TreeDecomposition& t) {
  const std::size_t nb = t.bags.size();
  check(nb > 0 && t.adj.size() == nb, ErrorKind::validation,
        "tree decomposition must have at least one bag");

  std::size_t tree_edges = 0;
  for (std::size_t b = 0; b < nb; ++b) {
    check(std::is_sorted(t.bags[b].begin(), t.bags[b].end()) &&
              std::adjacent_find(t.bags[b].begin(), t.bags[b].end()) == t.bags[b].end(),
          ErrorKind::validation, "bags must be sorted vertex sets");
    for (VarId v : t.bags[b])
      check(v < g.n, ErrorKind::validation, "bag vertex out of range");
    for (auto o : t.adj[b]) {
      check(o < nb && o != b, ErrorKind::validation, "bag adjacency out of range");
      check(std::count(t.adj[o].begin(), t.adj[o].end(), std::uint32_t(b)) == 1,
            ErrorKind::validation, "bag adjacency is not symmetric");
    }
    tree_edges += t.adj[b].size();
  }
  check(tree_edges == 2 * (nb - 1), ErrorKind::validation, "bag tree has wrong edge count");

  std::vector<char> seen(nb, 0);
  std::vector<std::uint32_t> stack = {0};
  seen[0] = 1;
  std::size_t visited = 0;
  while (!stack.empty()) {
    auto b = stack.back();
    stack.pop_back();
    ++visited;
    for (auto o : t.adj[b])
      if (!seen[o]) seen[o] = 1, stack.push_back(o);
  }
  check(visited == nb, ErrorKind::validation, "bag tree is not connected");

  // vertex and edge coverage
  std::vector<char> covered(g.n, 0);
  for (const auto& bag : t.bags)
    for (VarId v : bag) covered[v] = 1;
  for (VarId v = 0; v < g.n; ++v)
    check(covered[v], ErrorKind::validation, "vertex not covered by any bag");
  for (VarId v = 0; v < g.n; ++v)
    for (auto w : g.adj[v]) {
      if (w < v) continue;
      bool inside = false;
      for (const auto& bag : t.bags)
        if (std::binary_search(bag.begin(), bag.end(), v) &&
            std::binary_search(bag.begin(), bag.end(), VarId(w))) {
          inside = true;
          break;
        }
      check(inside, ErrorKind::validation, "graph edge not covered by any bag");
    }

  // running intersection: the bags holding v form a subtree; equivalently,
  // removing v's bags disconnects nothing among them
  for (VarId v = 0; v < g.n; ++v) {
    std::int64_t start = -1;
    std::size_t holding = 0;
    for (std::size_t b = 0; b < nb; ++b)
      if (std::binary_search(t.bags[b].begin(), t.bags[b].end(), v)) {
        ++holding;
        start = std::int64_t(b);
      }
    if (holding == 0) continue;
    std::vector<char> vis(nb, 0);
    std::vector<std::uint32_t> st2 = {std::uint32_t(start)};
    vis[start] = 1;
    std::size_t reached = 0;
    while (!st2.empty()) {
      auto b = st2.back();
      st2.pop_back();
      ++reached;
      for (auto o : t.adj[b])
        if (!vis[o] && std::binary_search(t.bags[o].begin(), t.bags[o].end(), v))
          vis[o] = 1, st2.push_back(o);
    }
    check(reached == holding, ErrorKind::validation,
          "bags containing a vertex must form a subtree");
  }
}

std::size_t tree_width(const TreeDecomposition& t) {
  std::size_t mx = 0;
  for (const auto& bag : t.bags) mx = std::max(mx, bag.size());
  return mx == 0 ? 0 : mx - 1;
}

TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<VarId>& order) {
  const std::size_t n = g.n;
  check(order.size() == n, ErrorKind::validation, "elimination order has wrong length");
  TreeDecomposition t;
  if (n == 0) {
    t.bags.push_back({});
    t.adj.push_back({});
    return t;
  }

  std::vector<std::set<VarId>> adj(n);
  for (VarId v = 0; v < n; ++v) adj[v] = {g.adj[v].begin(), g.adj[v].end()};
  std::vector<std::size_t> time_of(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    check(order[i] < n && time_of[order[i]] == n, ErrorKind::validation,
          "elimination order is not a permutation");
    time_of[order[i]] = i;
  }

  std::vector<std::vector<VarId>> live_nbrs(n);
  for (std::size_t i = 0; i < n; ++i) {
    VarId v = order[i];
    std::vector<VarId> nbrs(adj[v].begin(), adj[v].end());
    live_nbrs[i] = nbrs;
    for (VarId a : nbrs) {
      adj[a].erase(v);
      for (VarId b : nbrs)
        if (a != b) adj[a].insert(b);
    }
    std::vector<VarId> bag = nbrs;
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    t.bags.push_back(std::move(bag));
  }

  t.adj.assign(n, {});
  auto link = [&](std::size_t a, std::size_t b) {
    t.adj[a].push_back(std::uint32_t(b));
    t.adj[b].push_back(std::uint32_t(a));
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // attach to the first-eliminated remaining neighbour, or the next bag
    // when the vertex was isolated at elimination time
    std::size_t parent = i + 1;
    std::size_t best = n;
    for (VarId a : live_nbrs[i]) best = std::min(best, time_of[a]);
    if (best < n) parent = best;
    link(i, parent);
  }
  return t;
}

namespace {

std::size_t count_fill(const std::vector<std::set<VarId>>& adj, VarId v) {
  std::size_t missing = 0;
  for (auto it = adj[v].begin(); it != adj[v].end(); ++it)
    for (auto jt = std::next(it); jt != adj[v].end(); ++jt)
      if (!adj[*it].count(*jt)) ++missing;
  return missing;
}

}  // namespace

TreeDecomposition min_fill_decomposition(const Graph& g) {
  const std::size_t n = g.n;
  std::vector<std::set<VarId>> adj(n);
  for (VarId v = 0; v < n; ++v) adj[v] = {g.adj[v].begin(), g.adj[v].end()};

  std::vector<char> gone(n, 0);
  std::vector<std::size_t> fill(n, 0);
  for (VarId v = 0; v < n; ++v) fill[v] = count_fill(adj, v);

  std::vector<VarId> order;
  for (std::size_t step = 0; step < n; ++step) {
    VarId best = n;
    for (VarId v = 0; v < n; ++v) {
      if (gone[v]) continue;
      if (best == n || fill[v] < fill[best] ||
          (fill[v] == fill[best] && adj[v].size() < adj[best].size()))
        best = v;
    }
    order.push_back(best);
    gone[best] = 1;

    std::set<VarId> dirty = adj[best];
    for (VarId a : adj[best]) {
      adj[a].erase(best);
      for (VarId b : adj[best])
        if (a != b && adj[a].insert(b).second) {
          dirty.insert(adj[a].begin(), adj[a].end());
          dirty.insert(a);
        }
    }
    adj[best].clear();
    for (VarId v : dirty)
      if (!gone[v]) fill[v] = count_fill(adj, v);
  }
  return decomposition_from_order(g, order);
}

namespace {

// Neighbours outside S of v's connected component within S + v.
std::uint32_t reach_mask(const std::vector<std::uint32_t>& adj, std::uint32_t inside,
                         VarId v) {
  std::uint32_t comp = std::uint32_t(1) << v;
  std::uint32_t frontier = comp;
  std::uint32_t nbrs = 0;
  while (frontier) {
    std::uint32_t next = 0;
    std::uint32_t f = frontier;
    while (f) {
      int w = std::countr_zero(f);
      f &= f - 1;
      next |= adj[w];
    }
    nbrs |= next;
    std::uint32_t grow = next & inside & ~comp;
    comp |= grow;
    frontier = grow;
  }
  return nbrs & ~inside & ~(std::uint32_t(1) << v);
}

std::vector<std::uint8_t> treewidth_table(const Graph& g) {
  const std::size_t n = g.n;
  std::vector<std::uint32_t> adj(n, 0);
  for (VarId v = 0; v < n; ++v)
    for (auto w : g.adj[v]) adj[v] |= std::uint32_t(1) << w;

  // tw[S] = best over orders eliminating exactly S first of the largest
  // neighbourhood met; the last-eliminated element v of S sees
  // reach(S \ v, v) as its bag neighbours
  std::vector<std::uint8_t> tw(std::size_t(1) << n, 0);
  for (std::uint32_t S = 1; S < (std::uint32_t(1) << n); ++S) {
    std::uint32_t bestv = 255;
    std::uint32_t s = S;
    while (s) {
      int v = std::countr_zero(s);
      s &= s - 1;
      std::uint32_t R = S & ~(std::uint32_t(1) << v);
      std::uint32_t q = std::uint32_t(std::popcount(reach_mask(adj, R, VarId(v))));
      std::uint32_t cand = std::max<std::uint32_t>(tw[R], q);
      if (cand < bestv) bestv = cand;
    }
    tw[S] = std::uint8_t(bestv);
  }
  return tw;
}

}  // namespace

std::size_t exact_treewidth(const Graph& g, std::size_t max_vertices) {
  check(g.n <= max_vertices && g.n <= 25, ErrorKind::resource,
        "exact treewidth is limited to small graphs");
  if (g.n == 0) return 0;
  auto tw = treewidth_table(g);
  return tw[(std::size_t(1) << g.n) - 1];
}

TreeDecomposition exact_decomposition(const Graph& g, std::size_t max_vertices) {
  check(g.n <= max_vertices && g.n <= 25, ErrorKind::resource,
        "exact treewidth is limited to small graphs");
  const std::size_t n = g.n;
  if (n == 0) return decomposition_from_order(g, {});
  auto tw = treewidth_table(g);

  std::vector<std::uint32_t> adj(n, 0);
  for (VarId v = 0; v < n; ++v)
    for (auto w : g.adj[v]) adj[v] |= std::uint32_t(1) << w;

  std::vector<VarId> order(n);
  std::uint32_t S = (std::uint32_t(1) << n) - 1;
  for (std::size_t i = n; i-- > 0;) {
    // order[i] is eliminated last among S: pick the smallest achiever
    VarId pick = VarId(n);
    std::uint32_t s = S;
    while (s) {
      int v = std::countr_zero(s);
      s &= s - 1;
      std::uint32_t R = S & ~(std::uint32_t(1) << v);
      std::uint32_t q = std::uint32_t(std::popcount(reach_mask(adj, R, VarId(v))));
      if (std::max<std::uint32_t>(tw[R], q) == tw[S]) {
        pick = VarId(v);
        break;
      }
    }
    assert(pick < n);
    order[i] = pick;
    S &= ~(std::uint32_t(1) << pick);
  }
  TreeDecomposition t = decomposition_from_order(g, order);
  assert(tree_width(t) == std::size_t(tw[(std::uint32_t(1) << n) - 1]));
  return t;
}

BranchTree tree_to_branch(const Hypergraph& h, const TreeDecomposition& t) {
  const std::size_t nb = t.bags.size();
  const std::size_t m = h.edges.size();
  check(nb > 0, ErrorKind::validation, "tree decomposition is empty");
  check(m >= 1, ErrorKind::validation, "hypergraph has no hyperedges");

  // host: smallest containing bag, earliest on ties
  std::vector<std::size_t> host(m, nb);
  for (std::size_t e = 0; e < m; ++e) {
    for (std::size_t b = 0; b < nb; ++b) {
      bool inside = std::includes(t.bags[b].begin(), t.bags[b].end(), h.edges[e].begin(),
                                  h.edges[e].end());
      if (inside && (host[e] == nb || t.bags[b].size() < t.bags[host[e]].size()))
        host[e] = b;
    }
    check(host[e] < nb, ErrorKind::validation,
          "hyperedge not contained in any bag of the tree decomposition");
  }

  // mutable tree: hub per bag, leaf per hyperedge
  std::vector<std::set<std::uint32_t>> adj(nb + m);
  std::vector<std::int32_t> label(nb + m, -1);
  for (std::size_t b = 0; b < nb; ++b)
    for (auto o : t.adj[b])
      if (o > b) adj[b].insert(o), adj[o].insert(std::uint32_t(b));
  for (std::size_t e = 0; e < m; ++e) {
    label[nb + e] = std::int32_t(e);
    adj[nb + e].insert(std::uint32_t(host[e]));
    adj[host[e]].insert(std::uint32_t(nb + e));
  }

  std::vector<char> dead(nb + m, 0);
  // drop bare unlabelled leaves, splice unlabelled degree-2 nodes
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t u = 0; u < adj.size(); ++u) {
      if (dead[u] || label[u] >= 0) continue;
      if (adj[u].size() == 0 && m > 0) {
        dead[u] = 1;  // isolated hub (everything else already trimmed around it)
        changed = true;
      } else if (adj[u].size() == 1) {
        auto o = *adj[u].begin();
        adj[o].erase(std::uint32_t(u));
        adj[u].clear();
        dead[u] = 1;
        changed = true;
      } else if (adj[u].size() == 2) {
        auto it = adj[u].begin();
        auto a = *it, b = *std::next(it);
        adj[a].erase(std::uint32_t(u));
        adj[b].erase(std::uint32_t(u));
        adj[a].insert(b);
        adj[b].insert(a);
        adj[u].clear();
        dead[u] = 1;
        changed = true;
      }
    }
  }

  // binarise unlabelled nodes of degree > 3 into chains
  for (std::size_t u = 0; u < adj.size(); ++u) {
    if (dead[u] || label[u] >= 0 || adj[u].size() <= 3) continue;
    std::vector<std::uint32_t> nbrs(adj[u].begin(), adj[u].end());
    for (auto o : nbrs) adj[o].erase(std::uint32_t(u));
    adj[u].clear();
    dead[u] = 1;
    std::uint32_t prev = nbrs[0];
    for (std::size_t i = 1; i + 1 < nbrs.size(); ++i) {
      std::uint32_t c = std::uint32_t(adj.size());
      adj.push_back({});
      label.push_back(-1);
      dead.push_back(0);
      adj[c].insert(prev);
      adj[prev].insert(c);
      adj[c].insert(nbrs[i]);
      adj[nbrs[i]].insert(c);
      prev = c;
    }
    adj[prev].insert(nbrs.back());
    adj[nbrs.back()].insert(prev);
  }

  BranchTree bt;
  std::vector<std::uint32_t> id(adj.size(), 0);
  for (std::size_t u = 0; u < adj.size(); ++u)
    if (!dead[u]) {
      id[u] = std::uint32_t(bt.nodes.size());
      bt.nodes.push_back({{}, label[u]});
    }
  for (std::size_t u = 0; u < adj.size(); ++u)
    if (!dead[u])
      for (auto o : adj[u]) bt.nodes[id[u]].adj.push_back(id[o]);

  validate_branch_tree(h, bt);
  return bt;
}

}  // namespace dppc
