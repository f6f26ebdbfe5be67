#include "dppc/algebraise.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "dppc/error.hpp"

namespace dppc {

TermId permutation_term(TermStore& st, const std::vector<SortId>& in_sorts,
                        const std::vector<std::size_t>& out_from) {
  const std::size_t m = in_sorts.size();
  check(out_from.size() == m, ErrorKind::validation, "permutation length mismatch");
  std::vector<std::size_t> pos(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    check(out_from[i] < m && pos[out_from[i]] == m, ErrorKind::validation,
          "output assignment is not a permutation");
    pos[out_from[i]] = i;
  }

  TermId t = st.mk_id(st.intern(in_sorts));
  std::vector<std::size_t> arr(m);  // arr[p] = input wire currently at position p
  std::iota(arr.begin(), arr.end(), 0);
  std::vector<SortId> cur = in_sorts;

  for (std::size_t round = 0; round <= m; ++round) {
    std::vector<char> swap_at(m, 0);
    bool any = false;
    for (std::size_t p = round % 2; p + 1 < m; p += 2)
      if (pos[arr[p]] > pos[arr[p + 1]]) swap_at[p] = 1, any = true;
    if (!any) continue;

    TermId layer = 0;
    bool have = false;
    for (std::size_t p = 0; p < m;) {
      TermId blk;
      if (swap_at[p]) {
        blk = st.mk_swap(st.intern({cur[p]}), st.intern({cur[p + 1]}));
        std::swap(arr[p], arr[p + 1]);
        std::swap(cur[p], cur[p + 1]);
        p += 2;
      } else {
        blk = st.mk_id(st.intern({cur[p]}));
        p += 1;
      }
      layer = have ? st.mk_par(layer, blk) : blk;
      have = true;
    }
    t = st.mk_seq(layer, t);
  }
  for (std::size_t p = 0; p < m; ++p) assert(arr[p] == out_from[p]);
  return t;
}

namespace {

// s^k -> s by a chain of equates (k >= 1)
TermId collapse_term(TermStore& st, SortId s, std::size_t k) {
  SortListId one = st.intern({s});
  TermId t = st.mk_id(one);
  for (std::size_t i = 1; i < k; ++i)
    t = st.mk_seq(st.mk_equate(one), st.mk_par(t, st.mk_id(one)));
  return t;
}

// s -> s^k by a chain of copies (k >= 1)
TermId spread_term(TermStore& st, SortId s, std::size_t k) {
  SortListId one = st.intern({s});
  TermId t = st.mk_id(one);
  for (std::size_t i = 1; i < k; ++i)
    t = st.mk_seq(st.mk_par(t, st.mk_id(one)), st.mk_copy(one));
  return t;
}

TermId fold_par(TermStore& st, const std::vector<TermId>& blocks) {
  if (blocks.empty()) return st.mk_id(st.intern({}));
  TermId t = blocks[0];
  for (std::size_t i = 1; i < blocks.size(); ++i) t = st.mk_par(t, blocks[i]);
  return t;
}

}  // namespace

TermId pure_wiring_term(TermStore& st, const Diagram& w) {
  check(w.assignments.empty(), ErrorKind::validation,
        "pure wiring factorisation needs a diagram without assignments");
  const std::size_t n = w.n_vars();
  std::vector<std::vector<std::size_t>> in_occ(n), out_occ(n);
  for (std::size_t i = 0; i < w.in.size(); ++i) in_occ[w.in[i]].push_back(i);
  for (std::size_t j = 0; j < w.out.size(); ++j) out_occ[w.out[j]].push_back(j);
  for (VarId v = 0; v < n; ++v)
    check(!in_occ[v].empty() || !out_occ[v].empty(), ErrorKind::validation,
          "variable occurs nowhere");

  // route input occurrences of the same variable next to each other
  std::vector<std::size_t> grouped_in;
  for (VarId v = 0; v < n; ++v)
    grouped_in.insert(grouped_in.end(), in_occ[v].begin(), in_occ[v].end());
  TermId s_in = permutation_term(st, sorts_of(w, w.in), grouped_in);

  // per variable: equate its input bundle to one wire, discarding it if it
  // has no output occurrence
  std::vector<TermId> eblocks;
  for (VarId v = 0; v < n; ++v) {
    if (in_occ[v].empty()) continue;
    TermId b = collapse_term(st, w.var_sort[v], in_occ[v].size());
    if (out_occ[v].empty()) b = st.mk_seq(st.mk_del(st.intern({w.var_sort[v]})), b);
    eblocks.push_back(b);
  }
  TermId e = fold_par(st, eblocks);

  // per variable with outputs: copy its wire out, introducing it freshly if
  // it has no input occurrence
  std::vector<TermId> cblocks;
  for (VarId v = 0; v < n; ++v) {
    if (out_occ[v].empty()) continue;
    TermId b = spread_term(st, w.var_sort[v], out_occ[v].size());
    if (in_occ[v].empty()) b = st.mk_seq(b, st.mk_fresh(st.intern({w.var_sort[v]})));
    cblocks.push_back(b);
  }
  TermId c = fold_par(st, cblocks);

  // route the grouped output bundles to their interface positions
  std::vector<std::size_t> base(n, 0);
  std::size_t acc = 0;
  std::vector<SortId> grouped_out_sorts;
  for (VarId v = 0; v < n; ++v) {
    base[v] = acc;
    acc += out_occ[v].size();
    grouped_out_sorts.insert(grouped_out_sorts.end(), out_occ[v].size(), w.var_sort[v]);
  }
  std::vector<std::size_t> out_from(w.out.size());
  std::vector<std::size_t> used(n, 0);
  for (std::size_t j = 0; j < w.out.size(); ++j) {
    VarId v = w.out[j];
    out_from[j] = base[v] + used[v]++;
  }
  TermId s_out = permutation_term(st, grouped_out_sorts, out_from);

  return st.mk_seq(s_out, st.mk_seq(c, st.mk_seq(e, s_in)));
}

namespace {

// wiring between two occurrence lists over f's variables, compacted to the
// variables that actually occur in them
TermId wiring_between(TermStore& st, const Diagram& f, const std::vector<VarId>& in,
                      const std::vector<VarId>& out) {
  const std::size_t n = f.n_vars();
  std::vector<VarId> re(n, VarId(n));
  Diagram w;
  auto map = [&](const std::vector<VarId>& vs) {
    std::vector<VarId> r;
    r.reserve(vs.size());
    for (VarId v : vs) {
      if (re[v] == VarId(n)) {
        re[v] = VarId(w.var_sort.size());
        w.var_sort.push_back(f.var_sort[v]);
      }
      r.push_back(re[v]);
    }
    return r;
  };
  w.in = map(in);
  w.out = map(out);
  return pure_wiring_term(st, w);
}

}  // namespace

TermId algebrise_small(TermStore& st, const Diagram& f) {
  const Signature& sig = st.sig();
  validate(sig, f);
  if (f.assignments.empty()) return pure_wiring_term(st, f);

  const std::size_t m = f.assignments.size();
  const std::size_t n = f.n_vars();

  // after[k][v]: v occurs in an assignment past k or in the out interface
  std::vector<std::vector<char>> after(m, std::vector<char>(n, 0));
  for (std::size_t k = m; k-- > 0;) {
    if (k + 1 < m) {
      after[k] = after[k + 1];
      for (VarId v : f.assignments[k + 1].outs) after[k][v] = 1;
      for (VarId v : f.assignments[k + 1].ins) after[k][v] = 1;
    } else {
      for (VarId v : f.out) after[k][v] = 1;
    }
  }

  std::vector<VarId> live = f.in;  // frontier wires, repeats equated on use
  TermId t = 0;
  bool have = false;
  auto emit = [&](TermId s) {
    t = have ? st.mk_seq(s, t) : s;
    have = true;
  };
  for (std::size_t k = 0; k < m; ++k) {
    const Assignment& a = f.assignments[k];
    std::vector<char> is_out(n, 0);
    for (VarId v : a.outs) is_out[v] = 1;

    // carry: distinct frontier and argument variables that stay relevant,
    // either used later or awaiting the equation with this symbol's outputs
    // (an already-live output variable is a constraint, not a definition)
    std::vector<char> seen(n, 0);
    std::vector<VarId> carry;
    auto consider = [&](VarId v) {
      if (!seen[v] && (after[k][v] || is_out[v])) {
        seen[v] = 1;
        carry.push_back(v);
      }
    };
    for (VarId v : live) consider(v);
    for (VarId v : a.ins) consider(v);

    std::vector<VarId> target = a.ins;
    target.insert(target.end(), carry.begin(), carry.end());
    emit(wiring_between(st, f, live, target));

    TermId block = st.mk_symbol(a.sym);
    assert(sig.symbols[a.sym].in_sorts.size() == a.ins.size());
    if (!carry.empty()) block = st.mk_par(block, st.mk_id(st.intern(sorts_of(f, carry))));
    emit(block);

    live = a.outs;
    live.insert(live.end(), carry.begin(), carry.end());
  }
  emit(wiring_between(st, f, live, f.out));
  return t;
}

Hierarchy refactor_by_branch_decomposition(const Signature& sig, const Diagram& f,
                                           const BranchTree& bt) {
  validate(sig, f);
  const Hypergraph dep = dependency_hypergraph(f);
  validate_branch_tree(dep, bt);

  const std::size_t n = f.n_vars();
  const std::size_t n_tree = bt.nodes.size();

  // global variable order: first occurrence over assignments, then interfaces
  std::vector<std::size_t> ord(n, n);
  {
    std::size_t next = 0;
    auto note = [&](VarId v) {
      if (ord[v] == n) ord[v] = next++;
    };
    for (const Assignment& a : f.assignments) {
      for (VarId v : a.outs) note(v);
      for (VarId v : a.ins) note(v);
    }
    for (VarId v : f.in) note(v);
    for (VarId v : f.out) note(v);
  }
  auto by_ord = [&](std::vector<VarId> vs) {
    std::sort(vs.begin(), vs.end(), [&](VarId a, VarId b) { return ord[a] < ord[b]; });
    return vs;
  };

  std::int64_t in_leaf = -1, out_leaf = -1;
  for (std::size_t u = 0; u < n_tree; ++u) {
    if (bt.nodes[u].edge == std::int32_t(dep.in_edge())) in_leaf = std::int64_t(u);
    if (bt.nodes[u].edge == std::int32_t(dep.out_edge())) out_leaf = std::int64_t(u);
  }
  assert(in_leaf >= 0 && out_leaf >= 0);

  // root the tree at the output leaf
  std::vector<std::int64_t> parent(n_tree, -1);
  std::vector<std::uint32_t> order;
  {
    std::vector<char> seen(n_tree, 0);
    std::vector<std::uint32_t> stack = {std::uint32_t(out_leaf)};
    seen[out_leaf] = 1;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      order.push_back(u);
      for (auto v : bt.nodes[u].adj)
        if (!seen[v]) {
          seen[v] = 1;
          parent[v] = u;
          stack.push_back(v);
        }
    }
  }

  std::vector<std::uint32_t> total(n, 0);
  for (const auto& e : dep.edges)
    for (VarId v : e) ++total[v];

  // per tree vertex: occurrence counts inside its subtree, whether the input
  // leaf lies below, and the boundary variables in global order
  std::vector<std::vector<std::uint32_t>> below(n_tree);
  std::vector<char> has_in(n_tree, 0);
  std::vector<std::vector<VarId>> iface(n_tree);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto u = *it;
    below[u].assign(n, 0);
    if (bt.nodes[u].edge >= 0)
      for (VarId v : dep.edges[bt.nodes[u].edge]) ++below[u][v];
    has_in[u] = (std::int64_t(u) == in_leaf);
    for (auto c : bt.nodes[u].adj)
      if (parent[c] == std::int64_t(u)) {
        for (VarId v = 0; v < n; ++v) below[u][v] += below[c][v];
        has_in[u] |= has_in[c];
      }
    std::vector<VarId> bd;
    for (VarId v = 0; v < n; ++v)
      if (below[u][v] > 0 && below[u][v] < total[v]) bd.push_back(v);
    iface[u] = by_ord(std::move(bd));
  }

  Hierarchy h;
  h.sig = sig;
  h.n_base = sig.symbols.size();
  std::vector<std::int64_t> node_of(n_tree, -1);
  const std::vector<SortId> in_sorts = sorts_of(f, f.in);

  auto build_body = [&](std::uint32_t u, bool is_root) {
    // variables the body mentions, in global order
    std::vector<char> pick(n, 0);
    auto take = [&](const std::vector<VarId>& vs) {
      for (VarId v : vs) pick[v] = 1;
    };
    std::vector<std::uint32_t> children;
    for (auto c : bt.nodes[u].adj)
      if (parent[c] == std::int64_t(u)) children.push_back(c);
    for (auto c : children) {
      if (bt.nodes[c].edge >= 0) {
        std::size_t e = bt.nodes[c].edge;
        if (std::int64_t(c) == in_leaf)
          take(f.in);
        else
          take(dep.edges[e]);  // an assignment leaf, including private variables
      } else {
        take(iface[c]);
      }
    }
    if (is_root) {
      take(f.in);
      take(f.out);
    } else if (has_in[u]) {
      take(f.in);
    }

    std::vector<VarId> globals;
    for (VarId v = 0; v < n; ++v)
      if (pick[v]) globals.push_back(v);
    globals = by_ord(std::move(globals));
    std::vector<VarId> local(n, 0);
    Diagram body;
    for (std::size_t i = 0; i < globals.size(); ++i) {
      local[globals[i]] = VarId(i);
      body.var_sort.push_back(f.var_sort[globals[i]]);
    }
    auto map = [&](const std::vector<VarId>& vs) {
      std::vector<VarId> r;
      r.reserve(vs.size());
      for (VarId v : vs) r.push_back(local[v]);
      return r;
    };

    for (auto c : children) {
      if (bt.nodes[c].edge >= 0) {
        if (std::int64_t(c) != in_leaf) {
          const Assignment& a = f.assignments[bt.nodes[c].edge];
          body.assignments.push_back({map(a.outs), a.sym, map(a.ins)});
        }
      } else {
        body.assignments.push_back({map(iface[c]), h.call_symbol(NodeId(node_of[c])),
                                    has_in[c] ? map(f.in) : std::vector<VarId>{}});
      }
    }
    body.in = (is_root || has_in[u]) ? map(f.in) : std::vector<VarId>{};
    body.out = is_root ? map(f.out) : map(iface[u]);
    return body;
  };

  // children before parents: reverse preorder visits every internal vertex
  // after its subtree
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto u = *it;
    if (bt.nodes[u].edge >= 0) continue;
    Diagram body = build_body(u, false);
    node_of[u] = std::int64_t(h.nodes.size());
    std::string name = "part" + std::to_string(h.nodes.size());
    h.sig.add_symbol({name, has_in[u] ? in_sorts : std::vector<SortId>{},
                      sorts_of(f, iface[u]), std::nullopt});
    h.nodes.push_back({name, std::move(body)});
  }

  // the root body wraps the output leaf: it calls the neighbour (or inlines
  // nothing when the tree is a single edge) and exposes f's interface
  {
    std::uint32_t u = std::uint32_t(out_leaf);
    Diagram body = build_body(u, true);
    h.sig.add_symbol({"top", in_sorts, sorts_of(f, f.out), std::nullopt});
    h.nodes.push_back({"top", std::move(body)});
    h.root = NodeId(h.nodes.size() - 1);
  }

  validate(h);
  return h;
}

TermId algebrise_hierarchy(TermStore& st, const Hierarchy& h) {
  check(&st.sig() == &h.sig, ErrorKind::validation,
        "term store must be bound to the hierarchy signature");
  validate(h);
  std::vector<TermId> done(h.nodes.size());
  for (std::size_t k = 0; k < h.nodes.size(); ++k) {
    TermId t = algebrise_small(st, h.nodes[k].body);
    std::map<SymbolId, TermId> subst;
    for (std::size_t j = 0; j < k; ++j) subst.emplace(h.call_symbol(NodeId(j)), done[j]);
    done[k] = substitute_symbols(st, t, subst);
  }
  return done[h.root];
}

Algebrised algebrise(const Signature& sig, const Diagram& f, bool exact, std::size_t exact_max) {
  Algebrised r;
  r.dep = dependency_hypergraph(f);
  Graph pg = primal_graph(r.dep);
  r.td = exact && pg.n <= exact_max ? exact_decomposition(pg, exact_max)
                                    : min_fill_decomposition(pg);
  r.tree_w = tree_width(r.td);
  r.bt = tree_to_branch(r.dep, r.td);
  r.branch_w = branch_width(r.dep, r.bt);
  r.h = std::make_unique<Hierarchy>(refactor_by_branch_decomposition(sig, f, r.bt));
  r.store = std::make_unique<TermStore>(r.h->sig);
  r.root = algebrise_hierarchy(*r.store, *r.h);
  return r;
}

}  // namespace dppc
