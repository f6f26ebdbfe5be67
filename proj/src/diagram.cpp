#include "dppc/diagram.hpp"

#include <algorithm>

#include "dppc/error.hpp"
#include "dppc/union_find.hpp"

namespace dppc {

void validate(const Signature& sig, const Diagram& f) {
  const std::size_t n = f.n_vars();
  for (SortId s : f.var_sort)
    check(s < sig.sorts.size(), ErrorKind::validation, "variable with unknown sort");

  std::vector<char> seen(n, 0);
  auto touch = [&](VarId v) {
    check(v < n, ErrorKind::validation, "variable index out of range");
    seen[v] = 1;
  };
  for (VarId v : f.in) touch(v);
  for (VarId v : f.out) touch(v);
  for (const Assignment& a : f.assignments) {
    check(a.sym < sig.symbols.size(), ErrorKind::validation, "assignment with unknown symbol");
    const SymbolInfo& si = sig.symbols[a.sym];
    check(a.ins.size() == si.in_sorts.size() && a.outs.size() == si.out_sorts.size(),
          ErrorKind::validation, "assignment arity does not match symbol '" + si.name + "'");
    for (std::size_t i = 0; i < a.ins.size(); ++i) {
      touch(a.ins[i]);
      check(f.var_sort[a.ins[i]] == si.in_sorts[i], ErrorKind::validation,
            "assignment input sort mismatch at symbol '" + si.name + "'");
    }
    for (std::size_t i = 0; i < a.outs.size(); ++i) {
      touch(a.outs[i]);
      check(f.var_sort[a.outs[i]] == si.out_sorts[i], ErrorKind::validation,
            "assignment output sort mismatch at symbol '" + si.name + "'");
    }
  }
  for (std::size_t v = 0; v < n; ++v)
    check(seen[v], ErrorKind::validation, "variable " + std::to_string(v) + " occurs nowhere");
}

std::vector<SortId> sorts_of(const Diagram& f, const std::vector<VarId>& vars) {
  std::vector<SortId> s;
  s.reserve(vars.size());
  for (VarId v : vars) s.push_back(f.var_sort[v]);
  return s;
}

std::vector<VarId> first_occurrence_order(const Diagram& f) {
  std::vector<VarId> order;
  order.reserve(f.n_vars());
  std::vector<char> seen(f.n_vars(), 0);
  auto visit = [&](VarId v) {
    if (!seen[v]) {
      seen[v] = 1;
      order.push_back(v);
    }
  };
  for (VarId v : f.in) visit(v);
  for (const Assignment& a : f.assignments) {
    for (VarId v : a.outs) visit(v);
    for (VarId v : a.ins) visit(v);
  }
  for (VarId v : f.out) visit(v);
  return order;
}

Diagram renumber(const Diagram& f, const std::vector<VarId>& new_id) {
  Diagram g;
  g.var_sort.resize(f.n_vars());
  for (std::size_t v = 0; v < f.n_vars(); ++v) g.var_sort[new_id[v]] = f.var_sort[v];
  auto map_list = [&](const std::vector<VarId>& xs) {
    std::vector<VarId> ys;
    ys.reserve(xs.size());
    for (VarId v : xs) ys.push_back(new_id[v]);
    return ys;
  };
  g.assignments.reserve(f.assignments.size());
  for (const Assignment& a : f.assignments)
    g.assignments.push_back({map_list(a.outs), a.sym, map_list(a.ins)});
  g.in = map_list(f.in);
  g.out = map_list(f.out);
  return g;
}

Diagram canonicalize(const Diagram& f) {
  std::vector<VarId> order = first_occurrence_order(f);
  check(order.size() == f.n_vars(), ErrorKind::validation,
        "cannot canonicalize: some variable occurs nowhere");
  std::vector<VarId> new_id(f.n_vars());
  for (VarId i = 0; i < order.size(); ++i) new_id[order[i]] = i;
  return renumber(f, new_id);
}

bool diagram_equal(const Diagram& f, const Diagram& g) {
  if (f.n_vars() != g.n_vars() || f.assignments.size() != g.assignments.size()) return false;
  Diagram cf = canonicalize(f), cg = canonicalize(g);
  return cf.var_sort == cg.var_sort && cf.in == cg.in && cf.out == cg.out &&
         cf.assignments == cg.assignments;
}

Diagram identity_diagram(const std::vector<SortId>& sorts) {
  Diagram d;
  d.var_sort = sorts;
  d.in.resize(sorts.size());
  for (VarId v = 0; v < sorts.size(); ++v) d.in[v] = v;
  d.out = d.in;
  return d;
}

Diagram swap_diagram(const std::vector<SortId>& a, const std::vector<SortId>& b) {
  Diagram d;
  d.var_sort = a;
  d.var_sort.insert(d.var_sort.end(), b.begin(), b.end());
  for (VarId v = 0; v < d.var_sort.size(); ++v) d.in.push_back(v);
  for (VarId v = 0; v < b.size(); ++v) d.out.push_back(VarId(a.size() + v));
  for (VarId v = 0; v < a.size(); ++v) d.out.push_back(v);
  return d;
}

Diagram quotient(const Diagram& u, const std::vector<std::pair<VarId, VarId>>& links) {
  UnionFind uf(u.n_vars());
  for (auto [a, b] : links) {
    check(a < u.n_vars() && b < u.n_vars(), ErrorKind::validation, "quotient link out of range");
    check(u.var_sort[a] == u.var_sort[b], ErrorKind::validation,
          "cannot glue variables of different sorts");
    uf.unite(a, b);
  }

  // Collapse each class onto its representative, then renumber densely.
  std::vector<VarId> to_dense(u.n_vars());
  std::vector<VarId> dense(u.n_vars(), UINT32_MAX);
  std::vector<SortId> var_sort;
  for (VarId v = 0; v < u.n_vars(); ++v)
    if (uf.find(v) == v) {
      dense[v] = VarId(var_sort.size());
      var_sort.push_back(u.var_sort[v]);
    }
  for (VarId v = 0; v < u.n_vars(); ++v) to_dense[v] = dense[uf.find(v)];

  Diagram collapsed;
  collapsed.var_sort = std::move(var_sort);
  auto map_list = [&](std::vector<VarId> xs) {
    for (VarId& v : xs) v = to_dense[v];
    return xs;
  };
  for (const Assignment& a : u.assignments)
    collapsed.assignments.push_back({map_list(a.outs), a.sym, map_list(a.ins)});
  collapsed.in = map_list(u.in);
  collapsed.out = map_list(u.out);

  // Gluing two interface-only occurrences can close a wire into a loop whose
  // meaning is a scalar factor (the sort dimension); that is not expressible
  // as a dot diagram, so gluing is partial here.
  std::vector<char> seen(collapsed.n_vars(), 0);
  for (VarId v : collapsed.in) seen[v] = 1;
  for (VarId v : collapsed.out) seen[v] = 1;
  for (const Assignment& a : collapsed.assignments) {
    for (VarId v : a.outs) seen[v] = 1;
    for (VarId v : a.ins) seen[v] = 1;
  }
  for (std::size_t v = 0; v < collapsed.n_vars(); ++v)
    check(seen[v], ErrorKind::validation,
          "gluing closed a wire into a loop; the result is not a dot diagram");
  return canonicalize(collapsed);
}

Diagram compose(const Diagram& f, const Diagram& g) {
  check(sorts_of(f, f.in) == sorts_of(g, g.out), ErrorKind::validation,
        "composition interface mismatch");
  const VarId shift = VarId(g.n_vars());
  Diagram u;
  u.var_sort = g.var_sort;
  u.var_sort.insert(u.var_sort.end(), f.var_sort.begin(), f.var_sort.end());
  u.assignments = g.assignments;
  for (Assignment a : f.assignments) {
    for (VarId& v : a.outs) v = VarId(v + shift);
    for (VarId& v : a.ins) v = VarId(v + shift);
    u.assignments.push_back(std::move(a));
  }
  u.in = g.in;
  u.out = f.out;
  for (VarId& v : u.out) v = VarId(v + shift);

  std::vector<std::pair<VarId, VarId>> links;
  links.reserve(f.in.size());
  for (std::size_t i = 0; i < f.in.size(); ++i)
    links.push_back({VarId(f.in[i] + shift), g.out[i]});
  return quotient(u, links);
}

Diagram tensor(const Diagram& f, const Diagram& g) {
  // Here f is the first (most significant) factor: keep f's ids, shift g's.
  const VarId shift = VarId(f.n_vars());
  Diagram u;
  u.var_sort = f.var_sort;
  u.var_sort.insert(u.var_sort.end(), g.var_sort.begin(), g.var_sort.end());
  u.assignments = f.assignments;
  for (Assignment a : g.assignments) {
    for (VarId& v : a.outs) v = VarId(v + shift);
    for (VarId& v : a.ins) v = VarId(v + shift);
    u.assignments.push_back(std::move(a));
  }
  u.in = f.in;
  for (VarId v : g.in) u.in.push_back(VarId(v + shift));
  u.out = f.out;
  for (VarId v : g.out) u.out.push_back(VarId(v + shift));
  return canonicalize(u);
}

}  // namespace dppc
