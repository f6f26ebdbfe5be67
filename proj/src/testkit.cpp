#include "dppc/testkit.hpp"

#include <algorithm>
#include <set>

namespace dppc::testkit {

bool equivalent(const Signature& sig, const Diagram& f, const Diagram& g, std::mt19937_64& rng,
                int trials, std::size_t dim) {
  if (sorts_of(f, f.in) != sorts_of(g, g.in) || sorts_of(f, f.out) != sorts_of(g, g.out))
    return false;
  Fp61Semiring alg;
  for (int t = 0; t < trials; ++t) {
    auto I = random_interpretation(alg, sig, rng, dim);
    if (!matrix_eq(alg, oracle_matrix(alg, I, f), oracle_matrix(alg, I, g))) return false;
  }
  return true;
}

bool nice_constraints_ok(const Diagram& f) {
  auto dup_free = [](const std::vector<VarId>& xs) {
    std::set<VarId> s(xs.begin(), xs.end());
    return s.size() == xs.size();
  };
  if (!dup_free(f.in) || !dup_free(f.out)) return false;
  for (const Assignment& a : f.assignments) {
    std::vector<VarId> vars = a.outs;
    vars.insert(vars.end(), a.ins.begin(), a.ins.end());
    if (!dup_free(vars)) return false;
  }

  std::vector<char> in_assignment(f.n_vars(), 0);
  std::vector<std::size_t> edges(f.n_vars(), 0);
  for (const Assignment& a : f.assignments) {
    std::set<VarId> vars(a.outs.begin(), a.outs.end());
    vars.insert(a.ins.begin(), a.ins.end());
    for (VarId v : vars) {
      in_assignment[v] = 1;
      ++edges[v];
    }
  }
  for (VarId v : std::set<VarId>(f.in.begin(), f.in.end())) ++edges[v];
  for (VarId v : std::set<VarId>(f.out.begin(), f.out.end())) ++edges[v];

  for (VarId v : f.in)
    if (!in_assignment[v]) return false;
  for (VarId v : f.out)
    if (!in_assignment[v]) return false;
  for (std::size_t v = 0; v < f.n_vars(); ++v)
    if (edges[v] < 2) return false;
  return true;
}

namespace {

Signature random_signature(std::mt19937_64& rng, const GenOptions& opts) {
  Signature sig;
  for (std::size_t i = 0; i < opts.n_sorts; ++i) sig.add_sort("s" + std::to_string(i));
  for (std::size_t i = 0; i < opts.n_symbols; ++i) {
    std::size_t total = 1 + rng() % opts.max_arity;
    std::size_t in_n = rng() % (total + 1);
    SymbolInfo si;
    si.name = "g" + std::to_string(i);
    for (std::size_t j = 0; j < in_n; ++j) si.in_sorts.push_back(SortId(rng() % opts.n_sorts));
    for (std::size_t j = 0; j < total - in_n; ++j)
      si.out_sorts.push_back(SortId(rng() % opts.n_sorts));
    sig.add_symbol(std::move(si));
  }
  return sig;
}

Diagram drop_unused(const Diagram& f) {
  std::vector<char> used(f.n_vars(), 0);
  for (VarId v : f.in) used[v] = 1;
  for (VarId v : f.out) used[v] = 1;
  for (const Assignment& a : f.assignments) {
    for (VarId v : a.outs) used[v] = 1;
    for (VarId v : a.ins) used[v] = 1;
  }
  std::vector<VarId> new_id(f.n_vars());
  Diagram g;
  for (VarId v = 0; v < f.n_vars(); ++v)
    if (used[v]) {
      new_id[v] = VarId(g.var_sort.size());
      g.var_sort.push_back(f.var_sort[v]);
    }
  auto map_list = [&](std::vector<VarId> xs) {
    for (VarId& v : xs) v = new_id[v];
    return xs;
  };
  for (const Assignment& a : f.assignments)
    g.assignments.push_back({map_list(a.outs), a.sym, map_list(a.ins)});
  g.in = map_list(f.in);
  g.out = map_list(f.out);
  return g;
}

}  // namespace

Diagram random_diagram_over(const Signature& sig, std::mt19937_64& rng, const GenOptions& opts) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    Diagram f;
    std::size_t nv = 1 + rng() % opts.max_vars;
    for (std::size_t v = 0; v < nv; ++v)
      f.var_sort.push_back(v < sig.sorts.size() ? SortId(v) : SortId(rng() % sig.sorts.size()));

    std::vector<std::vector<VarId>> by_sort(sig.sorts.size());
    for (VarId v = 0; v < f.n_vars(); ++v) by_sort[f.var_sort[v]].push_back(v);

    std::size_t k = rng() % (opts.max_assignments + 1);
    for (std::size_t j = 0; j < k && !sig.symbols.empty(); ++j) {
      for (int tries = 0; tries < 20; ++tries) {
        const SymbolId s = SymbolId(rng() % sig.symbols.size());
        const SymbolInfo& si = sig.symbols[s];
        Assignment a;
        a.sym = s;
        bool ok = true;
        std::set<VarId> used;  // nice diagrams keep assignment variables distinct
        auto pick = [&](SortId so, std::vector<VarId>& into) -> bool {
          std::vector<VarId> cand;
          for (VarId v : by_sort[so])
            if (!opts.nice || !used.count(v)) cand.push_back(v);
          if (cand.empty()) return false;
          VarId v = cand[rng() % cand.size()];
          used.insert(v);
          into.push_back(v);
          return true;
        };
        for (SortId so : si.out_sorts)
          if (!pick(so, a.outs)) { ok = false; break; }
        for (SortId so : si.in_sorts) {
          if (!ok || !pick(so, a.ins)) { ok = false; break; }
        }
        if (ok) {
          f.assignments.push_back(std::move(a));
          break;
        }
      }
    }

    std::vector<char> covered(f.n_vars(), 0);
    for (const Assignment& a : f.assignments) {
      for (VarId v : a.outs) covered[v] = 1;
      for (VarId v : a.ins) covered[v] = 1;
    }
    std::vector<VarId> pool;
    for (VarId v = 0; v < f.n_vars(); ++v)
      if (!opts.nice || covered[v]) pool.push_back(v);

    auto draw_list = [&](std::size_t max_len) {
      std::vector<VarId> xs;
      if (pool.empty()) return xs;
      if (opts.nice) {
        std::vector<VarId> shuffled = pool;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::size_t len = rng() % (std::min(max_len, shuffled.size()) + 1);
        xs.assign(shuffled.begin(), shuffled.begin() + len);
      } else {
        std::size_t len = rng() % (max_len + 1);
        for (std::size_t i = 0; i < len; ++i) xs.push_back(pool[rng() % pool.size()]);
      }
      return xs;
    };
    f.in = draw_list(opts.max_interface);
    f.out = draw_list(opts.max_interface);
    f = drop_unused(f);

    if (opts.nice) {
      // every variable must sit in at least two hyperedges; assignment-only
      // variables get an extra interface occurrence
      std::vector<std::size_t> edges(f.n_vars(), 0);
      for (const Assignment& a : f.assignments) {
        std::set<VarId> vars(a.outs.begin(), a.outs.end());
        vars.insert(a.ins.begin(), a.ins.end());
        for (VarId v : vars) ++edges[v];
      }
      for (VarId v : f.in) ++edges[v];
      for (VarId v : f.out) ++edges[v];
      for (VarId v = 0; v < f.n_vars(); ++v) {
        if (edges[v] >= 2) continue;
        bool is_in = std::count(f.in.begin(), f.in.end(), v) > 0;
        bool is_out = std::count(f.out.begin(), f.out.end(), v) > 0;
        if (is_in)
          f.out.push_back(v);
        else if (is_out)
          f.in.push_back(v);
        else
          (rng() & 1 ? f.in : f.out).push_back(v);
      }
      if (!nice_constraints_ok(f)) continue;
    }
    return f;
  }
  raise(ErrorKind::validation, "random diagram generation failed to satisfy constraints");
}

GeneratedProgram random_program(std::mt19937_64& rng, const GenOptions& opts) {
  GeneratedProgram gp;
  gp.sig = random_signature(rng, opts);
  gp.f = random_diagram_over(gp.sig, rng, opts);
  validate(gp.sig, gp.f);
  return gp;
}

Hierarchy random_hierarchy(std::mt19937_64& rng, const GenOptions& opts, std::size_t n_nodes,
                           std::size_t max_unfolded_vars) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    Hierarchy h;
    h.sig = random_signature(rng, opts);
    h.n_base = h.sig.symbols.size();
    for (std::size_t k = 0; k < n_nodes; ++k) {
      Diagram body = random_diagram_over(h.sig, rng, opts);
      h.sig.add_symbol({"f" + std::to_string(k), sorts_of(body, body.in),
                        sorts_of(body, body.out), std::nullopt});
      h.nodes.push_back({"f" + std::to_string(k), body});
    }
    h.root = NodeId(n_nodes - 1);

    bool root_calls = false;
    for (const Assignment& a : h.nodes[h.root].body.assignments)
      if (h.is_call(a.sym)) root_calls = true;
    if (n_nodes > 1 && !root_calls) continue;

    try {
      validate(h);
      UnfoldLimits lim;
      lim.max_vars = lim.max_assignments = 10000;
      Diagram flat = unfold(h, lim);
      if (flat.n_vars() <= max_unfolded_vars) return h;
    } catch (const Error&) {
    }
  }
  raise(ErrorKind::validation, "random hierarchy generation failed to satisfy constraints");
}

BoolProgram disease_test_program() {
  BoolProgram P;
  BoolStochSig& bs = P.bs;
  const SortId B = bs.bool_sort;
  SymbolId tp_rate = bs.flip(make_rational(99, 100));
  SymbolId fp_rate = bs.flip(make_rational(1, 50));
  SymbolId prior = bs.flip(make_rational(1, 10000));

  // test(z): vars z, tTT, tTB, tTP, nz, tFP, t
  Diagram test;
  test.var_sort.assign(7, B);
  test.assignments = {
      {{1}, tp_rate, {}},          {{2}, fp_rate, {}},          {{3}, bs.sym_and, {0, 1}},
      {{4}, bs.sym_not, {0}},      {{5}, bs.sym_and, {4, 2}},   {{6}, bs.sym_or, {3, 5}},
  };
  test.in = {0};
  test.out = {6};

  Hierarchy& h = P.h;
  h.n_base = bs.sig.symbols.size();
  h.sig = bs.sig;
  SymbolId call_test = h.sig.add_symbol({"test", {B}, {B}, std::nullopt});
  h.sig.add_symbol({"hasDisease", {}, {B}, std::nullopt});

  // hasDisease(): vars x, t1, t2, nt2, y; observe one positive, one negative
  Diagram main;
  main.var_sort.assign(5, B);
  main.assignments = {
      {{0}, prior, {}},           {{1}, call_test, {0}}, {{2}, call_test, {0}},
      {{3}, bs.sym_not, {2}},     {{4}, bs.sym_and, {1, 3}}, {{}, bs.sym_observe, {4}},
  };
  main.out = {0};

  h.nodes.push_back({"test", std::move(test)});
  h.nodes.push_back({"hasDisease", std::move(main)});
  h.root = 1;
  validate(h);
  return P;
}

BoolProgram and_chain_program(std::size_t n) {
  BoolProgram P;
  BoolStochSig& bs = P.bs;
  const SortId B = bs.bool_sort;
  SymbolId half = bs.flip(make_rational(1, 2));

  Hierarchy& h = P.h;
  h.n_base = bs.sig.symbols.size();
  h.sig = bs.sig;

  Diagram f0;
  f0.var_sort.assign(3, B);
  f0.assignments = {{{0}, half, {}}, {{1}, half, {}}, {{2}, bs.sym_and, {0, 1}}};
  f0.out = {2};
  h.sig.add_symbol({"f0", {}, {B}, std::nullopt});
  h.nodes.push_back({"f0", std::move(f0)});

  for (std::size_t k = 1; k <= n; ++k) {
    SymbolId prev = h.call_symbol(NodeId(k - 1));
    Diagram fk;
    fk.var_sort.assign(3, B);
    fk.assignments = {{{0}, prev, {}}, {{1}, prev, {}}, {{2}, bs.sym_and, {0, 1}}};
    fk.out = {2};
    h.sig.add_symbol({"f" + std::to_string(k), {}, {B}, std::nullopt});
    h.nodes.push_back({"f" + std::to_string(k), std::move(fk)});
  }
  h.root = NodeId(n);
  validate(h);
  return P;
}

BoolDiagram shared_flip_or_of_ands() {
  BoolDiagram D;
  BoolStochSig& bs = D.bs;
  const SortId B = bs.bool_sort;
  SymbolId fa = bs.flip(make_rational(1, 10));
  SymbolId fx = bs.flip(make_rational(1, 5));
  SymbolId fb = bs.flip(make_rational(3, 10));

  Diagram& f = D.f;
  f.var_sort.assign(6, B);  // a, x, b, u, v, w
  f.assignments = {{{0}, fa, {}},          {{1}, fx, {}},          {{2}, fb, {}},
                   {{3}, bs.sym_and, {0, 1}}, {{4}, bs.sym_and, {1, 2}}, {{5}, bs.sym_or, {3, 4}}};
  f.out = {5};
  validate(bs.sig, f);
  return D;
}

}  // namespace dppc::testkit
