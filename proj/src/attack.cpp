#include "dppc/attack.hpp"

#include <cassert>
#include <map>

#include "dppc/algebraise.hpp"
#include "dppc/circuit.hpp"
#include "json.hpp"

namespace dppc {

void validate(const AttackTree& t) {
  check(!t.nodes.empty(), ErrorKind::validation, "attack tree has no nodes");
  check(t.root < t.nodes.size(), ErrorKind::validation, "attack tree root out of range");
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& n = t.nodes[i];
    check(!n.name.empty(), ErrorKind::validation, "attack tree node without a name");
    check(seen.emplace(n.name, i).second, ErrorKind::validation,
          "duplicate attack tree node " + n.name);
    if (n.gate == AttackTree::Gate::leaf) {
      check(n.children.empty(), ErrorKind::validation, "leaf " + n.name + " has children");
      check(n.cost != TropicalSemiring::INF, ErrorKind::validation,
            "leaf " + n.name + " has an infinite cost");
    } else {
      check(n.children.size() >= 2, ErrorKind::validation,
            "gate " + n.name + " needs at least two children");
      check(n.cost == 0, ErrorKind::validation, "gate " + n.name + " cannot carry a cost");
      for (std::size_t c : n.children)
        check(c < i, ErrorKind::validation, "gate " + n.name + " uses a later node");
    }
  }
}

AttackTree parse_attack_tree(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorKind::parse, std::string("attack tree JSON: ") + e.what());
  }
  check(j.is_object() && j.contains("nodes") && j["nodes"].is_array(), ErrorKind::parse,
        "attack tree JSON needs a top-level \"nodes\" array");

  AttackTree t;
  std::map<std::string, std::size_t> id_of;
  for (const auto& jn : j["nodes"]) {
    check(jn.is_object() && jn.contains("name") && jn["name"].is_string(), ErrorKind::parse,
          "attack tree node needs a \"name\" string");
    AttackTree::Node n;
    n.name = jn["name"].get<std::string>();
    if (jn.contains("gate")) {
      std::string g = jn["gate"].is_string() ? jn["gate"].get<std::string>() : "";
      check(g == "and" || g == "or", ErrorKind::parse,
            "gate of " + n.name + " must be \"and\" or \"or\"");
      check(!jn.contains("cost"), ErrorKind::parse, "gate " + n.name + " cannot carry a cost");
      n.gate = g == "and" ? AttackTree::Gate::and_gate : AttackTree::Gate::or_gate;
      check(jn.contains("children") && jn["children"].is_array(), ErrorKind::parse,
            "gate " + n.name + " needs a \"children\" array");
      for (const auto& jc : jn["children"]) {
        check(jc.is_string(), ErrorKind::parse, "children of " + n.name + " must be names");
        auto it = id_of.find(jc.get<std::string>());
        check(it != id_of.end(), ErrorKind::parse,
              "gate " + n.name + " references undefined node " + jc.get<std::string>());
        n.children.push_back(it->second);
      }
    } else {
      check(jn.contains("cost") && jn["cost"].is_number_unsigned(), ErrorKind::parse,
            "leaf " + n.name + " needs a nonnegative integer \"cost\"");
      n.cost = jn["cost"].get<std::uint64_t>();
    }
    id_of[n.name] = t.nodes.size();
    t.nodes.push_back(std::move(n));
  }

  if (j.contains("root")) {
    check(j["root"].is_string(), ErrorKind::parse, "\"root\" must be a node name");
    auto it = id_of.find(j["root"].get<std::string>());
    check(it != id_of.end(), ErrorKind::parse, "undefined root node");
    t.root = it->second;
  } else {
    t.root = t.nodes.size() - 1;
  }
  validate(t);
  return t;
}

AttackDiagram attack_to_diagram(const AttackTree& t) {
  validate(t);
  AttackDiagram ad;
  SortId b = ad.sig.add_sort("B");
  SymbolId sym_and = ad.sig.add_symbol({"and", {b, b}, {b}, {}});
  SymbolId sym_or = ad.sig.add_symbol({"or", {b, b}, {b}, {}});

  ad.f.var_sort.assign(t.nodes.size(), b);
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const auto& n = t.nodes[i];
    if (n.gate == AttackTree::Gate::leaf) {
      SymbolId leaf = ad.sig.add_symbol({n.name, {}, {b}, {}});
      ad.f.assignments.push_back({{VarId(i)}, leaf, {}});
      continue;
    }
    // left-deep chain of binary gates through fresh intermediates
    SymbolId sym = n.gate == AttackTree::Gate::and_gate ? sym_and : sym_or;
    VarId acc = VarId(n.children[0]);
    for (std::size_t k = 1; k + 1 < n.children.size(); ++k) {
      VarId tmp = VarId(ad.f.var_sort.size());
      ad.f.var_sort.push_back(b);
      ad.f.assignments.push_back({{tmp}, sym, {acc, VarId(n.children[k])}});
      acc = tmp;
    }
    ad.f.assignments.push_back({{VarId(i)}, sym, {acc, VarId(n.children.back())}});
  }
  ad.f.out = {VarId(t.root)};
  validate(ad.sig, ad.f);
  return ad;
}

Interpretation<TropicalSemiring> attack_cost_interpretation(const Signature& sig,
                                                            const AttackTree& t) {
  TropicalSemiring tr;
  std::map<std::string, std::uint64_t> cost_of;
  for (const auto& n : t.nodes)
    if (n.gate == AttackTree::Gate::leaf) cost_of[n.name] = n.cost;

  Interpretation<TropicalSemiring> I;
  I.dim.assign(sig.sorts.size(), 2);
  I.sym.resize(sig.symbols.size());
  for (SymbolId s = 0; s < sig.symbols.size(); ++s) {
    const SymbolInfo& si = sig.symbols[s];
    if (si.name == "and" || si.name == "or") {
      Matrix<std::uint64_t> m(2, 4, tr.zero());
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t c = 0; c < 2; ++c) {
          std::size_t v = si.name == "and" ? (a & c) : (a | c);
          m.at(v, 2 * a + c) = tr.one();  // consistent in/out pairs cost nothing
        }
      I.sym[s] = std::move(m);
    } else if (auto it = cost_of.find(si.name); it != cost_of.end()) {
      Matrix<std::uint64_t> m(2, 1, tr.zero());
      m.at(0, 0) = 0;  // not triggering the event is free
      m.at(1, 0) = it->second;
      I.sym[s] = std::move(m);
    }
  }
  return I;
}

std::uint64_t attack_min_cost(const AttackTree& t, const EvalLimits& lim) {
  AttackDiagram ad = attack_to_diagram(t);
  auto I = attack_cost_interpretation(ad.sig, t);
  auto R = algebrise(ad.sig, ad.f);
  TropicalSemiring alg;
  auto ct = compile_term(alg, *R.store, I, R.root, lim);
  auto vals = eval_circuit(alg, ct.circuit);
  assert(ct.rows == 2 && ct.cols == 1);
  return vals[ct.root_at(1, 0)];
}

std::uint64_t attack_min_cost_exhaustive(const AttackTree& t) {
  validate(t);
  TropicalSemiring tr;
  std::vector<std::size_t> leaves;
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    if (t.nodes[i].gate == AttackTree::Gate::leaf) leaves.push_back(i);
  check(leaves.size() <= 25, ErrorKind::resource, "too many basic events to enumerate");

  std::uint64_t best = tr.zero();
  std::vector<char> val(t.nodes.size());
  for (std::size_t mask = 0; mask < (std::size_t(1) << leaves.size()); ++mask) {
    std::uint64_t cost = tr.one();
    for (std::size_t l = 0; l < leaves.size(); ++l) {
      val[leaves[l]] = (mask >> l) & 1;
      if (val[leaves[l]]) cost = tr.mul(cost, t.nodes[leaves[l]].cost);
    }
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      const auto& n = t.nodes[i];
      if (n.gate == AttackTree::Gate::leaf) continue;
      bool conj = n.gate == AttackTree::Gate::and_gate;
      bool v = conj;
      for (std::size_t c : n.children) v = conj ? (v && val[c]) : (v || val[c]);
      val[i] = v;
    }
    if (val[t.root]) best = tr.add(best, cost);
  }
  return best;
}

}  // namespace dppc
