#include "dppc/hierarchy.hpp"

#include <set>

#include "dppc/error.hpp"

namespace dppc {

void validate(const Hierarchy& h) {
  check(h.n_base <= h.sig.symbols.size(), ErrorKind::validation, "n_base exceeds signature");
  check(h.sig.symbols.size() == h.n_base + h.nodes.size(), ErrorKind::validation,
        "hierarchy needs exactly one call symbol per node");
  check(!h.nodes.empty() && h.root < h.nodes.size(), ErrorKind::validation, "bad root node");

  std::set<std::string> names;
  for (const auto& node : h.nodes)
    check(names.insert(node.name).second, ErrorKind::validation,
          "duplicate node name '" + node.name + "'");

  for (NodeId k = 0; k < h.nodes.size(); ++k) {
    const Diagram& body = h.nodes[k].body;
    validate(h.sig, body);
    for (const Assignment& a : body.assignments)
      if (h.is_call(a.sym))
        check(h.callee(a.sym) < k, ErrorKind::validation,
              "node '" + h.nodes[k].name + "' calls a node not defined before it");
    // The call symbol must advertise exactly this node's interface.
    const SymbolInfo& si = h.sig.symbols[h.call_symbol(k)];
    check(si.in_sorts == sorts_of(body, body.in) && si.out_sorts == sorts_of(body, body.out),
          ErrorKind::validation,
          "call symbol arity does not match the interface of node '" + h.nodes[k].name + "'");
  }
}

Diagram substitute(const Diagram& caller, std::size_t index, const Diagram& callee) {
  check(index < caller.assignments.size(), ErrorKind::validation, "no such assignment");
  const Assignment& call = caller.assignments[index];
  check(call.ins.size() == callee.in.size() && call.outs.size() == callee.out.size() &&
            sorts_of(caller, call.ins) == sorts_of(callee, callee.in) &&
            sorts_of(caller, call.outs) == sorts_of(callee, callee.out),
        ErrorKind::validation, "substituted body does not fit the call assignment");

  const VarId shift = VarId(caller.n_vars());
  Diagram u;
  u.var_sort = caller.var_sort;
  u.var_sort.insert(u.var_sort.end(), callee.var_sort.begin(), callee.var_sort.end());
  u.in = caller.in;
  u.out = caller.out;
  for (std::size_t i = 0; i < caller.assignments.size(); ++i) {
    if (i == index) {
      for (Assignment a : callee.assignments) {
        for (VarId& v : a.outs) v = VarId(v + shift);
        for (VarId& v : a.ins) v = VarId(v + shift);
        u.assignments.push_back(std::move(a));
      }
    } else {
      u.assignments.push_back(caller.assignments[i]);
    }
  }
  std::vector<std::pair<VarId, VarId>> links;
  for (std::size_t i = 0; i < call.ins.size(); ++i)
    links.push_back({call.ins[i], VarId(callee.in[i] + shift)});
  for (std::size_t i = 0; i < call.outs.size(); ++i)
    links.push_back({call.outs[i], VarId(callee.out[i] + shift)});
  return quotient(u, links);
}

std::pair<std::size_t, std::size_t> unfold_size_bound(const Hierarchy& h) {
  auto sat_add = [](std::size_t a, std::size_t b) {
    std::size_t s = a + b;
    return s < a ? SIZE_MAX : s;
  };
  std::vector<std::size_t> vars(h.nodes.size()), asg(h.nodes.size());
  for (NodeId k = 0; k < h.nodes.size(); ++k) {
    const Diagram& body = h.nodes[k].body;
    std::size_t v = body.n_vars(), a = 0;
    for (const Assignment& as : body.assignments) {
      if (h.is_call(as.sym)) {
        v = sat_add(v, vars[h.callee(as.sym)]);
        a = sat_add(a, asg[h.callee(as.sym)]);
      } else {
        a = sat_add(a, 1);
      }
    }
    vars[k] = v;
    asg[k] = a;
  }
  return {vars[h.root], asg[h.root]};
}

// Single pass per node: append fresh copies of flat callee bodies at their
// call positions, then glue all call interfaces at once.
static Diagram expand_body(const Hierarchy& h, const Diagram& body,
                           const std::vector<Diagram>& flat) {
  Diagram u;
  u.var_sort = body.var_sort;
  u.in = body.in;
  u.out = body.out;
  std::vector<std::pair<VarId, VarId>> links;
  for (const Assignment& a : body.assignments) {
    if (!h.is_call(a.sym)) {
      u.assignments.push_back(a);
      continue;
    }
    const Diagram& cal = flat[h.callee(a.sym)];
    const VarId shift = VarId(u.var_sort.size());
    u.var_sort.insert(u.var_sort.end(), cal.var_sort.begin(), cal.var_sort.end());
    for (std::size_t i = 0; i < a.ins.size(); ++i)
      links.push_back({a.ins[i], VarId(cal.in[i] + shift)});
    for (std::size_t i = 0; i < a.outs.size(); ++i)
      links.push_back({a.outs[i], VarId(cal.out[i] + shift)});
    for (Assignment ca : cal.assignments) {
      for (VarId& v : ca.outs) v = VarId(v + shift);
      for (VarId& v : ca.ins) v = VarId(v + shift);
      u.assignments.push_back(std::move(ca));
    }
  }
  return quotient(u, links);
}

Diagram unfold(const Hierarchy& h, const UnfoldLimits& lim) {
  validate(h);
  auto [vbound, abound] = unfold_size_bound(h);
  check(vbound <= lim.max_vars && abound <= lim.max_assignments, ErrorKind::resource,
        "unfolding would exceed the configured size limit (bound: " + std::to_string(vbound) +
            " vars, " + std::to_string(abound) + " assignments)");

  // Expand only what the root reaches, bottom-up.
  std::vector<char> reach(h.nodes.size(), 0);
  reach[h.root] = 1;
  for (NodeId k = NodeId(h.nodes.size()); k-- > 0;) {
    if (!reach[k]) continue;
    for (const Assignment& a : h.nodes[k].body.assignments)
      if (h.is_call(a.sym)) reach[h.callee(a.sym)] = 1;
  }
  std::vector<Diagram> flat(h.nodes.size());
  for (NodeId k = 0; k < h.nodes.size(); ++k)
    if (reach[k]) flat[k] = expand_body(h, h.nodes[k].body, flat);
  return flat[h.root];
}

}  // namespace dppc
