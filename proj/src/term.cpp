#include "dppc/term.hpp"

#include <algorithm>

#include "dppc/error.hpp"

namespace dppc {

SortListId TermStore::intern(std::vector<SortId> sorts) {
  auto it = sort_list_ids_.find(sorts);
  if (it != sort_list_ids_.end()) return it->second;
  SortListId id = SortListId(sort_lists_.size());
  sort_list_ids_.emplace(sorts, id);
  sort_lists_.push_back(std::move(sorts));
  return id;
}

TermId TermStore::add(Node n) {
  auto key = std::make_tuple(n.kind, n.x0, n.x1);
  auto it = interned_.find(key);
  if (it != interned_.end()) return it->second;
  TermId id = TermId(nodes_.size());
  nodes_.push_back(n);
  interned_.emplace(key, id);
  return id;
}

TermId TermStore::mk_symbol(SymbolId s) {
  check(s < sig_->symbols.size(), ErrorKind::validation, "term symbol out of range");
  const SymbolInfo& si = sig_->symbols[s];
  return add({TermKind::symbol, s, 0, intern(si.in_sorts), intern(si.out_sorts)});
}

TermId TermStore::mk_id(SortListId s) { return add({TermKind::id, s, 0, s, s}); }

TermId TermStore::mk_swap(SortListId a, SortListId b) {
  std::vector<SortId> ab = sorts(a), ba = sorts(b);
  ab.insert(ab.end(), sorts(b).begin(), sorts(b).end());
  ba.insert(ba.end(), sorts(a).begin(), sorts(a).end());
  return add({TermKind::swap, a, b, intern(std::move(ab)), intern(std::move(ba))});
}

TermId TermStore::mk_copy(SortListId s) {
  std::vector<SortId> ss = sorts(s);
  ss.insert(ss.end(), sorts(s).begin(), sorts(s).end());
  return add({TermKind::copy, s, 0, s, intern(std::move(ss))});
}

TermId TermStore::mk_del(SortListId s) {
  return add({TermKind::del, s, 0, s, intern({})});
}

TermId TermStore::mk_equate(SortListId s) {
  std::vector<SortId> ss = sorts(s);
  ss.insert(ss.end(), sorts(s).begin(), sorts(s).end());
  return add({TermKind::equate, s, 0, intern(std::move(ss)), s});
}

TermId TermStore::mk_fresh(SortListId s) {
  return add({TermKind::fresh, s, 0, intern({}), s});
}

TermId TermStore::mk_seq(TermId l, TermId r) {
  check(l < nodes_.size() && r < nodes_.size(), ErrorKind::validation, "term id out of range");
  check(nodes_[l].dom == nodes_[r].cod, ErrorKind::validation,
        "sequential composition interface mismatch");
  return add({TermKind::seq, l, r, nodes_[r].dom, nodes_[l].cod});
}

TermId TermStore::mk_par(TermId l, TermId r) {
  check(l < nodes_.size() && r < nodes_.size(), ErrorKind::validation, "term id out of range");
  std::vector<SortId> d = sorts(nodes_[l].dom), c = sorts(nodes_[l].cod);
  d.insert(d.end(), sorts(nodes_[r].dom).begin(), sorts(nodes_[r].dom).end());
  c.insert(c.end(), sorts(nodes_[r].cod).begin(), sorts(nodes_[r].cod).end());
  return add({TermKind::par, l, r, intern(std::move(d)), intern(std::move(c))});
}

std::vector<TermId> TermStore::reachable(TermId root) const {
  std::vector<TermId> order;
  std::vector<char> state(nodes_.size(), 0);  // 0 new, 1 expanded, 2 done
  std::vector<TermId> stack{root};
  while (!stack.empty()) {
    TermId t = stack.back();
    if (state[t] == 2) {
      stack.pop_back();
      continue;
    }
    const Node& n = nodes_[t];
    bool binary = n.kind == TermKind::seq || n.kind == TermKind::par;
    if (state[t] == 0 && binary) {
      state[t] = 1;
      if (state[n.x1] != 2) stack.push_back(n.x1);
      if (state[n.x0] != 2) stack.push_back(n.x0);
      continue;
    }
    state[t] = 2;
    order.push_back(t);
    stack.pop_back();
  }
  return order;
}

std::size_t TermStore::width(TermId root) const {
  std::size_t w = 0;
  for (TermId t : reachable(root))
    w = std::max(w, sorts(nodes_[t].dom).size() + sorts(nodes_[t].cod).size());
  return w;
}

TermId substitute_symbols(TermStore& st, TermId root, const std::map<SymbolId, TermId>& map) {
  std::map<TermId, TermId> memo;
  for (TermId t : st.reachable(root)) {
    const TermStore::Node n = st.node(t);  // copy: mk_* below may reallocate
    TermId r = t;
    switch (n.kind) {
      case TermKind::symbol: {
        auto it = map.find(SymbolId(n.x0));
        if (it != map.end()) {
          r = it->second;
          check(st.dom(r) == n.dom && st.cod(r) == n.cod, ErrorKind::validation,
                "substituted term does not match the symbol interface");
        }
        break;
      }
      case TermKind::seq:
        r = st.mk_seq(memo.at(n.x0), memo.at(n.x1));
        break;
      case TermKind::par:
        r = st.mk_par(memo.at(n.x0), memo.at(n.x1));
        break;
      default:
        break;
    }
    memo.emplace(t, r);
  }
  return memo.at(root);
}

}  // namespace dppc
