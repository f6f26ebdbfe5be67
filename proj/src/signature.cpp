#include "dppc/signature.hpp"

#include "dppc/error.hpp"

namespace dppc {

std::optional<SymbolId> Signature::find_symbol(const std::string& name) const {
  for (SymbolId i = 0; i < symbols.size(); ++i)
    if (symbols[i].name == name) return i;
  return std::nullopt;
}

BoolStochSig::BoolStochSig() {
  bool_sort = sig.add_sort("B");
  std::vector<SortId> bb{bool_sort, bool_sort}, b{bool_sort};
  sym_and = sig.add_symbol({"and", bb, b, std::nullopt});
  sym_or = sig.add_symbol({"or", bb, b, std::nullopt});
  sym_not = sig.add_symbol({"not", b, b, std::nullopt});
  sym_observe = sig.add_symbol({"observe", b, {}, std::nullopt});
}

SymbolId BoolStochSig::flip(const mpq_class& p) {
  check(p >= 0 && p <= 1, ErrorKind::validation, "flip probability outside [0,1]: " + p.get_str());
  auto it = flips.find(p);
  if (it != flips.end()) return it->second;
  SymbolId s = sig.add_symbol({"flip(" + p.get_str() + ")", {}, {bool_sort}, p});
  flips.emplace(p, s);
  return s;
}

}  // namespace dppc
