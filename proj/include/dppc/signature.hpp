#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dppc {

using SortId = std::uint32_t;
using SymbolId = std::uint32_t;
using VarId = std::uint32_t;

struct SymbolInfo {
  std::string name;
  std::vector<SortId> in_sorts;   // inputs consumed
  std::vector<SortId> out_sorts;  // outputs produced
  std::optional<mpq_class> param; // flip probability, where applicable
};

struct Signature {
  std::vector<std::string> sorts;
  std::vector<SymbolInfo> symbols;

  SortId add_sort(std::string name) {
    sorts.push_back(std::move(name));
    return SortId(sorts.size() - 1);
  }
  SymbolId add_symbol(SymbolInfo s) {
    symbols.push_back(std::move(s));
    return SymbolId(symbols.size() - 1);
  }
  std::optional<SymbolId> find_symbol(const std::string& name) const;
};

// Base signature of probabilistic boolean programs: a single sort B with
// and, or : B,B -> B; not : B -> B; observe : B -> (); and flip(p) : () -> B
// interned per distinct probability p in [0,1].
struct BoolStochSig {
  Signature sig;
  SortId bool_sort;
  SymbolId sym_and, sym_or, sym_not, sym_observe;
  std::map<mpq_class, SymbolId> flips;

  BoolStochSig();
  SymbolId flip(const mpq_class& p);
};

}  // namespace dppc
