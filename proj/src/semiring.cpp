#include "dppc/semiring.hpp"

namespace dppc {

SemiringId parse_semiring(const std::string& name) {
  if (name == "rational") return SemiringId::rational;
  if (name == "bool") return SemiringId::boolean;
  if (name == "tropical") return SemiringId::tropical;
  if (name == "fp61") return SemiringId::fp61;
  raise(ErrorKind::parse, "unknown semiring '" + name + "' (rational|bool|tropical|fp61)");
}

const char* semiring_name(SemiringId id) {
  switch (id) {
    case SemiringId::rational: return RationalSemiring::name();
    case SemiringId::boolean: return BoolSemiring::name();
    case SemiringId::tropical: return TropicalSemiring::name();
    case SemiringId::fp61: return Fp61Semiring::name();
  }
  return "?";
}

}  // namespace dppc
