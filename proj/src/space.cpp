#include "lipfree/space.hpp"

namespace lipfree {

NormKind parse_norm_kind(std::string_view text) {
  if (text == "l1" || text == "L1") return NormKind::L1;
  if (text == "l2" || text == "L2") return NormKind::L2;
  if (text == "linf" || text == "LINF" || text == "Linf" || text == "inf") return NormKind::LInf;
  throw FormatError("unknown norm '" + std::string(text) + "' (expected l1|l2|linf)");
}

std::string_view to_string(NormKind kind) {
  switch (kind) {
    case NormKind::L1:
      return "l1";
    case NormKind::L2:
      return "l2";
    case NormKind::LInf:
      return "linf";
  }
  return "l2";
}

}  // namespace lipfree
