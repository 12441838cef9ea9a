#include "jointensor/error.hpp"

namespace jointensor {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::not_a_semilattice: return "not_a_semilattice";
    case Errc::not_a_partial_order: return "not_a_partial_order";
    case Errc::unknown_element: return "unknown_element";
    case Errc::missing_valuation: return "missing_valuation";
    case Errc::mode_mismatch: return "mode_mismatch";
    case Errc::bad_index: return "bad_index";
    case Errc::bad_shape: return "bad_shape";
    case Errc::bad_split: return "bad_split";
    case Errc::bad_value: return "bad_value";
    case Errc::bad_order: return "bad_order";
    case Errc::too_large: return "too_large";
    case Errc::not_symmetric: return "not_symmetric";
    case Errc::not_positive: return "not_positive";
    case Errc::odd_order: return "odd_order";
    case Errc::parse_error: return "parse_error";
  }
  return "unknown";
}

}  // namespace jointensor
