#pragma once

#include <stdexcept>
#include <string>

namespace jointensor {

enum class Errc {
  not_a_semilattice,
  not_a_partial_order,
  unknown_element,
  missing_valuation,
  mode_mismatch,
  bad_index,
  bad_shape,
  bad_split,
  bad_value,
  bad_order,
  too_large,
  not_symmetric,
  not_positive,
  odd_order,
  parse_error,
};

/// Stable snake_case identifier, used in machine-readable error output.
const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace jointensor
