#pragma once

#include <gmpxx.h>

#include <concepts>
#include <string>
#include <string_view>

namespace jointensor {

/// Exact scalars are arbitrary-precision rationals, approximate ones are doubles.
/// Every decomposition is built in exactly one of the two modes; the mode is the
/// template argument, so the two cannot be mixed inside one computation.
using Exact = mpq_class;

template <class T>
concept Scalar = std::same_as<T, mpq_class> || std::same_as<T, double>;

enum class Mode { exact, approximate };

template <Scalar T>
constexpr Mode mode_of() {
  return std::same_as<T, mpq_class> ? Mode::exact : Mode::approximate;
}

const char* mode_name(Mode mode) noexcept;
Mode parse_mode(std::string_view text);

/// Exact values print as "p" or "p/q"; doubles use 17 significant digits.
std::string to_string(const mpq_class& value);
std::string to_string(double value);

inline double to_double(const mpq_class& value) { return value.get_d(); }
inline double to_double(double value) { return value; }

inline bool is_zero(const mpq_class& value) { return sgn(value) == 0; }
inline bool is_zero(double value) { return value == 0.0; }

/// Parses "p", "p/q", or a decimal with optional exponent ("1.5e-3") exactly.
/// Returns false when the text is not a finite exact number.
bool parse_rational(std::string_view text, mpq_class& out);

}  // namespace jointensor
