#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "jointensor/lattice.hpp"
#include "jointensor/scalar.hpp"

namespace jointensor {

/// A number read from user input: always has a double approximation, and an
/// exact rational value when the text denotes one.
struct Number {
  std::optional<mpq_class> exact;
  double approx = 0.0;

  static Number parse(std::string_view text);
  static Number of(long value) { return {mpq_class(value), static_cast<double>(value)}; }
  std::string str() const;
};

enum class ValuationKind { identity, constant, power, reciprocal, table };

/// The function f applied to joins. Optionally scaled by a constant factor.
class Valuation {
 public:
  static Valuation identity();
  static Valuation constant(Number value);
  static Valuation power(Number exponent);
  static Valuation reciprocal();
  /// Keys are element display names.
  static Valuation table(std::map<std::string, Number> values, std::string source = "inline");

  /// "identity" | "constant:v" | "power:a" | "reciprocal" | "table:path"
  /// (table files are CSV with header `element,value`).
  static Valuation parse(std::string_view spec);
  static Valuation load_table(const std::string& path);

  /// t·f
  Valuation scaled(Number factor) const;

  ValuationKind kind() const noexcept { return kind_; }

  /// Nullopt when the value is not an exact rational (e.g. a non-integer power).
  std::optional<mpq_class> exact(const Lattice& lattice, const Element& x) const;
  double approx(const Lattice& lattice, const Element& x) const;

  /// Exact values throw Error(mode_mismatch) when not representable.
  template <Scalar T>
  T value(const Lattice& lattice, const Element& x) const;

  /// Exact mode is the default when every parameter of f is rational.
  Mode default_mode() const noexcept;

  std::string describe() const;

 private:
  Valuation(ValuationKind kind) : kind_(kind) {}
  std::optional<mpq_class> base_exact(const Lattice& lattice, const Element& x) const;
  double base_approx(const Lattice& lattice, const Element& x) const;
  mpz_class numeric_key(const Lattice& lattice, const Element& x) const;
  const Number& table_entry(const Lattice& lattice, const Element& x) const;

  ValuationKind kind_;
  Number parameter_;
  Number scale_ = Number::of(1);
  std::map<std::string, Number> table_;
  std::string source_;
};

template <>
mpq_class Valuation::value<mpq_class>(const Lattice& lattice, const Element& x) const;
template <>
double Valuation::value<double>(const Lattice& lattice, const Element& x) const;

}  // namespace jointensor
