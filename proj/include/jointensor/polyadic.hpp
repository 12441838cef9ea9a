#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "jointensor/lattice.hpp"
#include "jointensor/scalar.hpp"
#include "jointensor/valuation.hpp"

namespace jointensor {

/// Symmetric polyadic form A = Σ_k c_k e_k ∘ ... ∘ e_k, where e_k is column k of
/// the boolean factor E (entry (i, k) = [x_i ⪯ y_k]) and y_k runs over S^{∨d}.
template <Scalar T>
class PolyadicDecomposition {
 public:
  PolyadicDecomposition(OrderedSubset base, std::size_t d, std::vector<Element> terms, std::vector<T> coefficients,
                        std::vector<T> term_values, IncidenceMatrix factor);

  std::size_t n() const noexcept { return base_.size(); }
  std::size_t d() const noexcept { return d_; }
  std::size_t r() const noexcept { return terms_.size(); }

  const OrderedSubset& base() const noexcept { return base_; }
  /// y_k in column order.
  std::span<const Element> terms() const noexcept { return terms_; }
  std::span<const T> coefficients() const noexcept { return coefficients_; }
  /// f(y_k) in column order.
  std::span<const T> term_values() const noexcept { return term_values_; }
  const IncidenceMatrix& factor() const noexcept { return factor_; }

  /// Σ_k c_k Π_j E_{idx_j, k}; 0-based indices, Error(bad_index) when out of range.
  T evaluate(std::span<const std::size_t> idx) const;

  /// Same decomposition with columns permuted: new column j is old column order[j].
  PolyadicDecomposition reordered(std::span<const std::size_t> order) const;

 private:
  OrderedSubset base_;
  std::size_t d_;
  std::vector<Element> terms_;
  std::vector<T> coefficients_;
  std::vector<T> term_values_;
  IncidenceMatrix factor_;
};

/// Builds Y = S^{∨d} and solves the unit upper triangular system ζ(Y, Y) c = f(Y)
/// by back-substitution. Columns follow the linear extension of Y.
template <Scalar T>
PolyadicDecomposition<T> build_cp(const OrderedSubset& S, const Valuation& f, std::size_t d);

/// Coefficients from the Möbius sum c_k = Σ_{y_k ⪯ y_s} μ(y_k, y_s) f(y_s),
/// with μ computed on its own. Y must be linearly extended.
template <Scalar T>
std::vector<T> moebius_coefficients(const OrderedSubset& Y, const Valuation& f);

/// Column permutation of build_cp(S, f, d) in which the terms of the prefixes
/// {x_1}, {x_1, x_2}, ... appear in order of first occurrence, so that every
/// prefix factor is a leading submatrix of the next one.
std::vector<std::size_t> nested_column_order(const OrderedSubset& S, std::size_t d);

}  // namespace jointensor
