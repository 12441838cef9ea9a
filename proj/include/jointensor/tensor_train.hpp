#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jointensor/kernels.hpp"
#include "jointensor/lattice.hpp"
#include "jointensor/scalar.hpp"
#include "jointensor/valuation.hpp"

namespace jointensor {

/// Coordinate of a nonzero of a third-order core, (row j, mode index i, column l).
struct CoreEntry {
  std::uint32_t row;
  std::uint32_t mode;
  std::uint32_t col;

  friend auto operator<=>(const CoreEntry&, const CoreEntry&) = default;
};

/// A TT-core G with G(i)_{j,l} stored as sorted coordinate triplets.
/// An empty value list marks a boolean core (every stored entry is 1).
template <Scalar T>
class SparseCore {
 public:
  SparseCore(std::size_t rows, std::size_t modes, std::size_t cols, std::vector<CoreEntry> entries,
             std::vector<T> values = {});

  std::size_t rows() const noexcept { return rows_; }
  std::size_t modes() const noexcept { return modes_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool is_boolean() const noexcept { return values_.empty(); }
  std::span<const CoreEntry> entries() const noexcept { return entries_; }
  std::span<const T> values() const noexcept { return values_; }
  T value(std::size_t t) const { return values_.empty() ? T(1) : values_[t]; }

  /// (Σ_i w_i G(i)) u, or its transpose applied to u when `transposed`.
  std::vector<T> contract(std::span<const T> weights, std::span<const T> u, bool transposed) const;
  /// G(i) u, or G(i)^T u.
  std::vector<T> slice_times(std::size_t i, std::span<const T> u, bool transposed) const;

 private:
  std::size_t rows_, modes_, cols_;
  std::vector<CoreEntry> entries_;
  std::vector<T> values_;
};

/// Entry A(i_1, ..., i_d) = G_1(i_1) ... G_d(i_d). Cores 1..⌊d/2⌋ are boolean
/// selectors, core ⌊d/2⌋+1 carries the values, and core k > ⌊d/2⌋+1 is the
/// transpose of stored core d-k+1 (never materialized).
template <Scalar T>
class TensorTrain {
 public:
  TensorTrain(std::size_t n, std::size_t d, std::vector<SparseCore<T>> stored);

  std::size_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }
  /// r_1, ..., r_{d-1}.
  std::span<const std::size_t> ranks() const noexcept { return ranks_; }
  std::size_t stored_count() const noexcept { return cores_.size(); }
  /// 1-based, k in 1..⌊d/2⌋+1.
  const SparseCore<T>& stored_core(std::size_t k) const;

  /// G_k(i) u for any k in 2..d, using the mirrored core when k is virtual.
  std::vector<T> core_times(std::size_t k, std::size_t i, std::span<const T> u) const;
  /// (G_k ×_2 w) u for any k in 2..d.
  std::vector<T> core_contract(std::size_t k, std::span<const T> w, std::span<const T> u) const;

  /// 0-based index; Error(bad_index) when out of range.
  T evaluate(std::span<const std::size_t> idx) const;

 private:
  std::size_t n_, d_;
  std::vector<std::size_t> ranks_;
  std::vector<SparseCore<T>> cores_;
};

/// Explicit TT form with ranks r_k = #S^{∨min(k, d-k)}; d >= 2.
template <Scalar T>
TensorTrain<T> build_tt(const OrderedSubset& S, const Valuation& f, std::size_t d);

}  // namespace jointensor
