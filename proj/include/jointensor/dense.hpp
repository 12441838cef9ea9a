#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jointensor/kernels.hpp"
#include "jointensor/lattice.hpp"
#include "jointensor/scalar.hpp"
#include "jointensor/valuation.hpp"

namespace jointensor {

inline constexpr std::uint64_t kDefaultDenseGuard = 100'000'000;

/// Full n^d array, row-major with i_1 slowest. Indices are 0-based.
template <Scalar T>
class DenseTensor {
 public:
  DenseTensor(std::size_t n, std::size_t d, std::vector<T> data);

  std::size_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<const T> data() const noexcept { return data_; }

  std::size_t flat_index(std::span<const std::size_t> idx) const;
  const T& at(std::span<const std::size_t> idx) const { return data_[flat_index(idx)]; }
  const T& operator[](std::size_t flat) const { return data_[flat]; }

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<T> data_;
};

/// Brute-force join tensor [S_d]_f; the oracle for every other representation.
template <Scalar T>
DenseTensor<T> materialize_dense(const OrderedSubset& S, const Valuation& f, std::size_t d,
                                 std::uint64_t guard = kDefaultDenseGuard, Exec exec = Exec::parallel);

/// One value per nondecreasing multi-index i_1 <= ... <= i_d.
template <Scalar T>
class SymmetricPart {
 public:
  SymmetricPart(std::size_t n, std::size_t d, std::vector<T> values);

  std::size_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const T> values() const noexcept { return values_; }

  /// Sorts the index, then looks it up.
  const T& recover_entry(std::span<const std::size_t> idx) const;
  /// Position of a nondecreasing multi-index in the stored order.
  std::size_t rank_sorted(std::span<const std::size_t> sorted) const;

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<T> values_;
  std::vector<std::vector<std::uint64_t>> binom_;
};

/// Throws Error(not_symmetric) unless A is invariant under index permutations
/// (checked exhaustively up to 10^6 entries, by seeded sampling above).
template <Scalar T>
SymmetricPart<T> symmetric_part(const DenseTensor<T>& A, std::uint64_t seed = 0x5eed);

/// C(d + n - 1, d), the number of stored symmetric-part entries.
mpz_class symmetric_part_count(std::size_t n, std::size_t d);

/// Odometer over [0, n)^d in row-major order; returns false after the last index.
bool next_index(std::span<std::size_t> idx, std::size_t n);

}  // namespace jointensor
