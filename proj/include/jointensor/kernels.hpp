#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jointensor/lattice.hpp"
#include "jointensor/scalar.hpp"
#include "jointensor/valuation.hpp"

namespace jointensor {

/// Which implementation of a data-parallel kernel to run. The serial variants
/// are straightforward reference implementations kept for cross-checking;
/// the parallel ones are OpenMP-blocked and produce the same layout.
enum class Exec { serial, parallel };

/// n^d, throwing Error(too_large) if it exceeds `limit`.
std::uint64_t checked_power(std::size_t n, std::size_t d, std::uint64_t limit);

namespace kernels {

/// Row-major (i_1 slowest) entries f(x_{i_1} ∨ ... ∨ x_{i_d}) by brute force.
template <Scalar T>
std::vector<T> join_tensor_entries(const OrderedSubset& S, const Valuation& f, std::size_t d, Exec exec);

/// A x^{d-1} for a dense row-major n^d array.
template <Scalar T>
std::vector<T> contract_all_but_first(std::span<const T> data, std::size_t n, std::size_t d, std::span<const T> x,
                                      Exec exec);

/// Rank of an integer matrix by fraction-free (Bareiss) elimination. Consumes m.
std::size_t fraction_free_rank(std::vector<mpz_class> m, std::size_t rows, std::size_t cols, Exec exec);

/// Nonzeros of the middle TT-core, i.e. #{(α, i, β) : f(α ∨ x_i ∨ β) != 0} with
/// α ∈ S^{∨left} and β ∈ S^{∨right} (right = 0 means a single empty β).
/// `closure` must have order >= max(left + 1, right).
template <Scalar T>
std::uint64_t middle_core_nnz(const JoinClosure& closure, const Valuation& f, std::size_t left, std::size_t right,
                              Exec exec);

}  // namespace kernels
}  // namespace jointensor
