#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jointensor/dense.hpp"
#include "jointensor/kernels.hpp"
#include "jointensor/polyadic.hpp"
#include "jointensor/tensor_train.hpp"

namespace jointensor {

/// Number of stored values of one representation.
struct StorageReport {
  std::string representation;  // "cp", "tt" or "sym"
  std::size_t n = 0;
  std::size_t d = 0;
  mpz_class count;
  std::optional<std::size_t> terms;  // r for cp
  std::vector<std::size_t> ranks;    // r_1..r_{d-1} for tt
};

/// nnz(E) + r.
template <Scalar T>
StorageReport nnz_report(const PolyadicDecomposition<T>& cp);
/// Σ nnz over the ⌊d/2⌋+1 stored cores.
template <Scalar T>
StorageReport nnz_report(const TensorTrain<T>& tt);
/// C(d+n-1, d).
template <Scalar T>
StorageReport nnz_report(const SymmetricPart<T>& sym);

StorageReport symmetric_storage(std::size_t n, std::size_t d);

/// Same count as nnz_report(build_tt(S, f, d)) without building the middle core.
template <Scalar T>
StorageReport count_tt_storage(const OrderedSubset& S, const Valuation& f, std::size_t d, Exec exec = Exec::parallel);

}  // namespace jointensor
