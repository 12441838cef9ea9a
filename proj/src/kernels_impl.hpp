#pragma once

// Internal: the two implementations behind each dispatching kernel.

#include "jointensor/kernels.hpp"

namespace jointensor::kernels {

namespace serial {
template <Scalar T>
std::vector<T> join_tensor_entries(const OrderedSubset& S, const Valuation& f, std::size_t d);
template <Scalar T>
std::vector<T> contract_all_but_first(std::span<const T> data, std::size_t n, std::size_t d, std::span<const T> x);
std::size_t fraction_free_rank(std::vector<mpz_class> m, std::size_t rows, std::size_t cols);
template <Scalar T>
std::uint64_t middle_core_nnz(const JoinClosure& closure, const Valuation& f, std::size_t left, std::size_t right);
}  // namespace serial

namespace omp {
template <Scalar T>
std::vector<T> join_tensor_entries(const OrderedSubset& S, const Valuation& f, std::size_t d);
template <Scalar T>
std::vector<T> contract_all_but_first(std::span<const T> data, std::size_t n, std::size_t d, std::span<const T> x);
std::size_t fraction_free_rank(std::vector<mpz_class> m, std::size_t rows, std::size_t cols);
template <Scalar T>
std::uint64_t middle_core_nnz(const JoinClosure& closure, const Valuation& f, std::size_t left, std::size_t right);
}  // namespace omp

}  // namespace jointensor::kernels
