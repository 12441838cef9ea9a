#include "jointensor/kernels.hpp"

#include <limits>

#include "jointensor/error.hpp"
#include "kernels_impl.hpp"

namespace jointensor {

std::uint64_t checked_power(std::size_t n, std::size_t d, std::uint64_t limit) {
  std::uint64_t p = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (n != 0 && p > limit / n)
      throw Error(Errc::too_large, std::to_string(n) + "^" + std::to_string(d) + " exceeds " + std::to_string(limit));
    p *= n;
  }
  if (p > limit)
    throw Error(Errc::too_large, std::to_string(n) + "^" + std::to_string(d) + " exceeds " + std::to_string(limit));
  return p;
}

namespace kernels {

template <Scalar T>
std::vector<T> join_tensor_entries(const OrderedSubset& S, const Valuation& f, std::size_t d, Exec exec) {
  if (d == 0) throw Error(Errc::bad_order, "order must be at least 1");
  checked_power(S.size(), d, std::numeric_limits<std::uint32_t>::max());
  return exec == Exec::serial ? serial::join_tensor_entries<T>(S, f, d) : omp::join_tensor_entries<T>(S, f, d);
}

template <Scalar T>
std::vector<T> contract_all_but_first(std::span<const T> data, std::size_t n, std::size_t d, std::span<const T> x,
                                      Exec exec) {
  if (d == 0) throw Error(Errc::bad_order, "order must be at least 1");
  if (x.size() != n) throw Error(Errc::bad_shape, "vector length " + std::to_string(x.size()) + " != " + std::to_string(n));
  if (data.size() != checked_power(n, d, std::numeric_limits<std::uint64_t>::max()))
    throw Error(Errc::bad_shape, "dense data does not have n^d entries");
  return exec == Exec::serial ? serial::contract_all_but_first<T>(data, n, d, x)
                              : omp::contract_all_but_first<T>(data, n, d, x);
}

std::size_t fraction_free_rank(std::vector<mpz_class> m, std::size_t rows, std::size_t cols, Exec exec) {
  if (m.size() != rows * cols) throw Error(Errc::bad_shape, "matrix data does not have rows*cols entries");
  return exec == Exec::serial ? serial::fraction_free_rank(std::move(m), rows, cols)
                              : omp::fraction_free_rank(std::move(m), rows, cols);
}

template <Scalar T>
std::uint64_t middle_core_nnz(const JoinClosure& closure, const Valuation& f, std::size_t left, std::size_t right,
                              Exec exec) {
  if (left == 0) throw Error(Errc::bad_order, "middle core needs at least one left factor");
  if (closure.order() < std::max(left + 1, right))
    throw Error(Errc::bad_order, "closure order " + std::to_string(closure.order()) + " is too small");
  return exec == Exec::serial ? serial::middle_core_nnz<T>(closure, f, left, right)
                              : omp::middle_core_nnz<T>(closure, f, left, right);
}

template std::vector<mpq_class> join_tensor_entries<mpq_class>(const OrderedSubset&, const Valuation&, std::size_t,
                                                               Exec);
template std::vector<double> join_tensor_entries<double>(const OrderedSubset&, const Valuation&, std::size_t, Exec);
template std::vector<mpq_class> contract_all_but_first<mpq_class>(std::span<const mpq_class>, std::size_t,
                                                                  std::size_t, std::span<const mpq_class>, Exec);
template std::vector<double> contract_all_but_first<double>(std::span<const double>, std::size_t, std::size_t,
                                                            std::span<const double>, Exec);
template std::uint64_t middle_core_nnz<mpq_class>(const JoinClosure&, const Valuation&, std::size_t, std::size_t,
                                                  Exec);
template std::uint64_t middle_core_nnz<double>(const JoinClosure&, const Valuation&, std::size_t, std::size_t, Exec);

}  // namespace kernels
}  // namespace jointensor
