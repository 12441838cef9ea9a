#include "jointensor/storage.hpp"

#include "jointensor/error.hpp"

namespace jointensor {

template <Scalar T>
StorageReport nnz_report(const PolyadicDecomposition<T>& cp) {
  StorageReport rep{"cp", cp.n(), cp.d(), mpz_class(cp.factor().nnz() + cp.r()), cp.r(), {}};
  return rep;
}

template <Scalar T>
StorageReport nnz_report(const TensorTrain<T>& tt) {
  std::size_t total = 0;
  for (std::size_t k = 1; k <= tt.stored_count(); ++k) total += tt.stored_core(k).nnz();
  return StorageReport{"tt", tt.n(), tt.d(), mpz_class(total), std::nullopt,
                       std::vector<std::size_t>(tt.ranks().begin(), tt.ranks().end())};
}

template <Scalar T>
StorageReport nnz_report(const SymmetricPart<T>& sym) {
  return symmetric_storage(sym.n(), sym.d());
}

StorageReport symmetric_storage(std::size_t n, std::size_t d) {
  return StorageReport{"sym", n, d, symmetric_part_count(n, d), std::nullopt, {}};
}

template <Scalar T>
StorageReport count_tt_storage(const OrderedSubset& S, const Valuation& f, std::size_t d, Exec exec) {
  if (d < 2) throw Error(Errc::bad_order, "tensor train needs order d >= 2");
  const std::size_t n = S.size(), h = d / 2, hp = d - h - 1;
  const JoinClosure closure(S, h + 1);
  // each selector core has exactly one nonzero per (row, mode) pair
  mpz_class total = 0;
  for (std::size_t k = 1; k <= h; ++k) total += mpz_class(static_cast<unsigned long>((k == 1 ? 1 : closure.size(k - 1)) * n));
  total += mpz_class(static_cast<unsigned long>(kernels::middle_core_nnz<T>(closure, f, h, hp, exec)));
  std::vector<std::size_t> ranks;
  for (std::size_t k = 1; k < d; ++k) ranks.push_back(closure.size(std::min(k, d - k)));
  return StorageReport{"tt", n, d, total, std::nullopt, std::move(ranks)};
}

template StorageReport nnz_report<mpq_class>(const PolyadicDecomposition<mpq_class>&);
template StorageReport nnz_report<double>(const PolyadicDecomposition<double>&);
template StorageReport nnz_report<mpq_class>(const TensorTrain<mpq_class>&);
template StorageReport nnz_report<double>(const TensorTrain<double>&);
template StorageReport nnz_report<mpq_class>(const SymmetricPart<mpq_class>&);
template StorageReport nnz_report<double>(const SymmetricPart<double>&);
template StorageReport count_tt_storage<mpq_class>(const OrderedSubset&, const Valuation&, std::size_t, Exec);
template StorageReport count_tt_storage<double>(const OrderedSubset&, const Valuation&, std::size_t, Exec);

}  // namespace jointensor
