#include "jointensor/dense.hpp"

#include <algorithm>
#include <random>

#include "jointensor/error.hpp"

namespace jointensor {

bool next_index(std::span<std::size_t> idx, std::size_t n) {
  for (std::size_t k = idx.size(); k-- > 0;) {
    if (++idx[k] < n) return true;
    idx[k] = 0;
  }
  return false;
}

mpz_class symmetric_part_count(std::size_t n, std::size_t d) {
  if (n == 0) return d == 0 ? 1 : 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), d + n - 1, d);
  return out;
}

template <Scalar T>
DenseTensor<T>::DenseTensor(std::size_t n, std::size_t d, std::vector<T> data) : n_(n), d_(d), data_(std::move(data)) {
  std::size_t expect = 1;
  for (std::size_t k = 0; k < d_; ++k) expect *= n_;
  if (data_.size() != expect) throw Error(Errc::bad_shape, "dense data does not have n^d entries");
}

template <Scalar T>
std::size_t DenseTensor<T>::flat_index(std::span<const std::size_t> idx) const {
  if (idx.size() != d_)
    throw Error(Errc::bad_index, "index has " + std::to_string(idx.size()) + " entries, expected " + std::to_string(d_));
  std::size_t flat = 0;
  for (std::size_t k = 0; k < d_; ++k) {
    if (idx[k] >= n_) throw Error(Errc::bad_index, "index entry " + std::to_string(idx[k]) + " out of range");
    flat = flat * n_ + idx[k];
  }
  return flat;
}

template <Scalar T>
DenseTensor<T> materialize_dense(const OrderedSubset& S, const Valuation& f, std::size_t d, std::uint64_t guard,
                                 Exec exec) {
  checked_power(S.size(), d, guard);
  return DenseTensor<T>(S.size(), d, kernels::join_tensor_entries<T>(S, f, d, exec));
}

// Sorted multi-indices are ranked in colex order of the strictly increasing
// sequence c_k = i_k + k, i.e. rank = Σ_k C(c_k, k + 1).
template <Scalar T>
SymmetricPart<T>::SymmetricPart(std::size_t n, std::size_t d, std::vector<T> values)
    : n_(n), d_(d), values_(std::move(values)) {
  const mpz_class count = symmetric_part_count(n, d);
  if (!count.fits_ulong_p() || values_.size() != count.get_ui())
    throw Error(Errc::bad_shape, "symmetric part needs C(d+n-1, d) values");
  binom_.assign(n + d + 1, std::vector<std::uint64_t>(d + 2, 0));
  for (std::size_t a = 0; a <= n + d; ++a) {
    binom_[a][0] = 1;
    for (std::size_t b = 1; b <= std::min(a, d + 1); ++b)
      binom_[a][b] = binom_[a - 1][b - 1] + (b <= a - 1 ? binom_[a - 1][b] : 0);
  }
}

template <Scalar T>
std::size_t SymmetricPart<T>::rank_sorted(std::span<const std::size_t> sorted) const {
  if (sorted.size() != d_) throw Error(Errc::bad_index, "index has the wrong length");
  std::size_t r = 0;
  for (std::size_t k = 0; k < d_; ++k) {
    if (sorted[k] >= n_) throw Error(Errc::bad_index, "index entry " + std::to_string(sorted[k]) + " out of range");
    if (k > 0 && sorted[k] < sorted[k - 1]) throw Error(Errc::bad_index, "index is not sorted");
    r += binom_[sorted[k] + k][k + 1];
  }
  return r;
}

template <Scalar T>
const T& SymmetricPart<T>::recover_entry(std::span<const std::size_t> idx) const {
  std::vector<std::size_t> s(idx.begin(), idx.end());
  std::sort(s.begin(), s.end());
  return values_[rank_sorted(s)];
}

template <Scalar T>
SymmetricPart<T> symmetric_part(const DenseTensor<T>& A, std::uint64_t seed) {
  const std::size_t n = A.n(), d = A.d();
  const mpz_class count = symmetric_part_count(n, d);
  std::vector<T> values(count.get_ui());
  std::vector<std::uint8_t> filled(values.size(), 0);
  SymmetricPart<T> shape(n, d, std::vector<T>(values.size()));

  std::vector<std::size_t> idx(d, 0), sorted(d);
  auto check = [&](std::size_t flat) {
    std::size_t rem = flat;
    for (std::size_t k = d; k-- > 0;) {
      idx[k] = rem % n;
      rem /= n;
    }
    sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    const T& here = A[flat];
    const T& there = A.at(sorted);
    if (here != there) throw Error(Errc::not_symmetric, "tensor is not symmetric at flat index " + std::to_string(flat));
  };

  // every sorted index is visited once to fill the table
  if (A.size() > 0) {
    std::fill(idx.begin(), idx.end(), 0);
    do {
      if (std::is_sorted(idx.begin(), idx.end())) {
        std::size_t r = shape.rank_sorted(idx);
        values[r] = A.at(idx);
        filled[r] = 1;
      }
    } while (next_index(idx, n));
  }
  if (std::find(filled.begin(), filled.end(), 0) != filled.end())
    throw Error(Errc::bad_shape, "symmetric part ranking left a gap");

  if (A.size() <= 1'000'000) {
    for (std::size_t flat = 0; flat < A.size(); ++flat) check(flat);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, A.size() - 1);
    for (int s = 0; s < 100'000; ++s) check(pick(rng));
  }
  return SymmetricPart<T>(n, d, std::move(values));
}

template class DenseTensor<mpq_class>;
template class DenseTensor<double>;
template class SymmetricPart<mpq_class>;
template class SymmetricPart<double>;
template DenseTensor<mpq_class> materialize_dense<mpq_class>(const OrderedSubset&, const Valuation&, std::size_t,
                                                             std::uint64_t, Exec);
template DenseTensor<double> materialize_dense<double>(const OrderedSubset&, const Valuation&, std::size_t,
                                                       std::uint64_t, Exec);
template SymmetricPart<mpq_class> symmetric_part<mpq_class>(const DenseTensor<mpq_class>&, std::uint64_t);
template SymmetricPart<double> symmetric_part<double>(const DenseTensor<double>&, std::uint64_t);

}  // namespace jointensor
