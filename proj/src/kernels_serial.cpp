// Serial reference kernels. Deliberately direct: no caching, no blocking.

#include <algorithm>

#include "kernels_impl.hpp"

namespace jointensor::kernels::serial {

template <Scalar T>
std::vector<T> join_tensor_entries(const OrderedSubset& S, const Valuation& f, std::size_t d) {
  const std::size_t n = S.size();
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= n;
  std::vector<T> out(total);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = d; k-- > 0;) {
      idx[k] = rem % n;
      rem /= n;
    }
    Element acc = S[idx[0]];
    for (std::size_t k = 1; k < d; ++k) acc = S.lattice().join(acc, S[idx[k]]);
    out[flat] = f.value<T>(S.lattice(), acc);
  }
  return out;
}

template <Scalar T>
std::vector<T> contract_all_but_first(std::span<const T> data, std::size_t n, std::size_t d, std::span<const T> x) {
  std::vector<T> out(n, T(0));
  std::vector<std::size_t> idx(d, 0);
  T term;
  for (std::size_t flat = 0; flat < data.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = d; k-- > 0;) {
      idx[k] = rem % n;
      rem /= n;
    }
    term = data[flat];
    for (std::size_t k = 1; k < d; ++k) term *= x[idx[k]];
    out[idx[0]] += term;
  }
  return out;
}

std::size_t fraction_free_rank(std::vector<mpz_class> m, std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  mpz_class prev = 1;
  mpz_class tmp;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && sgn(m[pivot * cols + c]) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t j = 0; j < cols; ++j) swap(m[pivot * cols + j], m[rank * cols + j]);
    const mpz_class& p = m[rank * cols + c];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      const mpz_class lead = m[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_mul(tmp.get_mpz_t(), m[i * cols + j].get_mpz_t(), p.get_mpz_t());
        mpz_submul(tmp.get_mpz_t(), lead.get_mpz_t(), m[rank * cols + j].get_mpz_t());
        mpz_divexact(m[i * cols + j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      m[i * cols + c] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

template <Scalar T>
std::uint64_t middle_core_nnz(const JoinClosure& closure, const Valuation& f, std::size_t left, std::size_t right) {
  const OrderedSubset& S = closure.base();
  const Lattice& lat = S.lattice();
  const OrderedSubset& alphas = closure.level(left);
  std::uint64_t count = 0;
  for (std::size_t a = 0; a < alphas.size(); ++a)
    for (std::size_t i = 0; i < S.size(); ++i) {
      const Element gamma = lat.join(alphas[a], S[i]);
      if (right == 0) {
        if (!is_zero(f.value<T>(lat, gamma))) ++count;
        continue;
      }
      const OrderedSubset& betas = closure.level(right);
      for (std::size_t b = 0; b < betas.size(); ++b)
        if (!is_zero(f.value<T>(lat, lat.join(gamma, betas[b])))) ++count;
    }
  return count;
}

template std::vector<mpq_class> join_tensor_entries<mpq_class>(const OrderedSubset&, const Valuation&, std::size_t);
template std::vector<double> join_tensor_entries<double>(const OrderedSubset&, const Valuation&, std::size_t);
template std::vector<mpq_class> contract_all_but_first<mpq_class>(std::span<const mpq_class>, std::size_t,
                                                                  std::size_t, std::span<const mpq_class>);
template std::vector<double> contract_all_but_first<double>(std::span<const double>, std::size_t, std::size_t,
                                                            std::span<const double>);
template std::uint64_t middle_core_nnz<mpq_class>(const JoinClosure&, const Valuation&, std::size_t, std::size_t);
template std::uint64_t middle_core_nnz<double>(const JoinClosure&, const Valuation&, std::size_t, std::size_t);

}  // namespace jointensor::kernels::serial
