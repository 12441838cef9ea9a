// OpenMP kernels. Each output element is owned by exactly one iteration, so
// the layout (and in exact mode every value) matches the serial reference.

#include <omp.h>

#include <algorithm>

#include "kernels_impl.hpp"

namespace jointensor::kernels::omp {

namespace {

std::size_t ipow(std::size_t n, std::size_t d) {
  std::size_t p = 1;
  for (std::size_t k = 0; k < d; ++k) p *= n;
  return p;
}

}  // namespace

template <Scalar T>
std::vector<T> join_tensor_entries(const OrderedSubset& S, const Valuation& f, std::size_t d) {
  const std::size_t n = S.size();
  const Lattice& lat = S.lattice();
  const std::size_t total = ipow(n, d);
  std::vector<T> out(total);
  if (total == 0) return out;

  // Blocks fix the leading `lead` indices; inside a block an odometer keeps
  // prefix joins so that each step costs one join per changed position.
  std::size_t lead = 0;
  while (lead < d && ipow(n, lead) < 256) ++lead;
  const std::size_t blocks = ipow(n, lead);
  const std::size_t block_size = total / blocks;
  const auto block_count = static_cast<std::ptrdiff_t>(blocks);

#pragma omp parallel
  {
    ElementMap<T> cache;
    std::vector<std::size_t> idx(d);
    std::vector<Element> prefix(d);
#pragma omp for schedule(dynamic)
    for (std::ptrdiff_t blk = 0; blk < block_count; ++blk) {
      std::size_t begin = static_cast<std::size_t>(blk) * block_size;
      std::size_t rem = begin;
      for (std::size_t k = d; k-- > 0;) {
        idx[k] = rem % n;
        rem /= n;
      }
      std::size_t dirty = 0;
      for (std::size_t flat = begin; flat < begin + block_size; ++flat) {
        for (std::size_t k = dirty; k < d; ++k)
          prefix[k] = k == 0 ? S[idx[0]] : lat.join(prefix[k - 1], S[idx[k]]);
        auto it = cache.find(prefix[d - 1]);
        if (it == cache.end()) it = cache.emplace(prefix[d - 1], f.value<T>(lat, prefix[d - 1])).first;
        out[flat] = it->second;
        // advance odometer, remembering the leftmost changed position
        std::size_t k = d;
        while (k-- > 0) {
          if (++idx[k] < n) break;
          idx[k] = 0;
        }
        dirty = k > d ? 0 : k;
      }
    }
  }
  return out;
}

template <Scalar T>
std::vector<T> contract_all_but_first(std::span<const T> data, std::size_t n, std::size_t d, std::span<const T> x) {
  std::vector<T> out(n);
  const std::size_t slab = ipow(n, d - 1);
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel
  {
    std::vector<T> work, next;
    T acc;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
      work.assign(data.begin() + static_cast<std::ptrdiff_t>(i * slab),
                  data.begin() + static_cast<std::ptrdiff_t>((i + 1) * slab));
      // contract the trailing mode until one value is left
      for (std::size_t len = slab; len > 1; len /= n) {
        next.assign(len / n, T(0));
        for (std::size_t r = 0; r < len / n; ++r) {
          acc = 0;
          for (std::size_t l = 0; l < n; ++l) acc += work[r * n + l] * x[l];
          next[r] = acc;
        }
        work.swap(next);
      }
      out[static_cast<std::size_t>(i)] = work[0];
    }
  }
  return out;
}

std::size_t fraction_free_rank(std::vector<mpz_class> m, std::size_t rows, std::size_t cols) {
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && sgn(m[pivot * cols + c]) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t j = 0; j < cols; ++j) swap(m[pivot * cols + j], m[rank * cols + j]);
    const mpz_class p = m[rank * cols + c];
    const auto first = static_cast<std::ptrdiff_t>(rank + 1);
    const auto last = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel
    {
      mpz_class tmp;
#pragma omp for schedule(static)
      for (std::ptrdiff_t si = first; si < last; ++si) {
        const auto i = static_cast<std::size_t>(si);
        if (sgn(m[i * cols + c]) == 0) {
          // lead is zero: the update reduces to scaling by p / prev
          for (std::size_t j = c + 1; j < cols; ++j) {
            mpz_mul(tmp.get_mpz_t(), m[i * cols + j].get_mpz_t(), p.get_mpz_t());
            mpz_divexact(m[i * cols + j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
          }
          continue;
        }
        const mpz_class lead = m[i * cols + c];
        for (std::size_t j = c + 1; j < cols; ++j) {
          mpz_mul(tmp.get_mpz_t(), m[i * cols + j].get_mpz_t(), p.get_mpz_t());
          mpz_submul(tmp.get_mpz_t(), lead.get_mpz_t(), m[rank * cols + j].get_mpz_t());
          mpz_divexact(m[i * cols + j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
        }
        m[i * cols + c] = 0;
      }
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
  const std::size_t n = S.size();
  // α ∨ x_i lands in level left+1 through the step table; count the nonzeros
  // of each distinct row γ once and weight by how often it is hit.
  const OrderedSubset& gammas = closure.level(left + 1);
  const std::span<const std::uint32_t> step = closure.step(left + 1);
  std::vector<std::uint64_t> row_nnz(gammas.size(), 0);
  const auto rows = static_cast<std::ptrdiff_t>(gammas.size());
#pragma omp parallel
  {
    ElementMap<bool> nonzero;
#pragma omp for schedule(dynamic)
    for (std::ptrdiff_t g = 0; g < rows; ++g) {
      const Element& gamma = gammas[static_cast<std::size_t>(g)];
      auto test = [&](const Element& y) {
        auto it = nonzero.find(y);
        if (it == nonzero.end()) it = nonzero.emplace(y, !is_zero(f.value<T>(lat, y))).first;
        return it->second;
      };
      std::uint64_t c = 0;
      if (right == 0) {
        c = test(gamma) ? 1 : 0;
      } else {
        const OrderedSubset& betas = closure.level(right);
        for (std::size_t b = 0; b < betas.size(); ++b)
          if (test(lat.join(gamma, betas[b]))) ++c;
      }
      row_nnz[static_cast<std::size_t>(g)] = c;
    }
  }
  std::uint64_t total = 0;
  const std::size_t alphas = closure.size(left);
  for (std::size_t t = 0; t < alphas * n; ++t) total += row_nnz[step[t]];
  return total;
}

template std::vector<mpq_class> join_tensor_entries<mpq_class>(const OrderedSubset&, const Valuation&, std::size_t);
template std::vector<double> join_tensor_entries<double>(const OrderedSubset&, const Valuation&, std::size_t);
template std::vector<mpq_class> contract_all_but_first<mpq_class>(std::span<const mpq_class>, std::size_t,
                                                                  std::size_t, std::span<const mpq_class>);
template std::vector<double> contract_all_but_first<double>(std::span<const double>, std::size_t, std::size_t,
                                                            std::span<const double>);
template std::uint64_t middle_core_nnz<mpq_class>(const JoinClosure&, const Valuation&, std::size_t, std::size_t);
template std::uint64_t middle_core_nnz<double>(const JoinClosure&, const Valuation&, std::size_t, std::size_t);

}  // namespace jointensor::kernels::omp
