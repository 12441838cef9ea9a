#include "jointensor/tensor_train.hpp"

#include <algorithm>

#include "jointensor/error.hpp"

namespace jointensor {

template <Scalar T>
SparseCore<T>::SparseCore(std::size_t rows, std::size_t modes, std::size_t cols, std::vector<CoreEntry> entries,
                          std::vector<T> values)
    : rows_(rows), modes_(modes), cols_(cols), entries_(std::move(entries)), values_(std::move(values)) {
  if (!values_.empty() && values_.size() != entries_.size())
    throw Error(Errc::bad_shape, "core has " + std::to_string(entries_.size()) + " coordinates but " +
                                     std::to_string(values_.size()) + " values");
  for (std::size_t t = 0; t < entries_.size(); ++t) {
    const CoreEntry& e = entries_[t];
    if (e.row >= rows_ || e.mode >= modes_ || e.col >= cols_)
      throw Error(Errc::bad_shape, "core coordinate (" + std::to_string(e.row) + "," + std::to_string(e.mode) + "," +
                                       std::to_string(e.col) + ") outside the core shape");
    if (t > 0 && !(entries_[t - 1] < e)) throw Error(Errc::bad_shape, "core coordinates are not strictly sorted");
  }
}

template <Scalar T>
std::vector<T> SparseCore<T>::contract(std::span<const T> weights, std::span<const T> u, bool transposed) const {
  if (weights.size() != modes_ || u.size() != (transposed ? rows_ : cols_))
    throw Error(Errc::bad_shape, "core contraction with mismatched lengths");
  std::vector<T> out(transposed ? cols_ : rows_, T(0));
  for (std::size_t t = 0; t < entries_.size(); ++t) {
    const CoreEntry& e = entries_[t];
    if (transposed)
      out[e.col] += value(t) * weights[e.mode] * u[e.row];
    else
      out[e.row] += value(t) * weights[e.mode] * u[e.col];
  }
  return out;
}

template <Scalar T>
std::vector<T> SparseCore<T>::slice_times(std::size_t i, std::span<const T> u, bool transposed) const {
  if (i >= modes_ || u.size() != (transposed ? rows_ : cols_))
    throw Error(Errc::bad_shape, "core slice with mismatched lengths");
  std::vector<T> out(transposed ? cols_ : rows_, T(0));
  for (std::size_t t = 0; t < entries_.size(); ++t) {
    const CoreEntry& e = entries_[t];
    if (e.mode != i) continue;
    if (transposed)
      out[e.col] += value(t) * u[e.row];
    else
      out[e.row] += value(t) * u[e.col];
  }
  return out;
}

template <Scalar T>
TensorTrain<T>::TensorTrain(std::size_t n, std::size_t d, std::vector<SparseCore<T>> stored)
    : n_(n), d_(d), cores_(std::move(stored)) {
  if (d_ < 2) throw Error(Errc::bad_order, "tensor train needs order d >= 2");
  const std::size_t h = d_ / 2;
  if (cores_.size() != h + 1)
    throw Error(Errc::bad_shape, "expected " + std::to_string(h + 1) + " stored cores, got " +
                                     std::to_string(cores_.size()));
  // shapes of the full chain, with mirrored cores swapping rows and columns
  std::vector<std::size_t> left(d_), right(d_);
  for (std::size_t k = 1; k <= d_; ++k) {
    const bool virt = k > h + 1;
    const SparseCore<T>& c = cores_[(virt ? d_ - k + 1 : k) - 1];
    if (c.modes() != n_) throw Error(Errc::bad_shape, "core " + std::to_string(k) + " has the wrong mode size");
    left[k - 1] = virt ? c.cols() : c.rows();
    right[k - 1] = virt ? c.rows() : c.cols();
  }
  if (left.front() != 1 || right.back() != 1) throw Error(Errc::bad_shape, "outer TT ranks must be 1");
  for (std::size_t k = 1; k < d_; ++k) {
    if (right[k - 1] != left[k])
      throw Error(Errc::bad_shape, "cores " + std::to_string(k) + " and " + std::to_string(k + 1) + " do not chain");
    ranks_.push_back(right[k - 1]);
  }
}

template <Scalar T>
const SparseCore<T>& TensorTrain<T>::stored_core(std::size_t k) const {
  if (k == 0 || k > cores_.size()) throw Error(Errc::bad_index, "stored core " + std::to_string(k) + " does not exist");
  return cores_[k - 1];
}

template <Scalar T>
std::vector<T> TensorTrain<T>::core_times(std::size_t k, std::size_t i, std::span<const T> u) const {
  const bool virt = k > cores_.size();
  return stored_core(virt ? d_ - k + 1 : k).slice_times(i, u, virt);
}

template <Scalar T>
std::vector<T> TensorTrain<T>::core_contract(std::size_t k, std::span<const T> w, std::span<const T> u) const {
  const bool virt = k > cores_.size();
  return stored_core(virt ? d_ - k + 1 : k).contract(w, u, virt);
}

template <Scalar T>
T TensorTrain<T>::evaluate(std::span<const std::size_t> idx) const {
  if (idx.size() != d_)
    throw Error(Errc::bad_index, "index has " + std::to_string(idx.size()) + " entries, expected " + std::to_string(d_));
  for (std::size_t i : idx)
    if (i >= n_) throw Error(Errc::bad_index, "index entry " + std::to_string(i) + " out of range");
  std::vector<T> u{T(1)};
  for (std::size_t k = d_; k >= 1; --k) u = core_times(k, idx[k - 1], u);
  return u[0];
}

template <Scalar T>
TensorTrain<T> build_tt(const OrderedSubset& S, const Valuation& f, std::size_t d) {
  if (d < 2) throw Error(Errc::bad_order, "tensor train needs order d >= 2");
  const std::size_t n = S.size();
  const std::size_t h = d / 2, hp = d - h - 1;
  const JoinClosure closure(S, h);
  const Lattice& lat = S.lattice();
  std::vector<SparseCore<T>> cores;

  // selectors: G_k(i)_{α, β} = 1 iff β = α ∨ x_i
  for (std::size_t k = 1; k <= h; ++k) {
    const std::size_t rows = k == 1 ? 1 : closure.size(k - 1);
    std::vector<CoreEntry> e;
    e.reserve(rows * n);
    for (std::size_t a = 0; a < rows; ++a)
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t col = k == 1 ? static_cast<std::uint32_t>(i) : closure.step(k)[a * n + i];
        e.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(i), col});
      }
    std::sort(e.begin(), e.end());
    cores.emplace_back(rows, n, closure.size(k), std::move(e));
  }

  // middle: f(α ∨ x_i ∨ β), α ∈ S^{∨h}, β ∈ S^{∨hp} (a single empty β when hp = 0)
  const OrderedSubset& alphas = closure.level(h);
  const std::size_t cols = hp == 0 ? 1 : closure.size(hp);
  std::vector<CoreEntry> e;
  std::vector<T> v;
  ElementMap<T> cache;
  auto value_at = [&](const Element& y) -> const T& {
    auto it = cache.find(y);
    if (it == cache.end()) it = cache.emplace(y, f.value<T>(lat, y)).first;
    return it->second;
  };
  for (std::size_t a = 0; a < alphas.size(); ++a)
    for (std::size_t i = 0; i < n; ++i) {
      const Element gamma = lat.join(alphas[a], S[i]);
      for (std::size_t b = 0; b < cols; ++b) {
        const T& y = hp == 0 ? value_at(gamma) : value_at(lat.join(gamma, closure.level(hp)[b]));
        if (is_zero(y)) continue;
        e.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(b)});
        v.push_back(y);
      }
    }
  cores.emplace_back(alphas.size(), n, cols, std::move(e), std::move(v));
  return TensorTrain<T>(n, d, std::move(cores));
}

template class SparseCore<mpq_class>;
template class SparseCore<double>;
template class TensorTrain<mpq_class>;
template class TensorTrain<double>;
template TensorTrain<mpq_class> build_tt<mpq_class>(const OrderedSubset&, const Valuation&, std::size_t);
template TensorTrain<double> build_tt<double>(const OrderedSubset&, const Valuation&, std::size_t);

}  // namespace jointensor
