#include "jointensor/polyadic.hpp"

#include "jointensor/error.hpp"

namespace jointensor {

template <Scalar T>
PolyadicDecomposition<T>::PolyadicDecomposition(OrderedSubset base, std::size_t d, std::vector<Element> terms,
                                                std::vector<T> coefficients, std::vector<T> term_values,
                                                IncidenceMatrix factor)
    : base_(std::move(base)),
      d_(d),
      terms_(std::move(terms)),
      coefficients_(std::move(coefficients)),
      term_values_(std::move(term_values)),
      factor_(std::move(factor)) {
  if (coefficients_.size() != terms_.size() || term_values_.size() != terms_.size() ||
      factor_.rows() != base_.size() || factor_.cols() != terms_.size())
    throw Error(Errc::bad_shape, "polyadic decomposition parts have inconsistent sizes");
}

template <Scalar T>
T PolyadicDecomposition<T>::evaluate(std::span<const std::size_t> idx) const {
  if (idx.size() != d_)
    throw Error(Errc::bad_index, "index has " + std::to_string(idx.size()) + " entries, expected " + std::to_string(d_));
  for (std::size_t i : idx)
    if (i >= n()) throw Error(Errc::bad_index, "index entry " + std::to_string(i) + " out of range");
  T sum(0);
  for (std::size_t k = 0; k < r(); ++k) {
    bool all = true;
    for (std::size_t i : idx)
      if (!factor_(i, k)) {
        all = false;
        break;
      }
    if (all) sum += coefficients_[k];
  }
  return sum;
}

template <Scalar T>
PolyadicDecomposition<T> PolyadicDecomposition<T>::reordered(std::span<const std::size_t> order) const {
  if (order.size() != r()) throw Error(Errc::bad_shape, "column order has wrong length");
  std::vector<std::uint8_t> seen(r(), 0);
  std::vector<Element> terms;
  std::vector<T> c, v;
  for (std::size_t k : order) {
    if (k >= r() || seen[k]) throw Error(Errc::bad_value, "column order is not a permutation");
    seen[k] = 1;
    terms.push_back(terms_[k]);
    c.push_back(coefficients_[k]);
    v.push_back(term_values_[k]);
  }
  return PolyadicDecomposition(base_, d_, std::move(terms), std::move(c), std::move(v), factor_.with_columns(order));
}

template <Scalar T>
PolyadicDecomposition<T> build_cp(const OrderedSubset& S, const Valuation& f, std::size_t d) {
  if (d < 2) throw Error(Errc::bad_order, "polyadic decomposition needs order d >= 2");
  const JoinClosure closure(S, d);
  const OrderedSubset& Y = closure.elements();
  const Lattice& lat = S.lattice();
  const std::size_t r = Y.size();

  std::vector<T> values(r);
  for (std::size_t k = 0; k < r; ++k) values[k] = f.value<T>(lat, Y[k]);

  // c_k = f(y_k) - Σ_{s > k, y_k ⪯ y_s} c_s
  std::vector<T> c(r);
  for (std::size_t k = r; k-- > 0;) {
    T acc = values[k];
    for (std::size_t s = k + 1; s < r; ++s)
      if (lat.leq(Y[k], Y[s])) acc -= c[s];
    c[k] = acc;
  }
  std::vector<Element> terms(Y.elements().begin(), Y.elements().end());
  return PolyadicDecomposition<T>(S, d, std::move(terms), std::move(c), std::move(values), zeta_matrix(S, Y));
}

template <Scalar T>
std::vector<T> moebius_coefficients(const OrderedSubset& Y, const Valuation& f) {
  const MoebiusTable mu(Y);
  std::vector<T> values(Y.size());
  for (std::size_t s = 0; s < Y.size(); ++s) values[s] = f.value<T>(Y.lattice(), Y[s]);
  std::vector<T> c(Y.size(), T(0));
  for (std::size_t k = 0; k < Y.size(); ++k)
    for (const auto& [s, m] : mu.row(k)) {
      if constexpr (std::same_as<T, mpq_class>)
        c[k] += mpq_class(m) * values[s];
      else
        c[k] += m.get_d() * values[s];
    }
  return c;
}

std::vector<std::size_t> nested_column_order(const OrderedSubset& S, std::size_t d) {
  if (d < 2) throw Error(Errc::bad_order, "polyadic decomposition needs order d >= 2");
  const JoinClosure full(S, d);
  const OrderedSubset& Y = full.elements();
  std::vector<std::size_t> order;
  std::vector<std::uint8_t> used(Y.size(), 0);
  for (std::size_t m = 1; m <= S.size(); ++m) {
    std::vector<Element> prefix(S.elements().begin(), S.elements().begin() + static_cast<std::ptrdiff_t>(m));
    const JoinClosure part(OrderedSubset(S.lattice(), std::move(prefix)), d);
    for (const Element& y : part.elements().elements()) {
      std::size_t k = *Y.position(y);
      if (!used[k]) {
        used[k] = 1;
        order.push_back(k);
      }
    }
  }
  return order;
}

template class PolyadicDecomposition<mpq_class>;
template class PolyadicDecomposition<double>;
template PolyadicDecomposition<mpq_class> build_cp<mpq_class>(const OrderedSubset&, const Valuation&, std::size_t);
template PolyadicDecomposition<double> build_cp<double>(const OrderedSubset&, const Valuation&, std::size_t);
template std::vector<mpq_class> moebius_coefficients<mpq_class>(const OrderedSubset&, const Valuation&);
template std::vector<double> moebius_coefficients<double>(const OrderedSubset&, const Valuation&);

}  // namespace jointensor
