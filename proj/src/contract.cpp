#include "jointensor/contract.hpp"

#include <algorithm>
#include <cmath>

#include "jointensor/error.hpp"

namespace jointensor {

const char* backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::dense: return "dense";
    case Backend::cp: return "cp";
    case Backend::tt: return "tt";
  }
  return "?";
}

Backend parse_backend(std::string_view text) {
  if (text == "dense") return Backend::dense;
  if (text == "cp") return Backend::cp;
  if (text == "tt") return Backend::tt;
  throw Error(Errc::bad_value, "unknown backend '" + std::string(text) + "' (expected dense, cp or tt)");
}

namespace {

template <Scalar T>
T power(const T& base, std::size_t e) {
  T out(1);
  for (std::size_t k = 0; k < e; ++k) out *= base;
  return out;
}

template <Scalar T>
double magnitude(const T& v) {
  return std::abs(to_double(v));
}

template <Scalar T>
bool positive(const T& v) {
  if constexpr (std::same_as<T, mpq_class>)
    return sgn(v) > 0;
  else
    return v > 0.0;
}

}  // namespace

template <Scalar T>
void Contractor<T>::check_length(std::span<const T> x) const {
  if (x.size() != n())
    throw Error(Errc::bad_shape, "vector length " + std::to_string(x.size()) + " does not match n = " + std::to_string(n()));
}

template <Scalar T>
T Contractor<T>::quadratic_form(std::span<const T> x) const {
  const std::vector<T> y = apply(x);
  T sum(0);
  for (std::size_t i = 0; i < y.size(); ++i) sum += x[i] * y[i];
  return sum;
}

template <Scalar T>
std::vector<T> DenseContractor<T>::apply(std::span<const T> x) const {
  this->check_length(x);
  return kernels::contract_all_but_first<T>(A_.data(), A_.n(), A_.d(), x, exec_);
}

template <Scalar T>
bool DenseContractor<T>::all_entries_positive() const {
  return std::all_of(A_.data().begin(), A_.data().end(), positive<T>);
}

template <Scalar T>
double DenseContractor<T>::max_abs_entry() const {
  double m = 0;
  for (const T& v : A_.data()) m = std::max(m, magnitude(v));
  return m;
}

template <Scalar T>
std::vector<T> CpContractor<T>::apply(std::span<const T> x) const {
  this->check_length(x);
  const IncidenceMatrix& E = cp_.factor();
  std::vector<T> out(n(), T(0));
  T s;
  for (std::size_t k = 0; k < cp_.r(); ++k) {
    s = 0;
    for (std::size_t i = 0; i < n(); ++i)
      if (E(i, k)) s += x[i];
    const T w = cp_.coefficients()[k] * power(s, d() - 1);
    for (std::size_t i = 0; i < n(); ++i)
      if (E(i, k)) out[i] += w;
  }
  return out;
}

template <Scalar T>
bool CpContractor<T>::all_entries_positive() const {
  return std::all_of(cp_.term_values().begin(), cp_.term_values().end(), positive<T>);
}

template <Scalar T>
double CpContractor<T>::max_abs_entry() const {
  double m = 0;
  for (const T& v : cp_.term_values()) m = std::max(m, magnitude(v));
  return m;
}

template <Scalar T>
std::vector<T> TtContractor<T>::apply(std::span<const T> x) const {
  this->check_length(x);
  std::vector<T> u{T(1)};
  for (std::size_t k = d(); k >= 2; --k) u = tt_.core_contract(k, x, u);
  // G_1 has a single row; mode i of it gives component i
  std::vector<T> out(n(), T(0));
  const SparseCore<T>& g1 = tt_.stored_core(1);
  for (std::size_t t = 0; t < g1.nnz(); ++t) {
    const CoreEntry& e = g1.entries()[t];
    out[e.mode] += g1.value(t) * u[e.col];
  }
  return out;
}

template <Scalar T>
bool TtContractor<T>::all_entries_positive() const {
  const SparseCore<T>& mid = tt_.stored_core(tt_.stored_count());
  if (mid.nnz() != mid.rows() * mid.modes() * mid.cols()) return false;
  for (std::size_t t = 0; t < mid.nnz(); ++t)
    if (!positive(mid.value(t))) return false;
  return true;
}

template <Scalar T>
double TtContractor<T>::max_abs_entry() const {
  const SparseCore<T>& mid = tt_.stored_core(tt_.stored_count());
  double m = 0;
  for (std::size_t t = 0; t < mid.nnz(); ++t) m = std::max(m, magnitude(mid.value(t)));
  return m;
}

template <Scalar T>
std::unique_ptr<Contractor<T>> make_contractor(Backend backend, const OrderedSubset& S, const Valuation& f,
                                               std::size_t d, std::uint64_t guard, Exec exec) {
  switch (backend) {
    case Backend::dense: return std::make_unique<DenseContractor<T>>(materialize_dense<T>(S, f, d, guard, exec), exec);
    case Backend::cp: return std::make_unique<CpContractor<T>>(build_cp<T>(S, f, d));
    case Backend::tt: return std::make_unique<TtContractor<T>>(build_tt<T>(S, f, d));
  }
  throw Error(Errc::bad_value, "unknown backend");
}

template class Contractor<mpq_class>;
template class Contractor<double>;
template class DenseContractor<mpq_class>;
template class DenseContractor<double>;
template class CpContractor<mpq_class>;
template class CpContractor<double>;
template class TtContractor<mpq_class>;
template class TtContractor<double>;
template std::unique_ptr<Contractor<mpq_class>> make_contractor<mpq_class>(Backend, const OrderedSubset&,
                                                                           const Valuation&, std::size_t,
                                                                           std::uint64_t, Exec);
template std::unique_ptr<Contractor<double>> make_contractor<double>(Backend, const OrderedSubset&, const Valuation&,
                                                                     std::size_t, std::uint64_t, Exec);

}  // namespace jointensor
