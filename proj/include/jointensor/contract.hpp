#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "jointensor/dense.hpp"
#include "jointensor/polyadic.hpp"
#include "jointensor/tensor_train.hpp"

namespace jointensor {

enum class Backend { dense, cp, tt };

const char* backend_name(Backend b) noexcept;
Backend parse_backend(std::string_view text);

/// A x^{d-1} and A x^d for one symmetric tensor, whatever its representation.
template <Scalar T>
class Contractor {
 public:
  virtual ~Contractor() = default;

  virtual Backend backend() const noexcept = 0;
  virtual std::size_t n() const noexcept = 0;
  virtual std::size_t d() const noexcept = 0;

  /// A x^{d-1}; Error(bad_shape) unless x has length n.
  virtual std::vector<T> apply(std::span<const T> x) const = 0;
  /// A x^d = <x, A x^{d-1}>.
  T quadratic_form(std::span<const T> x) const;

  virtual bool all_entries_positive() const = 0;
  virtual double max_abs_entry() const = 0;

 protected:
  void check_length(std::span<const T> x) const;
};

template <Scalar T>
class DenseContractor final : public Contractor<T> {
 public:
  explicit DenseContractor(DenseTensor<T> A, Exec exec = Exec::parallel) : A_(std::move(A)), exec_(exec) {}
  Backend backend() const noexcept override { return Backend::dense; }
  std::size_t n() const noexcept override { return A_.n(); }
  std::size_t d() const noexcept override { return A_.d(); }
  std::vector<T> apply(std::span<const T> x) const override;
  bool all_entries_positive() const override;
  double max_abs_entry() const override;

 private:
  DenseTensor<T> A_;
  Exec exec_;
};

/// Σ_k c_k E_{·,k} (E^T x)_k^{d-1}.
template <Scalar T>
class CpContractor final : public Contractor<T> {
 public:
  explicit CpContractor(PolyadicDecomposition<T> cp) : cp_(std::move(cp)) {}
  Backend backend() const noexcept override { return Backend::cp; }
  std::size_t n() const noexcept override { return cp_.n(); }
  std::size_t d() const noexcept override { return cp_.d(); }
  std::vector<T> apply(std::span<const T> x) const override;
  /// Every entry is f(y) for some y ∈ S^{∨d} and every such value occurs.
  bool all_entries_positive() const override;
  double max_abs_entry() const override;

 private:
  PolyadicDecomposition<T> cp_;
};

/// G_1 (G_2 ×_2 x) ... (G_d ×_2 x), right to left, mirrored cores as transposes.
template <Scalar T>
class TtContractor final : public Contractor<T> {
 public:
  explicit TtContractor(TensorTrain<T> tt) : tt_(std::move(tt)) {}
  Backend backend() const noexcept override { return Backend::tt; }
  std::size_t n() const noexcept override { return tt_.n(); }
  std::size_t d() const noexcept override { return tt_.d(); }
  std::vector<T> apply(std::span<const T> x) const override;
  /// The middle core holds every entry value; positivity needs it dense and positive.
  bool all_entries_positive() const override;
  double max_abs_entry() const override;

 private:
  TensorTrain<T> tt_;
};

template <Scalar T>
std::unique_ptr<Contractor<T>> make_contractor(Backend backend, const OrderedSubset& S, const Valuation& f,
                                               std::size_t d, std::uint64_t guard = kDefaultDenseGuard,
                                               Exec exec = Exec::parallel);

}  // namespace jointensor
