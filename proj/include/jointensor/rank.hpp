#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "jointensor/dense.hpp"
#include "jointensor/kernels.hpp"
#include "jointensor/scalar.hpp"

namespace jointensor {

/// Row-major dense matrix.
template <Scalar T>
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// A_k: rows indexed by (i_1..i_k), columns by (i_{k+1}..i_d), both row-major.
/// Error(bad_split) unless 1 <= k <= d-1; Error(too_large) above `guard` entries.
template <Scalar T>
Matrix<T> unfolding(const DenseTensor<T>& A, std::size_t k, std::uint64_t guard = kDefaultDenseGuard);

/// Rank over the rationals, fraction-free. Duplicate rows and columns are
/// dropped first (this does not change the rank).
std::size_t exact_rank(const Matrix<mpq_class>& M, Exec exec = Exec::parallel);
std::size_t exact_rank(const Matrix<double>& M, Exec exec = Exec::parallel) = delete;

/// Singular values above `tolerance` count. The default policy uses
/// max(rows, cols) · eps · σ_max; an absolute threshold may be given instead.
struct TolerancePolicy {
  enum class Kind { default_relative, absolute } kind = Kind::default_relative;
  double value = 0.0;

  static TolerancePolicy absolute_threshold(double t) { return {Kind::absolute, t}; }
};

struct NumericRank {
  std::size_t rank = 0;
  double tolerance = 0.0;
  double sigma_max = 0.0;
};

/// Error(bad_value) on non-finite input.
NumericRank numeric_rank(const Matrix<double>& M, TolerancePolicy policy = {});

struct AssumptionCheck {
  bool holds = false;
  bool approximate = false;  // decided with a float tolerance
  std::size_t terms = 0;
  std::size_t zero_terms = 0;
};

/// Whether every polyadic coefficient c_k is nonzero. In float mode |c_k| must
/// exceed `abs_tol`.
AssumptionCheck check_coefficient_assumption(const OrderedSubset& S, const Valuation& f, std::size_t d,
                                             Mode mode = Mode::exact, double abs_tol = 1e-12);

struct RankBoundReport {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t half_closure = 0;  // #S^{∨⌊d/2⌋}
  std::size_t full_closure = 0;  // #S^{∨d}
  long long lower_raw = 0;       // 2·#S^{∨⌊d/2⌋} - #S^{∨d}, may be <= 0
  std::size_t lower = 0;         // clamped at 1
  std::size_t upper = 0;
  AssumptionCheck assumption;
  /// n <= ⌊d/2⌋ with the assumption true: TT-rank, CP rank and symmetric rank all equal upper.
  bool equality_case = false;
  /// rank(A_k) for k = 1..d-1 when verified on the dense tensor.
  std::vector<std::size_t> exact_rank_per_k;
  std::optional<std::size_t> tt_rank;  // max_k rank(A_k)
};

RankBoundReport rank_bounds(const OrderedSubset& S, const Valuation& f, std::size_t d, Mode mode = Mode::exact);

/// Fills exact_rank_per_k and tt_rank from the dense tensor.
void attach_exact_ranks(RankBoundReport& report, const DenseTensor<mpq_class>& A,
                        std::uint64_t guard = kDefaultDenseGuard, Exec exec = Exec::parallel);

/// TT-rank of the LCM tensor on {1..n}: n for d = 3, otherwise the number of
/// distinct products α_1⋯α_{⌊d/2⌋} of pairwise coprime α_i in 1..n.
/// Error(bad_order) for d < 3.
std::size_t lcm_tt_rank_reference(std::size_t n, std::size_t d);

}  // namespace jointensor
