#include "jointensor/rank.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "jointensor/error.hpp"
#include "jointensor/polyadic.hpp"

namespace jointensor {

template <Scalar T>
Matrix<T> unfolding(const DenseTensor<T>& A, std::size_t k, std::uint64_t guard) {
  if (k < 1 || k + 1 > A.d())
    throw Error(Errc::bad_split, "split " + std::to_string(k) + " outside 1.." + std::to_string(A.d() == 0 ? 0 : A.d() - 1));
  if (A.size() > guard) throw Error(Errc::too_large, "unfolding exceeds " + std::to_string(guard) + " entries");
  // row-major (i_1 slowest) storage is already the k-th unfolding
  const std::size_t rows = checked_power(A.n(), k, guard);
  return Matrix<T>{rows, A.size() / rows, std::vector<T>(A.data().begin(), A.data().end())};
}

std::size_t exact_rank(const Matrix<mpq_class>& M, Exec exec) {
  if (M.data.size() != M.rows * M.cols) throw Error(Errc::bad_shape, "matrix data does not have rows*cols entries");
  auto row_less = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < M.cols; ++j)
      if (int c = cmp(M(a, j), M(b, j)); c != 0) return c < 0;
    return false;
  };
  auto row_eq = [&](std::size_t a, std::size_t b) { return !row_less(a, b) && !row_less(b, a); };
  std::vector<std::size_t> rows(M.rows);
  std::iota(rows.begin(), rows.end(), 0);
  std::sort(rows.begin(), rows.end(), row_less);
  rows.erase(std::unique(rows.begin(), rows.end(), row_eq), rows.end());

  auto col_less = [&](std::size_t a, std::size_t b) {
    for (std::size_t i : rows)
      if (int c = cmp(M(i, a), M(i, b)); c != 0) return c < 0;
    return false;
  };
  auto col_eq = [&](std::size_t a, std::size_t b) { return !col_less(a, b) && !col_less(b, a); };
  std::vector<std::size_t> cols(M.cols);
  std::iota(cols.begin(), cols.end(), 0);
  std::sort(cols.begin(), cols.end(), col_less);
  cols.erase(std::unique(cols.begin(), cols.end(), col_eq), cols.end());

  // clear denominators row by row
  std::vector<mpz_class> z(rows.size() * cols.size());
  mpz_class scale;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    scale = 1;
    for (std::size_t b = 0; b < cols.size(); ++b) scale = lcm(scale, M(rows[a], cols[b]).get_den());
    for (std::size_t b = 0; b < cols.size(); ++b) {
      const mpq_class& q = M(rows[a], cols[b]);
      z[a * cols.size() + b] = q.get_num() * (scale / q.get_den());
    }
  }
  return kernels::fraction_free_rank(std::move(z), rows.size(), cols.size(), exec);
}

NumericRank numeric_rank(const Matrix<double>& M, TolerancePolicy policy) {
  if (M.data.size() != M.rows * M.cols) throw Error(Errc::bad_shape, "matrix data does not have rows*cols entries");
  for (double v : M.data)
    if (!std::isfinite(v)) throw Error(Errc::bad_value, "matrix has a non-finite entry");
  NumericRank out;
  if (M.rows == 0 || M.cols == 0) return out;
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(M.data.data(),
                                                                                            static_cast<Eigen::Index>(M.rows),
                                                                                            static_cast<Eigen::Index>(M.cols));
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  out.sigma_max = s.size() > 0 ? s(0) : 0.0;
  out.tolerance = policy.kind == TolerancePolicy::Kind::absolute
                      ? policy.value
                      : static_cast<double>(std::max(M.rows, M.cols)) * std::numeric_limits<double>::epsilon() * out.sigma_max;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > out.tolerance) ++out.rank;
  return out;
}

AssumptionCheck check_coefficient_assumption(const OrderedSubset& S, const Valuation& f, std::size_t d, Mode mode,
                                             double abs_tol) {
  AssumptionCheck out;
  if (mode == Mode::exact) {
    const auto cp = build_cp<mpq_class>(S, f, d);
    out.terms = cp.r();
    for (const auto& c : cp.coefficients())
      if (sgn(c) == 0) ++out.zero_terms;
  } else {
    const auto cp = build_cp<double>(S, f, d);
    out.approximate = true;
    out.terms = cp.r();
    for (double c : cp.coefficients())
      if (!(std::abs(c) > abs_tol)) ++out.zero_terms;
  }
  out.holds = out.zero_terms == 0;
  return out;
}

RankBoundReport rank_bounds(const OrderedSubset& S, const Valuation& f, std::size_t d, Mode mode) {
  if (d < 2) throw Error(Errc::bad_order, "rank bounds need order d >= 2");
  RankBoundReport rep;
  rep.n = S.size();
  rep.d = d;
  rep.assumption = check_coefficient_assumption(S, f, d, mode);
  const JoinClosure closure(S, d);
  rep.half_closure = closure.size(d / 2);
  rep.full_closure = closure.size(d);
  rep.lower_raw = 2 * static_cast<long long>(rep.half_closure) - static_cast<long long>(rep.full_closure);
  rep.lower = static_cast<std::size_t>(std::max(1LL, rep.lower_raw));
  rep.upper = rep.half_closure;
  rep.equality_case = rep.n <= d / 2 && rep.assumption.holds;
  return rep;
}

void attach_exact_ranks(RankBoundReport& report, const DenseTensor<mpq_class>& A, std::uint64_t guard, Exec exec) {
  if (A.n() != report.n || A.d() != report.d) throw Error(Errc::bad_shape, "dense tensor does not match the report");
  report.exact_rank_per_k.clear();
  std::size_t best = 0;
  for (std::size_t k = 1; k < A.d(); ++k) {
    // A_k and A_{d-k} have equal rank for a symmetric tensor, but both are computed
    const std::size_t r = exact_rank(unfolding(A, k, guard), exec);
    report.exact_rank_per_k.push_back(r);
    best = std::max(best, r);
  }
  report.tt_rank = best;
}

std::size_t lcm_tt_rank_reference(std::size_t n, std::size_t d) {
  if (d < 3) throw Error(Errc::bad_order, "the LCM rank formula needs d >= 3");
  if (d == 3) return n;
  const std::size_t h = d / 2;
  std::set<mpz_class> products;
  std::vector<unsigned long> chosen;
  // sets of pairwise coprime values > 1 of size <= h; 1 fills the remaining slots
  auto rec = [&](auto&& self, unsigned long start, const mpz_class& prod) -> void {
    products.insert(prod);
    if (chosen.size() == h) return;
    for (unsigned long a = start; a <= n; ++a) {
      bool coprime = std::all_of(chosen.begin(), chosen.end(), [&](unsigned long b) { return std::gcd(a, b) == 1; });
      if (!coprime) continue;
      chosen.push_back(a);
      self(self, a + 1, prod * a);
      chosen.pop_back();
    }
  };
  if (n >= 1) rec(rec, 2, mpz_class(1));
  return products.size();
}

template Matrix<mpq_class> unfolding<mpq_class>(const DenseTensor<mpq_class>&, std::size_t, std::uint64_t);
template Matrix<double> unfolding<double>(const DenseTensor<double>&, std::size_t, std::uint64_t);

}  // namespace jointensor
