#include <gtest/gtest.h>

#include "jointensor/dense.hpp"
#include "jointensor/error.hpp"
#include "jointensor/storage.hpp"
#include "jointensor/tensor_train.hpp"
#include "test_support.hpp"

using namespace jointensor;
using jt_test::chain_set;
using jt_test::divisor_set;

namespace {

// dense slice G(i) of a core as a rows x cols table
std::vector<std::vector<mpq_class>> slice(const SparseCore<mpq_class>& g, std::size_t i) {
  std::vector<std::vector<mpq_class>> out(g.rows(), std::vector<mpq_class>(g.cols(), 0));
  for (std::size_t t = 0; t < g.nnz(); ++t)
    if (g.entries()[t].mode == i) out[g.entries()[t].row][g.entries()[t].col] = g.value(t);
  return out;
}

}  // namespace

TEST(BuildTt, MiddleCoreSlices) {
  const auto tt = build_tt<mpq_class>(divisor_set({1, 2}), Valuation::identity(), 4);
  ASSERT_EQ(tt.stored_count(), 3u);
  using M = std::vector<std::vector<mpq_class>>;
  EXPECT_EQ(slice(tt.stored_core(3), 0), (M{{1, 2}, {2, 2}}));
  EXPECT_EQ(slice(tt.stored_core(3), 1), (M{{2, 2}, {2, 2}}));
  EXPECT_EQ(std::vector<std::size_t>(tt.ranks().begin(), tt.ranks().end()), (std::vector<std::size_t>{2, 2, 2}));
}

TEST(BuildTt, Entries) {
  const auto tt = build_tt<mpq_class>(divisor_set({1, 2}), Valuation::identity(), 4);
  const std::size_t a[] = {0, 0, 0, 0}, b[] = {1, 1, 1, 1}, c[] = {0, 1, 0, 1}, e[] = {1, 0, 0, 0};
  EXPECT_EQ(tt.evaluate(a), 1);
  EXPECT_EQ(tt.evaluate(b), 2);
  EXPECT_EQ(tt.evaluate(c), 2);
  EXPECT_EQ(tt.evaluate(e), 2);
  const std::size_t bad[] = {0, 0, 2, 0};
  EXPECT_THROW(tt.evaluate(bad), Error);
}

TEST(BuildTt, StorageCount) {
  const auto tt = build_tt<mpq_class>(divisor_set({1, 2}), Valuation::identity(), 4);
  EXPECT_EQ(tt.stored_core(1).nnz(), 2u);
  EXPECT_EQ(tt.stored_core(2).nnz(), 4u);
  EXPECT_EQ(tt.stored_core(3).nnz(), 8u);
  EXPECT_EQ(nnz_report(tt).count, 14);
}

TEST(BuildTt, CountingKernelAgrees) {
  for (const auto& S : {divisor_set({1, 2, 3, 4, 5, 6}), chain_set({1, 2, 3, 4}), range_subset(jt_test::six_semilattice(), 6)})
    for (std::size_t d = 2; d <= 9; ++d) {
      const auto tt = build_tt<mpq_class>(S, Valuation::identity(), d);
      EXPECT_EQ(nnz_report(tt).count, count_tt_storage<mpq_class>(S, Valuation::identity(), d).count) << d;
      EXPECT_EQ(nnz_report(tt).ranks, count_tt_storage<mpq_class>(S, Valuation::identity(), d).ranks);
    }
}

TEST(BuildTt, StructureInvariants) {
  const auto S = divisor_set({2, 3, 4, 5, 6});
  for (std::size_t d = 2; d <= 8; ++d) {
    const auto tt = build_tt<mpq_class>(S, Valuation::identity(), d);
    const auto r = tt.ranks();
    ASSERT_EQ(r.size(), d - 1);
    const JoinClosure c(S, d);
    for (std::size_t k = 1; k < d; ++k) {
      EXPECT_EQ(r[k - 1], r[d - k - 1]);
      EXPECT_EQ(r[k - 1], c.size(std::min(k, d - k)));
    }
    for (std::size_t k = 1; k <= d / 2; ++k) {
      const auto& g = tt.stored_core(k);
      EXPECT_TRUE(g.is_boolean());
      // exactly one nonzero per (row, mode)
      EXPECT_EQ(g.nnz(), g.rows() * g.modes());
      for (std::size_t t = 1; t < g.nnz(); ++t) {
        const auto& p = g.entries()[t - 1];
        const auto& q = g.entries()[t];
        EXPECT_FALSE(p.row == q.row && p.mode == q.mode);
      }
    }
  }
}

TEST(BuildTt, MatchesDenseOracle) {
  const auto six = jt_test::six_semilattice();
  for (const auto& S : {divisor_set({1, 2, 3, 4}), chain_set({1, 2, 3}), range_subset(six, 5)})
    for (std::size_t d = 2; d <= 5; ++d) {
      const auto tt = build_tt<mpq_class>(S, Valuation::reciprocal(), d);
      const auto A = materialize_dense<mpq_class>(S, Valuation::reciprocal(), d);
      std::vector<std::size_t> idx(d, 0);
      do {
        ASSERT_EQ(tt.evaluate(idx), A.at(idx));
      } while (next_index(idx, S.size()));
    }
}

TEST(SparseCore, RejectsBadShape) {
  EXPECT_THROW(SparseCore<mpq_class>(1, 2, 2, {{0, 2, 0}}), Error);
  EXPECT_THROW(SparseCore<mpq_class>(1, 2, 2, {{0, 1, 0}, {0, 0, 0}}), Error);
  EXPECT_THROW(SparseCore<mpq_class>(1, 2, 2, {{0, 0, 0}}, {mpq_class(1), mpq_class(2)}), Error);
}
