#include <gtest/gtest.h>

#include <random>

#include "jointensor/error.hpp"
#include "jointensor/kernels.hpp"
#include "test_support.hpp"

using namespace jointensor;
using jt_test::divisor_set;

TEST(Kernels, JoinTensorSerialMatchesParallel) {
  const auto S = divisor_set({1, 2, 3, 4, 5, 6, 7});
  for (std::size_t d = 1; d <= 5; ++d) {
    auto a = kernels::join_tensor_entries<mpq_class>(S, Valuation::identity(), d, Exec::serial);
    auto b = kernels::join_tensor_entries<mpq_class>(S, Valuation::identity(), d, Exec::parallel);
    EXPECT_EQ(a, b) << "d=" << d;
  }
  const auto six = jt_test::six_semilattice();
  const auto T = range_subset(six, 6);
  EXPECT_EQ(kernels::join_tensor_entries<double>(T, Valuation::reciprocal(), 4, Exec::serial),
            kernels::join_tensor_entries<double>(T, Valuation::reciprocal(), 4, Exec::parallel));
}

TEST(Kernels, ContractionSerialMatchesParallel) {
  const auto S = divisor_set({1, 2, 3, 4, 5});
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  for (std::size_t d = 2; d <= 5; ++d) {
    auto data = kernels::join_tensor_entries<mpq_class>(S, Valuation::identity(), d, Exec::serial);
    std::vector<mpq_class> x;
    for (int i = 0; i < 5; ++i) {
      mpq_class q(num(rng), den(rng));
      q.canonicalize();
      x.push_back(q);
    }
    EXPECT_EQ(kernels::contract_all_but_first<mpq_class>(data, 5, d, x, Exec::serial),
              kernels::contract_all_but_first<mpq_class>(data, 5, d, x, Exec::parallel));
  }
}

TEST(Kernels, FractionFreeRankSerialMatchesParallel) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> v(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 3 + trial % 7, cols = 2 + trial % 5, rank = 1 + trial % 4;
    // product of random rows x rank and rank x cols factors
    std::vector<mpz_class> L(rows * rank), R(rank * cols), M(rows * cols);
    for (auto& z : L) z = v(rng);
    for (auto& z : R) z = v(rng);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t k = 0; k < rank; ++k) M[i * cols + j] += L[i * rank + k] * R[k * cols + j];
    EXPECT_EQ(kernels::fraction_free_rank(M, rows, cols, Exec::serial),
              kernels::fraction_free_rank(M, rows, cols, Exec::parallel));
  }
}

TEST(Kernels, FractionFreeRankKnown) {
  std::vector<mpz_class> a{1, 2, 2, 2};
  EXPECT_EQ(kernels::fraction_free_rank(a, 2, 2, Exec::serial), 2u);
  std::vector<mpz_class> ones(16, 1);
  EXPECT_EQ(kernels::fraction_free_rank(ones, 4, 4, Exec::parallel), 1u);
  std::vector<mpz_class> zero(6, 0);
  EXPECT_EQ(kernels::fraction_free_rank(zero, 2, 3, Exec::parallel), 0u);
}

TEST(Kernels, MiddleCoreCountSerialMatchesParallel) {
  const auto S = divisor_set({1, 2, 3, 4, 5, 6, 7, 8});
  for (std::size_t d = 2; d <= 9; ++d) {
    const std::size_t h = d / 2, hp = d - h - 1;
    const JoinClosure c(S, h + 1);
    EXPECT_EQ(kernels::middle_core_nnz<mpq_class>(c, Valuation::identity(), h, hp, Exec::serial),
              kernels::middle_core_nnz<mpq_class>(c, Valuation::identity(), h, hp, Exec::parallel));
  }
}

TEST(Kernels, CheckedPower) {
  EXPECT_EQ(checked_power(3, 4, 100), 81u);
  EXPECT_THROW(checked_power(3, 5, 100), Error);
  EXPECT_THROW(checked_power(20, 40, UINT64_MAX), Error);
}
