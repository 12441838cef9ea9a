#include <gtest/gtest.h>

#include <random>

#include "jointensor/contract.hpp"
#include "jointensor/error.hpp"
#include "test_support.hpp"

using namespace jointensor;
using jt_test::divisor_set;

namespace {

std::vector<mpq_class> q(std::initializer_list<long> v) {
  std::vector<mpq_class> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(Apply, LcmTwoByFour) {
  const auto S = divisor_set({1, 2});
  for (Backend b : {Backend::dense, Backend::cp, Backend::tt}) {
    const auto C = make_contractor<mpq_class>(b, S, Valuation::identity(), 4);
    EXPECT_EQ(C->apply(q({1, 1})), q({15, 16})) << backend_name(b);
    EXPECT_EQ(C->apply(q({1, 0})), q({1, 2})) << backend_name(b);
    EXPECT_EQ(C->quadratic_form(q({1, 1})), 31) << backend_name(b);
    EXPECT_EQ(C->quadratic_form(q({1, 0})), 1) << backend_name(b);
  }
}

TEST(Apply, ConstantTensor) {
  const auto S = divisor_set({2, 3, 5});
  for (Backend b : {Backend::dense, Backend::cp, Backend::tt}) {
    const auto C = make_contractor<mpq_class>(b, S, Valuation::constant(Number::of(1)), 4);
    EXPECT_EQ(C->apply(q({1, 2, 4})), q({343, 343, 343})) << backend_name(b);
  }
}

TEST(Apply, BackendsAgreeOnRandomRationals) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  const auto six = jt_test::six_semilattice();
  for (const auto& S : {divisor_set({1, 2, 3, 4, 6}), range_subset(six, 6)})
    for (std::size_t d = 2; d <= 5; ++d) {
      const auto D = make_contractor<mpq_class>(Backend::dense, S, Valuation::power(Number::of(2)), d);
      const auto P = make_contractor<mpq_class>(Backend::cp, S, Valuation::power(Number::of(2)), d);
      const auto T = make_contractor<mpq_class>(Backend::tt, S, Valuation::power(Number::of(2)), d);
      std::vector<mpq_class> x;
      for (std::size_t i = 0; i < S.size(); ++i) {
        mpq_class v(num(rng), den(rng));
        v.canonicalize();
        x.push_back(v);
      }
      const auto y = D->apply(x);
      EXPECT_EQ(P->apply(x), y);
      EXPECT_EQ(T->apply(x), y);
      mpq_class dot = 0;
      for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
      EXPECT_EQ(D->quadratic_form(x), dot);
      EXPECT_EQ(T->quadratic_form(x), dot);
    }
}

TEST(Apply, FloatBackendsAgree) {
  const auto S = divisor_set({1, 2, 3, 4, 5, 6});
  std::vector<double> x{0.3, 1.1, 0.25, 0.7, 0.9, 0.05};
  for (std::size_t d = 2; d <= 6; ++d) {
    const auto y = make_contractor<double>(Backend::dense, S, Valuation::reciprocal(), d)->apply(x);
    for (Backend b : {Backend::cp, Backend::tt}) {
      const auto z = make_contractor<double>(b, S, Valuation::reciprocal(), d)->apply(x);
      for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(z[i], y[i], 1e-12 * std::abs(y[i]));
    }
  }
}

TEST(Apply, BadShape) {
  const auto C = make_contractor<mpq_class>(Backend::tt, divisor_set({1, 2}), Valuation::identity(), 4);
  try {
    C->apply(q({1, 2, 3}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::bad_shape);
  }
}

TEST(Positivity, AllBackends) {
  const auto S = divisor_set({1, 2, 3});
  for (Backend b : {Backend::dense, Backend::cp, Backend::tt}) {
    EXPECT_TRUE(make_contractor<double>(b, S, Valuation::identity(), 4)->all_entries_positive());
    EXPECT_FALSE(make_contractor<double>(b, S, Valuation::constant(Number::of(0)), 4)->all_entries_positive());
    EXPECT_FALSE(make_contractor<double>(b, S, Valuation::constant(Number::parse("-1")), 4)->all_entries_positive());
    EXPECT_EQ(make_contractor<double>(b, S, Valuation::identity(), 4)->max_abs_entry(), 6.0);
  }
}
