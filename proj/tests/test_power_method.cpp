#include <gtest/gtest.h>

#include <cmath>

#include "jointensor/error.hpp"
#include "jointensor/power_method.hpp"
#include "test_support.hpp"

using namespace jointensor;
using jt_test::divisor_set;

namespace {

// root of 2(a+1)^3 = a^3/(1-a^3) on (0,1), mapped through λ = 2(a+1)^3
double lcm_fixed_point() {
  auto g = [](double a) { return 2 * std::pow(a + 1, 3) * (1 - a * a * a) - a * a * a; };
  double lo = 0, hi = 1;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0 ? lo : hi) = mid;
  }
  return 2 * std::pow(lo + 1, 3);
}

void expect_monotone(const EigenEstimate& e) {
  for (std::size_t k = 0; k < e.history.size(); ++k) {
    EXPECT_LE(e.history[k].lower, e.history[k].upper);
    if (k == 0) continue;
    EXPECT_GE(e.history[k].lower, e.history[k - 1].lower) << k;
    EXPECT_LE(e.history[k].upper, e.history[k - 1].upper) << k;
  }
}

}  // namespace

TEST(PowerMethod, LcmTwoByFour) {
  const auto C = make_contractor<double>(Backend::tt, divisor_set({1, 2}), Valuation::identity(), 4);
  const auto e = power_method(*C);
  EXPECT_TRUE(e.converged);
  EXPECT_NEAR(lcm_fixed_point(), 15.510411961465081, 1e-12);
  EXPECT_NEAR(e.lambda, lcm_fixed_point(), 1e-9);
  EXPECT_NEAR(e.lambda, 15.51041196146508, 1e-9);
  expect_monotone(e);
  double norm = 0;
  for (double v : e.x) {
    EXPECT_GE(v, 0);
    norm += v * v;
  }
  EXPECT_NEAR(norm, 1, 1e-14);
}

TEST(PowerMethod, AllOnes) {
  const auto C = make_contractor<double>(Backend::tt, divisor_set({1, 2}), Valuation::constant(Number::of(1)), 4);
  const auto e = power_method(*C);
  EXPECT_NEAR(e.lambda, 8, 1e-12);
  EXPECT_NEAR(e.x[0], e.x[1], 1e-15);
  const auto g = gerschgorin_bound<mpq_class>(divisor_set({1, 2}), Valuation::constant(Number::of(1)), 4);
  EXPECT_EQ(g.real_upper, 8);
  const auto chk = bound_check(e, g);
  EXPECT_TRUE(chk.ok);
  EXPECT_NEAR(chk.ratio, 1, 1e-12);
}

TEST(PowerMethod, FirstTwoBracketsNest) {
  const auto C = make_contractor<double>(Backend::dense, divisor_set({1, 2, 3, 4, 5}), Valuation::identity(), 4);
  PowerConfig cfg;
  cfg.initial = InitialVector::random(42);
  const auto e = power_method(*C, cfg);
  ASSERT_GE(e.history.size(), 2u);
  EXPECT_LE(e.history[0].lower, e.history[1].lower);
  EXPECT_LE(e.history[1].upper, e.history[0].upper);
  expect_monotone(e);
}

TEST(PowerMethod, OrderAndPositivityChecks) {
  const auto odd = make_contractor<double>(Backend::tt, divisor_set({1, 2}), Valuation::identity(), 3);
  try {
    power_method(*odd);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::odd_order);
  }
  PowerConfig cfg;
  cfg.allow_odd_order = true;
  const auto e = power_method(*odd, cfg);
  EXPECT_FALSE(e.warnings.empty());
  const auto zero = make_contractor<double>(Backend::tt, divisor_set({1, 2}), Valuation::constant(Number::of(0)), 4);
  try {
    power_method(*zero);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_positive);
  }
}

TEST(PowerMethod, BackendsAgreePerIteration) {
  const auto S = divisor_set({1, 2, 3, 4});
  PowerConfig cfg;
  cfg.max_iterations = 200;
  const auto a = power_method(*make_contractor<double>(Backend::tt, S, Valuation::identity(), 6), cfg);
  const auto b = power_method(*make_contractor<double>(Backend::dense, S, Valuation::identity(), 6), cfg);
  ASSERT_EQ(a.history.size(), b.history.size());
  for (std::size_t k = 0; k < a.history.size(); ++k) {
    EXPECT_NEAR(a.history[k].lower, b.history[k].lower, 1e-10 * b.history[k].lower);
    EXPECT_NEAR(a.history[k].upper, b.history[k].upper, 1e-10 * b.history[k].upper);
  }
}

TEST(PowerMethod, ScaleEquivariance) {
  const auto S = divisor_set({1, 2, 3});
  const auto base = power_method(*make_contractor<double>(Backend::tt, S, Valuation::identity(), 4));
  // a power-of-two factor scales every operation exactly
  const Valuation f4 = Valuation::identity().scaled(Number::of(4));
  const auto scaled = power_method(*make_contractor<double>(Backend::tt, S, f4, 4));
  ASSERT_EQ(base.history.size(), scaled.history.size());
  for (std::size_t k = 0; k < base.history.size(); ++k) {
    EXPECT_EQ(scaled.history[k].lower, 4 * base.history[k].lower);
    EXPECT_EQ(scaled.history[k].upper, 4 * base.history[k].upper);
  }
  EXPECT_EQ(scaled.x, base.x);
  const auto g1 = gerschgorin_bound<mpq_class>(S, Valuation::identity(), 4);
  const auto g4 = gerschgorin_bound<mpq_class>(S, f4, 4);
  EXPECT_EQ(g4.real_upper, 4 * g1.real_upper);
  // other factors agree to rounding
  const Valuation f3 = Valuation::identity().scaled(Number::parse("3/10"));
  PowerConfig cfg;
  cfg.max_iterations = 8;
  const auto b30 = power_method(*make_contractor<double>(Backend::tt, S, Valuation::identity(), 4), cfg);
  const auto s30 = power_method(*make_contractor<double>(Backend::tt, S, f3, 4), cfg);
  ASSERT_EQ(b30.history.size(), s30.history.size());
  for (std::size_t k = 0; k < b30.history.size(); ++k)
    EXPECT_NEAR(s30.history[k].upper, 0.3 * b30.history[k].upper, 1e-13 * b30.history[k].upper);
}

TEST(Gerschgorin, Examples) {
  const auto g = gerschgorin_bound<mpq_class>(divisor_set({1, 2}), Valuation::identity(), 4);
  EXPECT_EQ(g.c, (std::vector<double>{2, 2}));
  EXPECT_EQ(g.disks[0].center, 1);
  EXPECT_EQ(g.disks[0].radius, 14);
  EXPECT_EQ(g.disks[1].center, 2);
  EXPECT_EQ(g.disks[1].radius, 14);
  EXPECT_EQ(g.real_upper, 16);
  EXPECT_EQ(gerschgorin_bound<mpq_class>(divisor_set({1, 2}), Valuation::identity(), 3).real_upper, 8);
  const auto one = gerschgorin_bound<mpq_class>(divisor_set({1}), Valuation::identity(), 4);
  EXPECT_EQ(one.c, (std::vector<double>{0}));
  EXPECT_EQ(one.real_upper, 1);
}

TEST(Gerschgorin, ClosedChainStaysBelowMax) {
  const auto S = jt_test::chain_set({1, 2, 3, 4, 5});
  const auto g = gerschgorin_bound<mpq_class>(S, Valuation::identity(), 4);
  for (double c : g.c) EXPECT_LE(c, 5);
}

namespace {

// c_i by enumerating every tuple (i_2..i_d) not all equal to i
std::vector<mpq_class> brute_c(const OrderedSubset& S, const Valuation& f, std::size_t d) {
  const std::size_t n = S.size();
  std::vector<mpq_class> c(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> t(d - 1, 0);
    do {
      if (std::all_of(t.begin(), t.end(), [&](std::size_t j) { return j == i; })) continue;
      Element y = S[i];
      for (std::size_t j : t) y = S.lattice().join(y, S[j]);
      mpq_class v = abs(f.value<mpq_class>(S.lattice(), y));
      if (v > c[i]) c[i] = v;
    } while (next_index(t, n));
  }
  return c;
}

}  // namespace

TEST(Gerschgorin, MatchesTupleEnumeration) {
  const auto six = jt_test::six_semilattice();
  for (const auto& S : {divisor_set({1, 2, 3, 4, 5}), divisor_set({2, 3, 6}), jt_test::chain_set({1, 2, 3}), range_subset(six, 6)})
    for (std::size_t d = 2; d <= 5; ++d)
      for (const Valuation& f : {Valuation::identity(), Valuation::reciprocal()}) {
        const auto g = gerschgorin_bound<mpq_class>(S, f, d);
        const auto c = brute_c(S, f, d);
        for (std::size_t i = 0; i < S.size(); ++i) EXPECT_EQ(g.c[i], c[i].get_d()) << d << " " << i;
      }
}

TEST(BoundCheck, LcmCells) {
  const double bounds[6][2] = {{1, 1}, {16, 64}, {159, 1455}, {760, 12280}, {7445, 187445}, {12906, 466506}};
  const double lambdas[6][2] = {{1, 1},
                                {15.51041196, 63.5023437},
                                {126.1636311, 1310.628494},
                                {497.1083835, 9791.068646},
                                {2561.753995, 100982.9507},
                                {4856.134751, 260640.4312}};
  for (long n = 1; n <= 6; ++n) {
    std::vector<Element> e;
    for (long i = 1; i <= n; ++i) e.emplace_back(i);
    const OrderedSubset S(Lattice::divisor(), e);
    for (int j = 0; j < 2; ++j) {
      const std::size_t d = j == 0 ? 4 : 6;
      const auto est = power_method(*make_contractor<double>(Backend::tt, S, Valuation::identity(), d));
      const auto g = gerschgorin_bound<mpq_class>(S, Valuation::identity(), d);
      EXPECT_EQ(g.real_upper, bounds[n - 1][j]);
      EXPECT_NEAR(est.lambda, lambdas[n - 1][j], 1e-9 * lambdas[n - 1][j] + 1e-6);
      EXPECT_TRUE(bound_check(est, g).ok);
    }
  }
}
