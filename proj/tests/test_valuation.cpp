#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "jointensor/error.hpp"
#include "jointensor/valuation.hpp"
#include "test_support.hpp"

using namespace jointensor;

TEST(Number, ParsesExactAndApproximate) {
  const Number a = Number::parse("3/4");
  ASSERT_TRUE(a.exact);
  EXPECT_EQ(*a.exact, mpq_class(3, 4));
  const Number b = Number::parse("1.5e-3");
  ASSERT_TRUE(b.exact);
  EXPECT_EQ(*b.exact, mpq_class(3, 2000));
  EXPECT_DOUBLE_EQ(b.approx, 1.5e-3);
}

TEST(Valuation, Kinds) {
  const Lattice L = Lattice::divisor();
  const Element x = L.element(6);
  EXPECT_EQ(Valuation::identity().value<mpq_class>(L, x), 6);
  EXPECT_EQ(Valuation::constant(Number::of(1)).value<mpq_class>(L, x), 1);
  EXPECT_EQ(Valuation::power(Number::of(2)).value<mpq_class>(L, x), 36);
  EXPECT_EQ(Valuation::power(Number::of(-1)).value<mpq_class>(L, x), mpq_class(1, 6));
  EXPECT_EQ(Valuation::reciprocal().value<mpq_class>(L, x), mpq_class(1, 6));
  EXPECT_EQ(Valuation::parse("power:2").scaled(Number::of(3)).value<mpq_class>(L, x), 108);
}

TEST(Valuation, IrrationalPowerIsFloatOnly) {
  const Lattice L = Lattice::divisor();
  const Valuation f = Valuation::parse("power:0.5");
  EXPECT_EQ(f.default_mode(), Mode::approximate);
  EXPECT_NEAR(f.value<double>(L, L.element(4)), 2.0, 1e-15);
  try {
    f.value<mpq_class>(L, L.element(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::mode_mismatch);
  }
}

TEST(Valuation, IdentityNeedsNumericKeys) {
  const Lattice L = Lattice::from_poset(ExplicitPoset::from_relation({"a", "b"}, {{"a", "b"}}));
  EXPECT_THROW(Valuation::identity().value<double>(L, L.element("a")), Error);
}

TEST(Valuation, TableFile) {
  const std::string path = testing::TempDir() + "/valuation_table.csv";
  {
    std::ofstream out(path);
    out << "element,value\n1,2\n2,1/3\n";
  }
  const Valuation f = Valuation::parse("table:" + path);
  const Lattice L = Lattice::divisor();
  EXPECT_EQ(f.value<mpq_class>(L, L.element(2)), mpq_class(1, 3));
  try {
    f.value<mpq_class>(L, L.element(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::missing_valuation);
  }
  std::remove(path.c_str());
}
