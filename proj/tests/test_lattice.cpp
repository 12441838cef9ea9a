#include <gtest/gtest.h>

#include <random>

#include "jointensor/error.hpp"
#include "jointensor/lattice.hpp"
#include "test_support.hpp"

using namespace jointensor;
using jt_test::divisor_set;
using jt_test::chain_set;

namespace {

std::vector<long> keys(const OrderedSubset& s) {
  std::vector<long> out;
  for (const Element& e : s.elements()) out.push_back(e.key.get_si());
  return out;
}

Lattice antichain_ab() {
  return Lattice::from_poset(ExplicitPoset::from_relation({"a", "b"}, {}), false);
}

}  // namespace

TEST(Join, DivisorIsLcm) {
  const Lattice L = Lattice::divisor();
  EXPECT_EQ(L.join(L.element(4), L.element(6)), L.element(12));
  EXPECT_EQ(L.join(L.element(7), L.element(7)), L.element(7));
}

TEST(Join, MaxChainIsMax) {
  const Lattice L = Lattice::max_chain();
  EXPECT_EQ(L.join(L.element(3), L.element(5)), L.element(5));
  EXPECT_EQ(L.join(L.element(5), L.element(3)), L.element(5));
}

TEST(Join, ExplicitWithoutUpperBound) {
  EXPECT_THROW(
      {
        try {
          Lattice::from_poset(ExplicitPoset::from_relation({"a", "b"}, {}));
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), Errc::not_a_semilattice);
          throw;
        }
      },
      Error);
  const Lattice L = antichain_ab();
  EXPECT_FALSE(L.try_join(L.element("a"), L.element("b")).has_value());
  EXPECT_THROW(L.join(L.element("a"), L.element("b")), Error);
}

TEST(Leq, BuiltIns) {
  const Lattice D = Lattice::divisor();
  EXPECT_TRUE(D.leq(D.element(3), D.element(12)));
  EXPECT_FALSE(D.leq(D.element(4), D.element(6)));
  const Lattice M = Lattice::max_chain();
  EXPECT_TRUE(M.leq(M.element(2), M.element(5)));
}

TEST(Leq, UnknownElement) {
  const Lattice L = jt_test::six_semilattice();
  try {
    L.element("7");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unknown_element);
  }
  EXPECT_THROW(Lattice::divisor().leq(Element(0L), Element(3L)), Error);
}

TEST(Leq, AgreesWithJoin) {
  const Lattice L = jt_test::six_semilattice();
  for (const Element& x : L.universe())
    for (const Element& y : L.universe()) EXPECT_EQ(L.leq(x, y), L.join(x, y) == y);
}

TEST(ExplicitPoset, CycleIsRejected) {
  try {
    ExplicitPoset::from_relation({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_a_partial_order);
  }
}

TEST(ExplicitPoset, DualSwapsOrder) {
  const auto p = ExplicitPoset::from_relation({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
  const auto q = p.dual();
  EXPECT_TRUE(q.leq(*q.index_of("c"), *q.index_of("a")));
  EXPECT_EQ(q.join(*q.index_of("a"), *q.index_of("b")), std::nullopt);
  EXPECT_EQ(q.name(*q.join(*q.index_of("a"), *q.index_of("c"))), "a");
}

TEST(LinearExtension, Examples) {
  EXPECT_EQ(keys(divisor_set({6, 2, 3})), (std::vector<long>{2, 3, 6}));
  EXPECT_EQ(keys(chain_set({3, 1, 2})), (std::vector<long>{1, 2, 3}));
  EXPECT_EQ(keys(divisor_set({5, 3, 2})), (std::vector<long>{2, 3, 5}));
}

TEST(LinearExtension, ExplicitTiesByDisplayKey) {
  const Lattice L = jt_test::six_semilattice();
  const auto s = linear_extension(L, {L.element("6"), L.element("5"), L.element("3"), L.element("1")});
  EXPECT_EQ(s.display(), (std::vector<std::string>{"1", "3", "5", "6"}));
}

TEST(LinearExtension, RandomDivisorSetsRespectOrder) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> pick(1, 200);
  const Lattice L = Lattice::divisor();
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Element> e;
    for (int k = 0; k < 12; ++k) {
      Element x = L.element(pick(rng));
      if (std::find(e.begin(), e.end(), x) == e.end()) e.push_back(x);
    }
    std::shuffle(e.begin(), e.end(), rng);
    const auto s = linear_extension(L, e);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = 0; j < s.size(); ++j)
        if (L.leq(s[i], s[j])) EXPECT_LE(i, j);
  }
}

TEST(OrderedSubset, RejectsBadOrderAndDuplicates) {
  const Lattice L = Lattice::divisor();
  EXPECT_THROW(OrderedSubset(L, {L.element(6), L.element(2)}), Error);
  EXPECT_THROW(OrderedSubset(L, {L.element(2), L.element(2)}), Error);
  EXPECT_NO_THROW(OrderedSubset(L, {L.element(3), L.element(2)}));
}

TEST(JoinClosure, Examples) {
  EXPECT_EQ(keys(join_closure(divisor_set({1, 2, 3, 4, 5, 6}), 2).elements()),
            (std::vector<long>{1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30}));
  EXPECT_EQ(keys(join_closure(divisor_set({2, 3}), 2).elements()), (std::vector<long>{2, 3, 6}));
  EXPECT_EQ(keys(join_closure(divisor_set({1, 2}), 5).elements()), (std::vector<long>{1, 2}));
}

TEST(JoinClosure, StepTableMatchesJoins) {
  const auto S = divisor_set({2, 3, 4, 5});
  const JoinClosure c(S, 4);
  const Lattice& L = S.lattice();
  for (std::size_t j = 2; j <= 4; ++j) {
    auto step = c.step(j);
    for (std::size_t a = 0; a < c.size(j - 1); ++a)
      for (std::size_t i = 0; i < S.size(); ++i)
        EXPECT_EQ(c.level(j)[step[a * S.size() + i]], L.join(c.level(j - 1)[a], S[i]));
  }
}

TEST(JoinClosure, NestedAndStableBeyondN) {
  const auto S = divisor_set({2, 3, 4, 5, 6, 7});
  const JoinClosure c(S, 9);
  for (std::size_t k = 1; k < 9; ++k)
    for (const Element& y : c.level(k).elements()) EXPECT_TRUE(c.level(k + 1).position(y).has_value());
  for (std::size_t k = S.size(); k <= 9; ++k) EXPECT_EQ(keys(c.level(k)), keys(c.level(S.size())));
  EXPECT_LE(c.elements().size(), (1u << S.size()) - 1);
}

TEST(JoinClosure, BooleanWorstCase) {
  // singletons of a 4-set: every nonempty union appears
  std::vector<std::string> names{"a", "b", "c", "d", "ab", "ac", "ad", "bc", "bd", "cd", "abc", "abd", "acd", "bcd", "abcd"};
  ExplicitPoset::Relation rel;
  for (const auto& x : names)
    for (const auto& y : names)
      if (x != y && std::all_of(x.begin(), x.end(), [&](char ch) { return y.find(ch) != std::string::npos; }))
        rel.emplace_back(x, y);
  const Lattice L = Lattice::from_poset(ExplicitPoset::from_relation(names, rel));
  const auto S = linear_extension(L, {L.element("a"), L.element("b"), L.element("c"), L.element("d")});
  const JoinClosure c(S, 4);
  EXPECT_EQ(c.size(1), 4u);
  EXPECT_EQ(c.size(2), 10u);
  EXPECT_EQ(c.size(3), 14u);
  EXPECT_EQ(c.size(4), 15u);
}

TEST(Moebius, Examples) {
  const auto chain = chain_set({1, 2, 3});
  const MoebiusTable m(chain);
  EXPECT_EQ(m(0, 1), -1);
  EXPECT_EQ(m(0, 2), 0);
  const MoebiusTable m2(divisor_set({2, 3, 6}));
  EXPECT_EQ(m2(0, 2), -1);
  EXPECT_EQ(m2(0, 1), 0);
  const MoebiusTable m3(divisor_set({1, 2, 3, 6}));
  EXPECT_EQ(m3(0, 3), 1);
}

TEST(Moebius, InvertsZeta) {
  for (const auto& base : {divisor_set({1, 2, 3, 4, 5, 6}), divisor_set({4, 6, 9, 10}), chain_set({1, 4, 9})}) {
    const JoinClosure c(base, 3);
    const OrderedSubset& Y = c.elements();
    const IncidenceMatrix z = zeta_matrix(Y, Y);
    const MoebiusTable mu(Y);
    for (std::size_t i = 0; i < Y.size(); ++i)
      for (std::size_t j = 0; j < Y.size(); ++j) {
        mpz_class s = 0;
        for (std::size_t k = 0; k < Y.size(); ++k)
          if (z(k, j)) s += mu(i, k);
        EXPECT_EQ(s, i == j ? 1 : 0) << i << "," << j;
      }
  }
}

TEST(Zeta, Examples) {
  const IncidenceMatrix z = zeta_matrix(divisor_set({1, 2, 3}), divisor_set({1, 2, 3, 6}));
  const int expect[3][4] = {{1, 1, 1, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(z(i, j), expect[i][j] == 1);
  const IncidenceMatrix c = zeta_matrix(chain_set({1, 2, 3}), chain_set({1, 2, 3}));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(c(i, j), i <= j);
  EXPECT_EQ(zeta_matrix(divisor_set({4}), divisor_set({2, 3, 6})).nnz(), 0u);
}

TEST(Validate, BuiltInsAreValid) {
  const Lattice L = Lattice::divisor();
  const auto S = divisor_set({2, 3, 4, 5, 6, 8, 9, 10, 12});
  const auto rep = validate_semilattice(L, S.elements());
  EXPECT_TRUE(rep.ok());
  const auto six = jt_test::six_semilattice();
  EXPECT_TRUE(validate_semilattice(six, six.universe()).ok());
}

TEST(Validate, MissingUpperBound) {
  const Lattice L = antichain_ab();
  const auto rep = validate_semilattice(L, L.universe());
  EXPECT_FALSE(rep.ok());
  EXPECT_TRUE(rep.has(ViolationKind::join_undefined));
}

TEST(Validate, NonCommutativeTable) {
  auto p = ExplicitPoset::from_relation({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
  p = p.with_join_table({{"a", "a", "a"}, {"b", "b", "b"}, {"c", "c", "c"}, {"a", "b", "c"}, {"b", "a", "a"},
                         {"a", "c", "c"}, {"c", "a", "c"}, {"b", "c", "c"}, {"c", "b", "c"}});
  const Lattice L = Lattice::from_poset(p, false);
  const auto rep = validate_semilattice(L, L.universe());
  EXPECT_TRUE(rep.has(ViolationKind::not_commutative));
}
