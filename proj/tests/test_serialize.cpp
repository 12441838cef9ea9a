#include <gtest/gtest.h>

#include "jointensor/error.hpp"
#include "jointensor/serialize.hpp"
#include "test_support.hpp"

using namespace jointensor;
using jt_test::divisor_set;

TEST(Serialize, TtRoundTripExact) {
  const auto tt = build_tt<mpq_class>(divisor_set({1, 2, 3, 4}), Valuation::reciprocal(), 5);
  const Json j = to_json(tt);
  const auto back = tt_from_json<mpq_class>(Json::parse(j.dump()));
  EXPECT_EQ(to_json(back), j);
  std::vector<std::size_t> idx(5, 0);
  do {
    EXPECT_EQ(back.evaluate(idx), tt.evaluate(idx));
  } while (next_index(idx, 4));
}

TEST(Serialize, TtRoundTripFloat) {
  const auto tt = build_tt<double>(divisor_set({1, 2, 3}), Valuation::power(Number::parse("0.5")), 4);
  const auto back = tt_from_json<double>(Json::parse(to_json(tt).dump()));
  std::vector<std::size_t> idx(4, 0);
  do {
    EXPECT_EQ(back.evaluate(idx), tt.evaluate(idx));
  } while (next_index(idx, 3));
}

TEST(Serialize, TtShapeErrors) {
  Json j = to_json(build_tt<mpq_class>(divisor_set({1, 2}), Valuation::identity(), 4));
  Json dropped = j;
  dropped["cores"].erase(1);
  EXPECT_THROW(tt_from_json<mpq_class>(dropped), Error);
  Json out_of_range = j;
  out_of_range["cores"][0]["triplets"][0][1] = 9;
  EXPECT_THROW(tt_from_json<mpq_class>(out_of_range), Error);
  EXPECT_THROW(tt_from_json<mpq_class>(Json::parse("{\"n\": 2}")), Error);
}

TEST(Serialize, CpCoefficientsAsStrings) {
  const Json j = to_json(build_cp<mpq_class>(divisor_set({2, 3}), Valuation::identity(), 2));
  EXPECT_EQ(j["c"], Json::array({"-4", "-3", "6"}));
  EXPECT_EQ(j["E"]["nnz"], 4);
}

TEST(Serialize, PosetFromFile) {
  const Lattice L = Lattice::from_poset(load_poset(jt_test::data_path("six_semilattice.json")));
  EXPECT_EQ(L.display(L.join(L.element("1"), L.element("2"))), "4");
  EXPECT_EQ(L.display(L.join(L.element("4"), L.element("5"))), "6");
  EXPECT_TRUE(L.leq(L.element("3"), L.element("6")));
}

TEST(Serialize, PosetIntegerNamesAndJoinTable) {
  const Json j = Json::parse(R"({"elements": [1, 2, 3], "leq": [[1, 3], [2, 3]], "join": [[1, 2, 3]]})");
  const ExplicitPoset P = parse_poset(j);
  EXPECT_TRUE(P.has_custom_joins());
  EXPECT_EQ(P.size(), 3u);
  EXPECT_THROW(parse_poset(Json::parse(R"({"elements": ["a"], "leq": [["a", "b"]]})")), Error);
  EXPECT_THROW(load_poset("/nonexistent/poset.json"), Error);
}
