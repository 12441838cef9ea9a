#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "jointensor/lattice.hpp"

namespace jt_test {

using namespace jointensor;

inline OrderedSubset subset(const Lattice& L, std::initializer_list<long> xs) {
  std::vector<Element> e;
  for (long x : xs) e.push_back(L.element(x));
  return linear_extension(L, std::move(e));
}

inline OrderedSubset divisor_set(std::initializer_list<long> xs) { return subset(Lattice::divisor(), xs); }
inline OrderedSubset chain_set(std::initializer_list<long> xs) { return subset(Lattice::max_chain(), xs); }

/// 1,2,3 minimal; 4 = 1∨2, 5 = 2∨3, 6 on top. Not a chain, no bottom.
inline Lattice six_semilattice() {
  return Lattice::from_poset(ExplicitPoset::from_relation(
      {"1", "2", "3", "4", "5", "6"}, {{"1", "4"}, {"2", "4"}, {"2", "5"}, {"3", "5"}, {"4", "6"}, {"5", "6"}}));
}

inline std::string data_path(const std::string& name) { return std::string(JT_TEST_DATA) + "/" + name; }

}  // namespace jt_test
