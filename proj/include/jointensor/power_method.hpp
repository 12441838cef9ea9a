#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "jointensor/contract.hpp"
#include "jointensor/lattice.hpp"
#include "jointensor/valuation.hpp"

namespace jointensor {

struct InitialVector {
  enum class Kind { uniform, given, random } kind = Kind::uniform;
  std::vector<double> values;  // for Kind::given
  std::uint64_t seed = 0;      // for Kind::random

  static InitialVector uniform() { return {}; }
  static InitialVector given(std::vector<double> v) { return {Kind::given, std::move(v), 0}; }
  static InitialVector random(std::uint64_t seed) { return {Kind::random, {}, seed}; }
};

struct PowerConfig {
  double tolerance = 1e-10;  // on the bracket width, in units of f
  std::size_t max_iterations = 10'000;
  InitialVector initial;
  bool allow_odd_order = false;
};

struct Bracket {
  double lower;
  double upper;
};

struct EigenEstimate {
  double lambda_lower = 0;
  double lambda_upper = 0;
  double lambda = 0;
  std::vector<double> x;  // the iterate the final bracket was measured at
  std::vector<Bracket> history;
  bool converged = false;
  std::size_t iterations = 0;
  /// Brackets that regressed by a few ulps and were held at the previous value.
  std::size_t clamped = 0;
  double internal_scale = 1;  // power of two applied to f internally
  std::vector<std::string> warnings;
};

/// Bracketing power iteration for a positive symmetric tensor of even order:
/// y = A x^{d-1}, brackets min/max y_i / x_i^{d-1}, x <- y^{[1/(d-1)]} / ||.||_2.
/// Error(not_positive) on a nonpositive entry, Error(odd_order) for odd d
/// unless cfg.allow_odd_order. Runs in double precision.
EigenEstimate power_method(const Contractor<double>& C, const PowerConfig& cfg = {});

struct Disk {
  double center;
  double radius;
};

struct GerschgorinRegion {
  std::vector<Disk> disks;
  std::vector<double> c;
  double real_upper = 0;
  std::string real_upper_text;  // exact when computed in exact mode
};

/// Disks |z - f(x_i)| <= (n^{d-1} - 1) c_i with c_i the largest |f(x_i ∨ x_{i_2} ∨ ... ∨ x_{i_d})|
/// over tuples not all equal to i. The maximum runs over β ∈ S^{∨(d-1)}; β = x_i
/// counts only when d >= 3 and some x_j ⪯ x_i with j != i.
template <Scalar T>
GerschgorinRegion gerschgorin_bound(const OrderedSubset& S, const Valuation& f, std::size_t d);

struct BoundCheck {
  bool ok = false;
  double ratio = 0;  // λ / real_upper
  double slack = 0;
};

/// λ̄ <= real_upper, allowing `tolerance` plus rounding of the bound itself.
BoundCheck bound_check(const EigenEstimate& est, const GerschgorinRegion& region, double tolerance = 1e-10);

}  // namespace jointensor
