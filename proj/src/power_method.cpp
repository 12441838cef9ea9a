#include "jointensor/power_method.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "jointensor/error.hpp"

namespace jointensor {

namespace {

std::vector<double> initial_vector(const InitialVector& init, std::size_t n) {
  std::vector<double> x(n, 1.0);
  switch (init.kind) {
    case InitialVector::Kind::uniform: break;
    case InitialVector::Kind::given:
      if (init.values.size() != n) throw Error(Errc::bad_shape, "initial vector has the wrong length");
      x = init.values;
      break;
    case InitialVector::Kind::random: {
      std::mt19937_64 rng(init.seed);
      std::uniform_real_distribution<double> u(0.5, 1.5);
      for (double& v : x) v = u(rng);
      break;
    }
  }
  double norm = 0;
  for (double v : x) {
    if (!(v > 0) || !std::isfinite(v)) throw Error(Errc::bad_value, "initial vector must be strictly positive");
    norm += v * v;
  }
  norm = std::sqrt(norm);
  for (double& v : x) v /= norm;
  return x;
}

// A regression of a few ulps is rounding in the contraction, not a real step back.
bool rounding_level(double prev, double now) {
  return std::abs(prev - now) <= 64 * std::numeric_limits<double>::epsilon() * std::abs(prev);
}

}  // namespace

EigenEstimate power_method(const Contractor<double>& C, const PowerConfig& cfg) {
  const std::size_t n = C.n(), d = C.d();
  if (!(cfg.tolerance > 0)) throw Error(Errc::bad_value, "tolerance must be positive");
  if (d < 2) throw Error(Errc::bad_order, "power method needs order d >= 2");
  EigenEstimate est;
  if (d % 2 == 1) {
    if (!cfg.allow_odd_order) throw Error(Errc::odd_order, "power method is defined for even order; got d = " + std::to_string(d));
    est.warnings.push_back("odd order: outside the convergence theory");
  }
  if (!C.all_entries_positive()) throw Error(Errc::not_positive, "tensor has a nonpositive entry");

  int e = 0;
  std::frexp(C.max_abs_entry(), &e);
  const double s = std::ldexp(1.0, -e);
  est.internal_scale = s;

  std::vector<double> x = initial_vector(cfg.initial, n), z(n);
  const double root = 1.0 / static_cast<double>(d - 1);
  for (std::size_t k = 1; k <= cfg.max_iterations; ++k) {
    std::vector<double> y = C.apply(x);
    for (double& v : y) v *= s;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(x[i] > 0)) continue;
      const double q = y[i] / std::pow(x[i], static_cast<double>(d - 1));
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    lo /= s;
    hi /= s;
    if (!est.history.empty()) {
      const Bracket& prev = est.history.back();
      if (lo < prev.lower && rounding_level(prev.lower, lo)) {
        lo = prev.lower;
        ++est.clamped;
      }
      if (hi > prev.upper && rounding_level(prev.upper, hi)) {
        hi = prev.upper;
        ++est.clamped;
      }
    }
    est.history.push_back({lo, hi});
    est.iterations = k;
    est.x = x;
    if (hi - lo < cfg.tolerance) {
      est.converged = true;
      break;
    }
    double norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = std::pow(y[i], root);
      norm += z[i] * z[i];
    }
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) x[i] = z[i] / norm;
  }
  if (!est.history.empty()) {
    const Bracket& last = est.history.back();
    if (!est.converged && last.upper - last.lower <= 64 * std::numeric_limits<double>::epsilon() * std::abs(last.upper))
      est.warnings.push_back("bracket width " + to_string(last.upper - last.lower) +
                             " is at rounding level and cannot drop below the tolerance");
    est.lambda_lower = est.history.back().lower;
    est.lambda_upper = est.history.back().upper;
    est.lambda = 0.5 * (est.lambda_lower + est.lambda_upper);
  }
  return est;
}

template <Scalar T>
GerschgorinRegion gerschgorin_bound(const OrderedSubset& S, const Valuation& f, std::size_t d) {
  if (d < 2) throw Error(Errc::bad_order, "Gerschgorin region needs order d >= 2");
  const std::size_t n = S.size();
  const Lattice& lat = S.lattice();
  const JoinClosure closure(S, d - 1);
  const OrderedSubset& betas = closure.level(d - 1);
  auto abs_value = [&](const Element& y) {
    T v = f.value<T>(lat, y);
    if (v < 0) v = -v;
    return v;
  };
  T count(1);
  for (std::size_t k = 0; k + 1 < d; ++k) count *= static_cast<long>(n);
  count -= 1;

  GerschgorinRegion out;
  T best(0);
  bool have_best = false;
  for (std::size_t i = 0; i < n; ++i) {
    bool self_ok = false;
    if (d >= 3)
      for (std::size_t j = 0; j < n && !self_ok; ++j) self_ok = j != i && lat.leq(S[j], S[i]);
    T c(0);
    for (std::size_t b = 0; b < betas.size(); ++b) {
      if (betas[b] == S[i] && !self_ok) continue;
      T v = abs_value(lat.join(S[i], betas[b]));
      if (v > c) c = v;
    }
    const T center = f.value<T>(lat, S[i]);
    const T radius = count * c;
    const T reach = center + radius;
    if (!have_best || reach > best) {
      best = reach;
      have_best = true;
    }
    out.c.push_back(to_double(c));
    out.disks.push_back({to_double(center), to_double(radius)});
  }
  out.real_upper = to_double(best);
  out.real_upper_text = to_string(best);
  return out;
}

BoundCheck bound_check(const EigenEstimate& est, const GerschgorinRegion& region, double tolerance) {
  BoundCheck out;
  out.slack = tolerance + 16 * std::numeric_limits<double>::epsilon() * std::abs(region.real_upper);
  out.ok = est.lambda_upper <= region.real_upper + out.slack;
  out.ratio = region.real_upper != 0 ? est.lambda / region.real_upper : 0;
  return out;
}

template GerschgorinRegion gerschgorin_bound<mpq_class>(const OrderedSubset&, const Valuation&, std::size_t);
template GerschgorinRegion gerschgorin_bound<double>(const OrderedSubset&, const Valuation&, std::size_t);

}  // namespace jointensor
