#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "carleman/series.hpp"

namespace testing_support {

using carleman::Complex;
using carleman::PowerSeries;

// Fixed-seed generator for property tests; every test owns its own stream.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  Complex complex(double scale) { return {uniform(-scale, scale), uniform(-scale, scale)}; }

  /// Polynomial with `degree` + 1 coefficients drawn from [-scale, scale]^2.
  PowerSeries polynomial(int degree, double scale, bool zero_constant) {
    std::vector<Complex> c(static_cast<std::size_t>(degree + 1));
    for (auto& v : c) v = complex(scale);
    if (zero_constant) c[0] = 0.0;
    return PowerSeries(std::move(c));
  }

  /// Series of the given order with zero constant and unit linear term.
  PowerSeries unit_series(int order, double scale) {
    PowerSeries p = polynomial(order - 1, scale, true);
    std::vector<Complex> c(p.coeffs().begin(), p.coeffs().end());
    c[1] = 1.0;
    return PowerSeries(std::move(c));
  }

 private:
  std::mt19937_64 rng_;
};

/// k-th Taylor coefficient of fn about `center`, from the trapezoid rule on a circle.
inline Complex cauchy_coefficient(const std::function<Complex(Complex)>& fn, Complex center, int k, double radius,
                                  int nodes = 512) {
  Complex sum{};
  for (int q = 0; q < nodes; ++q) {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * q / nodes);
    sum += fn(center + radius * w) * std::pow(w, -k);
  }
  return sum / static_cast<double>(nodes) / std::pow(radius, k);
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

}  // namespace testing_support
