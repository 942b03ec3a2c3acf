#pragma once

#include <optional>
#include <vector>

#include "carleman/spectral.hpp"

namespace carleman {

struct ChartOptions {
  /// Trusted radius about x*; unset means 0.1 * distance to the nearest other fixed point.
  std::optional<double> r_eval;
};

/**
 * Linearizing chart of f at x*: u(f(x)) = λ u(x), normalized to u'(x*) = 1.
 *
 * u is expanded about x* and read from row 1 of V; u_inv maps chart values back,
 * is expanded about 0 and read from row 1 of V^{-1}. The two are series
 * reversions of each other.
 * Continuous iterates follow as f^t(x) = u_inv(λ^t u(x)).
 */
struct SchroederChart {
  Complex lambda{};
  Complex log_lambda{};
  PowerSeries u;
  PowerSeries u_inv;
  FixedPointFrame frame;
  double r_eval = 0.0;
  /// Half the root-test estimate of u_inv's convergence radius.
  double inverse_radius = 0.0;

  [[nodiscard]] Complex x_star() const noexcept { return frame.x_star; }
  /// λ^t on the principal branch.
  [[nodiscard]] Complex lambda_power(double t) const;
};

/// φ_0 = x*, φ_k(x) = V^{-1}_{1k} sum_l V_kl (x - x*)^l; f^t(x) = sum_k λ^{kt} φ_k(x).
struct IterateExpansion {
  std::vector<PowerSeries> phi;
  Complex lambda{};
  Complex log_lambda{};
  Complex x_star{};
  double r_eval = 0.0;
};

/// A series sum together with the tail test used to accept it.
struct IterateValue {
  Complex value{};
  bool converged = true;
  /// Largest magnitude among the final terms of the sum.
  double tail = 0.0;

  /// The value, or NonConvergent when the tail test failed.
  [[nodiscard]] Complex checked() const;
};

inline constexpr double kTailTolerance = 1e-10;

/// 0.1 * |x* - nearest other fixed point|, or 1 when f has no other fixed point.
double default_chart_radius(const FixedPointFrame& frame);

SchroederChart build_chart(const SpectralFactorization& s, const FixedPointFrame& frame,
                           const ChartOptions& options = {});

/// u_inv(λ^t u(x)); OutOfChart if x or the chart value lies outside the trusted radii.
Complex evaluate_iterate_chart(const SchroederChart& chart, double t, Complex x);

/**
 * Chart evaluation continued through the Schröder relation for points outside
 * r_eval. For |λ| > 1 the input is pulled toward x* along the local inverse
 * branch of f (u(x) = λ u(f^{-1}(x))) and the output is pushed out with f
 * (u_inv(λ y) = f(u_inv(y))); for |λ| < 1 the roles of f and its inverse branch
 * swap. This is the analytic continuation along the path traced by the branch.
 */
Complex evaluate_iterate_extended(const SchroederChart& chart, double t, Complex x, int max_steps = 64);

IterateExpansion build_expansion(const SpectralFactorization& s, const FixedPointFrame& frame,
                                 int k_max = -1, const ChartOptions& options = {});

/// sum_{k=0}^{k_max} λ^{kt} φ_k(x), with convergence judged on the last terms.
IterateValue evaluate_iterate_matrix(const IterateExpansion& expansion, double t, Complex x,
                                     double tail_tol = kTailTolerance);

/// max_m |u(x_{m+1}) - λ u(x_m)| along n steps of the orbit of x0.
double verify_linearization(const SchroederChart& chart, Complex x0, int n);

/// Solves g(z) = w on the branch through z = 0 by continuation in w.
Complex inverse_branch(const PowerSeries& g, Complex w);

}  // namespace carleman
