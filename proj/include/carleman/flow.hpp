#pragma once

#include <vector>

#include "carleman/iterate.hpp"

namespace carleman {

/// Vector field G of the flow f^t: G(x) = sum_k (ln M)_1k (x - x*)^k.
struct FlowField {
  PowerSeries g_coeffs;
  SchroederChart chart;
  Complex lambda{};

  [[nodiscard]] Complex x_star() const noexcept { return chart.x_star(); }
  [[nodiscard]] double r_eval() const noexcept { return chart.r_eval; }
};

struct TrajectoryPoint {
  double t = 0.0;
  Complex x{};
};

using Trajectory = std::vector<TrajectoryPoint>;

class ChartEscape : public Error {
 public:
  ChartEscape(const std::string& message, double t_reached, Trajectory partial)
      : Error(ErrorCode::ChartEscape, message), t_reached_(t_reached), partial_(std::move(partial)) {}

  [[nodiscard]] double t_reached() const noexcept { return t_reached_; }
  [[nodiscard]] const Trajectory& partial() const noexcept { return partial_; }

 private:
  double t_reached_;
  Trajectory partial_;
};

/**
 * Reads G from row 1 of the generator L = ln M, which must be expressed about
 * the chart's fixed point (matrix_log with Coordinates::fixed_point, or either
 * coordinates when x* = 0).
 *
 * The coefficients are checked against Log λ · u(x) / u'(x); a relative
 * disagreement above `tol` throws BranchMismatch.
 */
FlowField build_field(const CarlemanMatrix& l, const SchroederChart& chart, double tol = 1e-7);

Complex evaluate_field(const FlowField& field, Complex x);

/// Classical RK4 for dx/dt = G(x) with the step adjusted to land on t_end.
Trajectory integrate_flow(const FlowField& field, Complex x0, double t_end, double dt);

/// Logistic mu = 4: time after which the principal-part field stops describing
/// f^t(x), ln(π / arccos(1 - 2x)) / ln 2, for x in (0, 1].
double validity_window(double x);

struct LyapunovEstimate {
  int n = 0;
  double x0 = 0.0;
  double sigma_hat = 0.0;
  /// An iterate landed exactly on the critical point 1/2 and was nudged by 1e-12.
  bool perturbed = false;
};

/// (1/n) sum_m ln|f'(x_m)| along the orbit of the mu = 4 logistic map.
LyapunovEstimate lyapunov_logistic(int n, double x0);

}  // namespace carleman
