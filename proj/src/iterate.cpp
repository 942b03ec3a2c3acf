#include "carleman/iterate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace carleman {

namespace {

constexpr int kHomotopySteps = 16;
constexpr int kNewtonIterations = 60;

// Cauchy-Hadamard on the upper half of the coefficients.
double root_test_radius(const PowerSeries& s) {
  double radius = std::numeric_limits<double>::infinity();
  for (int k = std::max(1, s.order() / 2); k < s.order(); ++k) {
    const double c = std::abs(s[k]);
    if (c > 0.0) radius = std::min(radius, std::pow(c, -1.0 / k));
  }
  return radius;
}

Complex apply_map(const FixedPointFrame& frame, Complex x) {
  return frame.x_star + frame.shifted_map.evaluate(x - frame.x_star);
}

Complex apply_inverse_branch(const FixedPointFrame& frame, Complex x) {
  return frame.x_star + inverse_branch(frame.shifted_map, x - frame.x_star);
}

std::string describe_point(const char* what, Complex x, double distance, double radius) {
  std::ostringstream msg;
  msg << what << " " << x << " lies " << distance << " from the expansion point, beyond radius " << radius;
  return msg.str();
}

}  // namespace

Complex SchroederChart::lambda_power(double t) const { return std::exp(t * log_lambda); }

Complex IterateValue::checked() const {
  if (!converged) {
    std::ostringstream msg;
    msg << "series for f^t did not converge: final term magnitude " << tail;
    throw Error(ErrorCode::NonConvergent, msg.str());
  }
  return value;
}

double default_chart_radius(const FixedPointFrame& frame) {
  double nearest = std::numeric_limits<double>::infinity();
  const double self = 1e-8 * std::max(1.0, std::abs(frame.x_star));
  for (const Complex root : fixed_points(frame.map)) {
    const double d = std::abs(root - frame.x_star);
    if (d > self) nearest = std::min(nearest, d);
  }
  return std::isfinite(nearest) ? 0.1 * nearest : 1.0;
}

SchroederChart build_chart(const SpectralFactorization& s, const FixedPointFrame& frame,
                           const ChartOptions& options) {
  SchroederChart chart;
  chart.lambda = s.lambda;
  chart.log_lambda = s.log_lambda;
  chart.frame = frame;
  // u = v∘h with h(x) = x - x*: the coefficients of v read about x*.
  chart.u = PowerSeries(left_eigenrow(s), frame.x_star);
  // Row 1 of V^{-1} holds the coefficients of u^{-1} - x*. Series reversion of u
  // gives the same series but loses relative accuracy in the small high-order
  // coefficients, which matters once λ^t u(x) grows past 1.
  std::vector<Complex> inverse(static_cast<std::size_t>(s.dim()));
  for (int k = 0; k < s.dim(); ++k) inverse[static_cast<std::size_t>(k)] = s.v_inv(1, k);
  inverse[0] += frame.x_star;
  chart.u_inv = PowerSeries(std::move(inverse));
  chart.r_eval = options.r_eval.value_or(default_chart_radius(frame));
  chart.inverse_radius = 0.5 * root_test_radius(chart.u_inv);
  return chart;
}

Complex evaluate_iterate_chart(const SchroederChart& chart, double t, Complex x) {
  const double distance = std::abs(x - chart.x_star());
  if (distance > chart.r_eval) {
    throw OutOfChart(describe_point("point", x, distance, chart.r_eval));
  }
  const Complex y = chart.lambda_power(t) * chart.u.evaluate(x);
  if (std::abs(y) > chart.inverse_radius) {
    throw OutOfChart(describe_point("chart value", y, std::abs(y), chart.inverse_radius));
  }
  return chart.u_inv.evaluate(y);
}

Complex inverse_branch(const PowerSeries& g, Complex w) {
  Complex z{};
  Complex target{};
  for (int step = 1; step <= kHomotopySteps; ++step) {
    const Complex next = w * (static_cast<double>(step) / kHomotopySteps);
    const Complex slope0 = g.derivative_at(z);
    if (slope0 == Complex{}) throw OutOfChart("inverse branch: critical point on the continuation path");
    z += (next - target) / slope0;
    target = next;
    bool settled = false;
    for (int it = 0; it < kNewtonIterations; ++it) {
      const Complex slope = g.derivative_at(z);
      if (slope == Complex{}) throw OutOfChart("inverse branch: critical point on the continuation path");
      const Complex dz = (g.evaluate(z) - target) / slope;
      z -= dz;
      if (std::abs(dz) <= 4e-16 * std::max(std::abs(z), 1e-300)) {
        settled = true;
        break;
      }
    }
    if (!settled && std::abs(g.evaluate(z) - target) > 1e-13 * std::max(1.0, std::abs(target))) {
      throw OutOfChart("inverse branch: Newton continuation did not settle");
    }
  }
  return z;
}

Complex evaluate_iterate_extended(const SchroederChart& chart, double t, Complex x, int max_steps) {
  const double modulus = std::abs(chart.lambda);
  if (modulus == 1.0) return evaluate_iterate_chart(chart, t, x);
  const bool repelling = modulus > 1.0;
  const FixedPointFrame& frame = chart.frame;

  // u(x) = λ^k u(f^{-k}(x)) when repelling, λ^{-k} u(f^k(x)) when attracting.
  Complex z = x;
  int pulled = 0;
  while (std::abs(z - chart.x_star()) > chart.r_eval) {
    if (pulled == max_steps) {
      throw OutOfChart(describe_point("point", x, std::abs(x - chart.x_star()), chart.r_eval) +
                       " and did not enter the chart within the step limit");
    }
    z = repelling ? apply_inverse_branch(frame, z) : apply_map(frame, z);
    ++pulled;
  }
  const Complex u_scale = std::exp((repelling ? 1.0 : -1.0) * pulled * chart.log_lambda);
  Complex y = chart.lambda_power(t) * u_scale * chart.u.evaluate(z);

  // u_inv(λ y) = f(u_inv(y)): shrink the chart value, then map forward (or back).
  const double limit = std::min(chart.r_eval, chart.inverse_radius);
  int pushed = 0;
  while (std::abs(y) > limit) {
    if (pushed == max_steps) throw OutOfChart("chart value did not return to the trusted radius");
    y = repelling ? y / chart.lambda : y * chart.lambda;
    ++pushed;
  }
  Complex w = chart.u_inv.evaluate(y);
  for (int i = 0; i < pushed; ++i) w = repelling ? apply_map(frame, w) : apply_inverse_branch(frame, w);
  return w;
}

IterateExpansion build_expansion(const SpectralFactorization& s, const FixedPointFrame& frame, int k_max,
                                 const ChartOptions& options) {
  const int n = s.dim();
  if (k_max < 0) k_max = n - 1;
  if (k_max >= n) {
    throw Error(ErrorCode::InvalidArgument, "build_expansion: k_max must be below the matrix dimension");
  }
  IterateExpansion e;
  e.lambda = s.lambda;
  e.log_lambda = s.log_lambda;
  e.x_star = frame.x_star;
  e.r_eval = options.r_eval.value_or(default_chart_radius(frame));
  e.phi.reserve(static_cast<std::size_t>(k_max + 1));
  e.phi.push_back(PowerSeries::constant(frame.x_star, n, frame.x_star));
  for (int k = 1; k <= k_max; ++k) {
    std::vector<Complex> c(static_cast<std::size_t>(n));
    const Complex weight = s.v_inv(1, k);
    for (int l = 0; l < n; ++l) c[static_cast<std::size_t>(l)] = weight * s.v(k, l);
    e.phi.emplace_back(std::move(c), frame.x_star);
  }
  return e;
}

IterateValue evaluate_iterate_matrix(const IterateExpansion& expansion, double t, Complex x, double tail_tol) {
  const double distance = std::abs(x - expansion.x_star);
  if (distance > expansion.r_eval) {
    throw OutOfChart(describe_point("point", x, distance, expansion.r_eval));
  }
  const int k_max = static_cast<int>(expansion.phi.size()) - 1;
  IterateValue out;
  for (int k = 0; k <= k_max; ++k) {
    const Complex term = std::exp(static_cast<double>(k) * t * expansion.log_lambda) *
                         expansion.phi[static_cast<std::size_t>(k)].evaluate(x);
    out.value += term;
    // A single vanishing term can be a coincidence; judge on the last three.
    if (k >= 1 && k >= k_max - 2) out.tail = std::max(out.tail, std::abs(term));
  }
  out.converged = out.tail == 0.0 || out.tail <= tail_tol * std::abs(out.value);
  return out;
}

double verify_linearization(const SchroederChart& chart, Complex x0, int n) {
  Complex x = x0;
  double worst = 0.0;
  for (int m = 0; m <= n; ++m) {
    const double distance = std::abs(x - chart.x_star());
    if (distance > chart.r_eval) {
      std::ostringstream msg;
      msg << "orbit left the chart at step " << m << ": " << describe_point("iterate", x, distance, chart.r_eval);
      throw OutOfChart(msg.str(), m);
    }
    if (m == n) break;
    const Complex next = chart.frame.map.evaluate(x);
    const double distance_next = std::abs(next - chart.x_star());
    if (distance_next > chart.r_eval) {
      std::ostringstream msg;
      msg << "orbit left the chart at step " << m + 1 << ": "
          << describe_point("iterate", next, distance_next, chart.r_eval);
      throw OutOfChart(msg.str(), m + 1);
    }
    worst = std::max(worst, std::abs(chart.u.evaluate(next) - chart.lambda * chart.u.evaluate(x)));
    x = next;
  }
  return worst;
}

}  // namespace carleman
