#include "carleman/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace carleman {

FlowField build_field(const CarlemanMatrix& l, const SchroederChart& chart, double tol) {
  if (std::abs(l.base_point - chart.x_star()) > 1e-12 * std::max(1.0, std::abs(chart.x_star()))) {
    std::ostringstream msg;
    msg << "build_field: generator is expressed about " << l.base_point << " but the chart is centred at "
        << chart.x_star();
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  const int n = l.dim();
  std::vector<Complex> row(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) row[static_cast<std::size_t>(k)] = l(1, k);

  FlowField field;
  field.g_coeffs = PowerSeries(std::move(row), chart.x_star());
  field.chart = chart;
  field.lambda = chart.lambda;

  // G = Log λ · u / u', since (u^{-1})'(u(x)) = 1 / u'(x).
  const int m = std::min(n, chart.u.order()) - 1;
  const PowerSeries u = chart.u.resized(m);
  const PowerSeries reference = chart.log_lambda * divide(u, chart.u.resized(m + 1).derivative());
  for (int k = 0; k < m; ++k) {
    const double dev = std::abs(field.g_coeffs[k] - reference[k]) / std::max(1.0, std::abs(reference[k]));
    if (dev > tol) {
      std::ostringstream msg;
      msg << "build_field: coefficient " << k << " of row 1 of ln M is " << field.g_coeffs[k]
          << " but Log(lambda) u/u' gives " << reference[k] << " (relative deviation " << dev << ")";
      throw Error(ErrorCode::BranchMismatch, msg.str());
    }
  }
  return field;
}

Complex evaluate_field(const FlowField& field, Complex x) {
  const double distance = std::abs(x - field.x_star());
  if (distance > field.r_eval()) {
    std::ostringstream msg;
    msg << "field: point " << x << " lies " << distance << " from x*, beyond radius " << field.r_eval();
    throw OutOfChart(msg.str());
  }
  return field.g_coeffs.evaluate(x);
}

Trajectory integrate_flow(const FlowField& field, Complex x0, double t_end, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "integrate_flow: dt must be positive");
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t_end) / dt - 1e-9)));
  const double h = t_end / steps;

  Trajectory path;
  path.reserve(static_cast<std::size_t>(steps) + 1);
  path.push_back({0.0, x0});

  auto rhs = [&](Complex x, double t) {
    if (std::abs(x - field.x_star()) > field.r_eval()) {
      std::ostringstream msg;
      msg << "integrate_flow: state " << x << " left the chart radius " << field.r_eval() << " at t = " << t;
      throw ChartEscape(msg.str(), t, path);
    }
    return field.g_coeffs.evaluate(x);
  };

  Complex x = x0;
  for (int i = 0; i < steps; ++i) {
    const double t = i * h;
    const Complex k1 = rhs(x, t);
    const Complex k2 = rhs(x + 0.5 * h * k1, t);
    const Complex k3 = rhs(x + 0.5 * h * k2, t);
    const Complex k4 = rhs(x + h * k3, t);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    path.push_back({i + 1 == steps ? t_end : (i + 1) * h, x});
  }
  if (std::abs(x - field.x_star()) > field.r_eval()) {
    std::ostringstream msg;
    msg << "integrate_flow: endpoint " << x << " left the chart radius " << field.r_eval();
    path.pop_back();
    throw ChartEscape(msg.str(), path.back().t, path);
  }
  return path;
}

double validity_window(double x) {
  if (!(x > 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << "validity_window: x = " << x << " is outside (0, 1]";
    throw Error(ErrorCode::DomainError, msg.str());
  }
  return std::log(std::numbers::pi / std::acos(1.0 - 2.0 * x)) / std::numbers::ln2;
}

LyapunovEstimate lyapunov_logistic(int n, double x0) {
  if (n < 1000) throw Error(ErrorCode::InvalidArgument, "lyapunov: need at least 1000 iterates");
  if (!(x0 > 0.0 && x0 < 1.0)) {
    std::ostringstream msg;
    msg << "lyapunov: x0 = " << x0 << " is outside (0, 1)";
    throw Error(ErrorCode::DomainError, msg.str());
  }
  if (x0 == 0.75) throw Error(ErrorCode::DomainError, "lyapunov: x0 is the fixed point 3/4");

  LyapunovEstimate out;
  out.n = n;
  out.x0 = x0;
  double x = x0;
  double sum = 0.0;
  for (int m = 0; m < n; ++m) {
    if (x == 0.5) {
      x += 1e-12;
      out.perturbed = true;
    }
    sum += std::log(std::abs(4.0 - 8.0 * x));
    x = 4.0 * x * (1.0 - x);
    if (x == 0.0 || x == 0.75) {
      std::ostringstream msg;
      msg << "lyapunov: orbit of " << x0 << " reached the fixed point " << x << " after " << m + 1 << " steps";
      throw Error(ErrorCode::DomainError, msg.str());
    }
  }
  out.sigma_hat = sum / n;
  return out;
}

}  // namespace carleman
