#include "carleman/series.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace carleman {

namespace {

void require_same_base(const PowerSeries& a, const PowerSeries& b, const char* op) {
  if (a.base_point() != b.base_point()) {
    std::ostringstream msg;
    msg << op << ": operands expanded about different base points " << a.base_point() << " and "
        << b.base_point();
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

// Exact zeros in the imaginary part print and branch as +0.
Complex clean_signed_zero(Complex z) {
  return {z.real() == 0.0 ? 0.0 : z.real(), z.imag() == 0.0 ? 0.0 : z.imag()};
}

}  // namespace

PowerSeries::PowerSeries(std::vector<Complex> coeffs, Complex base_point)
    : coeffs_(std::move(coeffs)), base_(base_point) {}

PowerSeries PowerSeries::identity(int order, Complex base_point) {
  std::vector<Complex> c(static_cast<std::size_t>(std::max(order, 2)));
  c[0] = base_point;
  c[1] = 1.0;
  return PowerSeries(std::move(c), base_point);
}

PowerSeries PowerSeries::constant(Complex value, int order, Complex base_point) {
  std::vector<Complex> c(static_cast<std::size_t>(std::max(order, 1)));
  c[0] = value;
  return PowerSeries(std::move(c), base_point);
}

PowerSeries PowerSeries::logistic(double mu, int order) {
  std::vector<Complex> c(static_cast<std::size_t>(std::max(order, 3)));
  c[1] = mu;
  c[2] = -mu;
  return PowerSeries(std::move(c));
}

int PowerSeries::degree() const noexcept {
  for (int k = order() - 1; k >= 0; --k) {
    if (coeffs_[static_cast<std::size_t>(k)] != Complex{}) return k;
  }
  return -1;
}

Complex PowerSeries::evaluate(Complex x) const noexcept {
  const Complex y = x - base_;
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
  return acc;
}

Complex PowerSeries::derivative_at(Complex x) const noexcept {
  const Complex y = x - base_;
  Complex acc{};
  for (int k = order() - 1; k >= 1; --k) {
    acc = acc * y + static_cast<double>(k) * coeffs_[static_cast<std::size_t>(k)];
  }
  return acc;
}

PowerSeries PowerSeries::derivative() const {
  if (order() <= 1) return PowerSeries({Complex{}}, base_);
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return PowerSeries(std::move(d), base_);
}

PowerSeries PowerSeries::resized(int order) const {
  std::vector<Complex> c = coeffs_;
  c.resize(static_cast<std::size_t>(std::max(order, 0)));
  return PowerSeries(std::move(c), base_);
}

PowerSeries PowerSeries::with_base(Complex base_point) const { return PowerSeries(coeffs_, base_point); }

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  require_same_base(a, b, "add");
  const int n = std::min(a.order(), b.order());
  std::vector<Complex> c(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) c[static_cast<std::size_t>(k)] = a[k] + b[k];
  return PowerSeries(std::move(c), a.base_point());
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
  require_same_base(a, b, "subtract");
  const int n = std::min(a.order(), b.order());
  std::vector<Complex> c(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) c[static_cast<std::size_t>(k)] = a[k] - b[k];
  return PowerSeries(std::move(c), a.base_point());
}

PowerSeries operator*(Complex scale, const PowerSeries& a) {
  std::vector<Complex> c(a.coeffs().begin(), a.coeffs().end());
  for (auto& v : c) v *= scale;
  return PowerSeries(std::move(c), a.base_point());
}

std::vector<Complex> convolve(std::span<const Complex> a, std::span<const Complex> b, int n) {
  std::vector<Complex> out(static_cast<std::size_t>(std::max(n, 0)));
  const int na = std::min<int>(static_cast<int>(a.size()), n);
  const int nb = static_cast<int>(b.size());
  for (int i = 0; i < na; ++i) {
    const Complex ai = a[static_cast<std::size_t>(i)];
    if (ai == Complex{}) continue;
    const int top = std::min(nb, n - i);
    for (int j = 0; j < top; ++j) out[static_cast<std::size_t>(i + j)] += ai * b[static_cast<std::size_t>(j)];
  }
  return out;
}

PowerSeries multiply(const PowerSeries& a, const PowerSeries& b) {
  require_same_base(a, b, "multiply");
  const int n = std::min(a.order(), b.order());
  return PowerSeries(convolve(a.coeffs(), b.coeffs(), n), a.base_point());
}

PowerSeries divide(const PowerSeries& a, const PowerSeries& b) {
  require_same_base(a, b, "divide");
  if (b[0] == Complex{}) {
    throw Error(ErrorCode::InvalidArgument, "divide: divisor has zero constant term");
  }
  const int n = std::min(a.order(), b.order());
  std::vector<Complex> q(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Complex acc = a[k];
    for (int i = 1; i <= k; ++i) acc -= b[i] * q[static_cast<std::size_t>(k - i)];
    q[static_cast<std::size_t>(k)] = acc / b[0];
  }
  return PowerSeries(std::move(q), a.base_point());
}

Composition compose_checked(const PowerSeries& outer, const PowerSeries& inner) {
  if (outer.empty() || inner.empty()) {
    throw Error(ErrorCode::OrderMismatch, "compose: empty operand");
  }
  const int n = std::min(outer.order(), inner.order());
  // Inner values measured from the outer expansion point.
  std::vector<Complex> w(inner.coeffs().begin(), inner.coeffs().begin() + n);
  w[0] -= outer.base_point();

  // Horner in the series ring.
  std::vector<Complex> acc(static_cast<std::size_t>(n));
  acc[0] = outer[n - 1];
  for (int k = n - 2; k >= 0; --k) {
    acc = convolve(acc, w, n);
    acc[0] += outer[k];
  }
  return {PowerSeries(std::move(acc), inner.base_point()), w[0] == Complex{}};
}

PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner) {
  return compose_checked(outer, inner).series;
}

PowerSeries revert(const PowerSeries& s) {
  const int n = s.order();
  if (n < 2) throw Error(ErrorCode::OrderMismatch, "revert: series needs at least two coefficients");
  const Complex a1 = s[1];
  if (std::abs(a1) == 0.0) {
    throw Error(ErrorCode::ReversionImpossible, "revert: zero linear coefficient");
  }
  if (std::abs(s[0]) > 1e-12 * std::max(1.0, std::abs(a1))) {
    throw Error(ErrorCode::InvalidArgument, "revert: series does not vanish at its base point");
  }

  std::vector<Complex> a(s.coeffs().begin(), s.coeffs().end());
  a[0] = 0.0;
  const PowerSeries forward(std::move(a));

  std::vector<Complex> r0(static_cast<std::size_t>(n));
  r0[1] = 1.0 / a1;
  PowerSeries r(std::move(r0));

  // Newton step r <- r - (s(r) - y) / s'(r); each pass doubles the correct prefix.
  int prec = 2;
  bool final_pass = false;
  while (true) {
    prec = std::min(2 * prec, n);
    const PowerSeries fp = forward.resized(prec);
    const PowerSeries dfp = forward.resized(prec + 1).derivative();
    const PowerSeries rp = r.resized(prec);
    const PowerSeries residual = compose(fp, rp) - PowerSeries::identity(prec);
    const PowerSeries slope = compose(dfp, rp);
    r = (rp - divide(residual, slope)).resized(n);
    if (final_pass) break;
    if (prec == n) final_pass = true;
  }

  std::vector<Complex> out(r.coeffs().begin(), r.coeffs().end());
  out[0] = s.base_point();
  return PowerSeries(std::move(out));
}

std::vector<Complex> fixed_points(const PowerSeries& f) {
  std::vector<Complex> p(f.coeffs().begin(), f.coeffs().end());
  p.resize(std::max<std::size_t>(p.size(), 2));
  // f(x) - x in powers of (x - b): the identity contributes b + (x - b).
  p[0] -= f.base_point();
  p[1] -= 1.0;
  int d = static_cast<int>(p.size()) - 1;
  while (d > 0 && p[static_cast<std::size_t>(d)] == Complex{}) --d;
  if (d <= 0) return {};

  std::vector<Complex> roots;
  if (d == 1) {
    roots.push_back(-p[0] / p[1]);
  } else {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -p[static_cast<std::size_t>(i)] / p[static_cast<std::size_t>(d)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    for (int i = 0; i < d; ++i) roots.push_back(solver.eigenvalues()(i));
  }
  for (auto& r : roots) r = clean_signed_zero(r + f.base_point());
  return roots;
}

FixedPointFrame make_frame(const PowerSeries& f, Complex x_star, const FixedPointOptions& options) {
  if (f.empty()) throw Error(ErrorCode::InvalidArgument, "fixed point: empty map");
  const double residual = std::abs(f.evaluate(x_star) - x_star);
  if (!(residual <= options.tol_fix)) {
    std::ostringstream msg;
    msg << "fixed point: |f(x*) - x*| = " << residual << " exceeds tol_fix at x* = " << x_star;
    throw NonConvergence(msg.str(), x_star);
  }

  const Complex lambda = clean_signed_zero(f.derivative_at(x_star));
  if (std::abs(lambda) < options.tol_res) {
    std::ostringstream msg;
    msg << "multiplier " << lambda << " is indistinguishable from 0 (superattracting)";
    throw Error(ErrorCode::RestrictiveConditionViolated, msg.str());
  }
  const int max_n = options.resonance_order > 0 ? options.resonance_order : kDefaultOrder;
  Complex power = 1.0;
  for (int n = 1; n <= max_n; ++n) {
    power *= lambda;
    if (std::abs(power - 1.0) < options.tol_res * std::max(1.0, std::abs(power))) {
      std::ostringstream msg;
      msg << "multiplier " << lambda << " is a root of unity of order " << n;
      throw Error(ErrorCode::RestrictiveConditionViolated, msg.str());
    }
  }

  // g(y) = h(f(h^{-1}(y))) with h(x) = x - x*.
  const PowerSeries shift_back = PowerSeries({x_star, 1.0}).resized(f.order());
  PowerSeries moved = compose(f, shift_back);
  std::vector<Complex> g(moved.coeffs().begin(), moved.coeffs().end());
  // g(0) equals the fixed-point residual, already bounded by tol_fix; store it as
  // exactly zero so M(g) is exactly upper triangular.
  g[0] = 0.0;

  FixedPointFrame frame;
  frame.x_star = clean_signed_zero(x_star);
  frame.multiplier = lambda;
  frame.shifted_map = PowerSeries(std::move(g));
  frame.map = f;
  return frame;
}

FixedPointFrame find_fixed_point(const PowerSeries& f, Complex guess, const FixedPointOptions& options) {
  if (f.empty()) throw Error(ErrorCode::InvalidArgument, "fixed point: empty map");
  Complex x = guess;
  for (int it = 0; it < options.max_iter; ++it) {
    const Complex residual = f.evaluate(x) - x;
    const Complex slope = f.derivative_at(x) - 1.0;
    if (residual == Complex{}) break;
    if (slope == Complex{}) {
      throw NonConvergence("fixed point: Newton slope f'(x) - 1 vanished", x);
    }
    const Complex step = residual / slope;
    x -= step;
    if (std::abs(step) <= 4e-16 * std::max(1.0, std::abs(x)) &&
        std::abs(f.evaluate(x) - x) <= options.tol_fix) {
      break;
    }
  }
  if (!(std::abs(f.evaluate(x) - x) <= options.tol_fix)) {
    std::ostringstream msg;
    msg << "fixed point: Newton did not converge from " << guess << " in " << options.max_iter
        << " iterations (last iterate " << x << ")";
    throw NonConvergence(msg.str(), x);
  }
  return make_frame(f, x, options);
}

}  // namespace carleman
