#pragma once

#include <span>
#include <vector>

#include "carleman/errors.hpp"

namespace carleman {

inline constexpr int kDefaultOrder = 32;

/**
 * Truncated power series about a base point b:
 *
 *     s(x) = sum_{k < order} c_k (x - b)^k
 *
 * Coefficients are complex even for real maps, because a negative multiplier
 * makes non-integer iterates complex.
 */
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(std::vector<Complex> coeffs, Complex base_point = {});

  /// The identity map expanded about `base_point`: coefficients (b, 1, 0, ...).
  static PowerSeries identity(int order, Complex base_point = {});
  static PowerSeries constant(Complex value, int order, Complex base_point = {});
  /// mu * x * (1 - x) about 0.
  static PowerSeries logistic(double mu, int order);

  [[nodiscard]] int order() const noexcept { return static_cast<int>(coeffs_.size()); }
  [[nodiscard]] bool empty() const noexcept { return coeffs_.empty(); }
  [[nodiscard]] Complex base_point() const noexcept { return base_; }
  [[nodiscard]] std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  /// Coefficient k, or zero beyond the truncation order.
  [[nodiscard]] Complex operator[](int k) const noexcept {
    return k >= 0 && k < order() ? coeffs_[static_cast<std::size_t>(k)] : Complex{};
  }

  /// Index of the highest nonzero coefficient, -1 for the zero series.
  [[nodiscard]] int degree() const noexcept;

  [[nodiscard]] Complex evaluate(Complex x) const noexcept;
  [[nodiscard]] Complex derivative_at(Complex x) const noexcept;
  [[nodiscard]] PowerSeries derivative() const;

  /// Truncate, or zero-pad, to `order` coefficients.
  [[nodiscard]] PowerSeries resized(int order) const;
  [[nodiscard]] PowerSeries with_base(Complex base_point) const;

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

 private:
  std::vector<Complex> coeffs_;
  Complex base_{};
};

/// Binary operations require equal base points and truncate to the shorter operand.
PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator*(Complex scale, const PowerSeries& a);
PowerSeries multiply(const PowerSeries& a, const PowerSeries& b);
/// a / b; b must have a nonzero constant term.
PowerSeries divide(const PowerSeries& a, const PowerSeries& b);

/// Truncated Cauchy product of two coefficient sequences, first `n` terms.
std::vector<Complex> convolve(std::span<const Complex> a, std::span<const Complex> b, int n);

struct Composition {
  PowerSeries series;
  /// False when the inner constant term is displaced from the outer base point:
  /// the truncated result then only approximates the infinite-series composition.
  bool exact = true;
};

/**
 * outer(inner(x)), expanded about inner's base point and truncated to the
 * shorter order. inner's constant term is measured against outer's base point.
 */
Composition compose_checked(const PowerSeries& outer, const PowerSeries& inner);
PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner);

/**
 * Compositional inverse r with s(r(y)) = y up to the truncation order.
 *
 * s must vanish at its base point b and have a nonzero linear coefficient; the
 * result is expanded about 0 with constant term b. Computed by Newton iteration
 * on series, doubling the number of correct coefficients per step.
 */
PowerSeries revert(const PowerSeries& s);

/// Map shifted to its fixed point: g(y) = f(y + x*) - x*, so g(0) = 0.
struct FixedPointFrame {
  Complex x_star{};
  Complex multiplier{};
  PowerSeries shifted_map;
  PowerSeries map;
};

struct FixedPointOptions {
  double tol_fix = 1e-12;
  int max_iter = 64;
  /// Relative tolerance for |λ| ≈ 0 and λ^n ≈ 1.
  double tol_res = 1e-8;
  /// Largest n tested for λ^n ≈ 1; 0 means kDefaultOrder.
  int resonance_order = 0;
};

/// Newton iteration on f(x) - x from `guess`.
FixedPointFrame find_fixed_point(const PowerSeries& f, Complex guess,
                                 const FixedPointOptions& options = {});

/// Frame at a known fixed point, validated with the same checks as find_fixed_point.
FixedPointFrame make_frame(const PowerSeries& f, Complex x_star,
                           const FixedPointOptions& options = {});

/// All roots of f(x) - x for a map with finitely many coefficients.
std::vector<Complex> fixed_points(const PowerSeries& f);

}  // namespace carleman
