#pragma once

#include <Eigen/Dense>

#include "carleman/series.hpp"

namespace carleman {

using Matrix = Eigen::MatrixXcd;

/**
 * Truncated Carleman embedding matrix: (f(x))^j = sum_k M_jk x^k, with rows
 * and columns indexed from 0.
 *
 * `base_point` fixes the coordinates the rows and columns are expressed in:
 * entries refer to powers of (x - base_point). Matrices built directly from a
 * map use base 0; shift conjugation to a fixed point x* yields base x*.
 */
struct CarlemanMatrix {
  Matrix entries;
  PowerSeries source_map;
  Complex base_point{};
  /// Set by the quadrature builder when the node count is below the exactness bound.
  bool underresolved = false;

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(entries.rows()); }
  [[nodiscard]] Complex operator()(int j, int k) const { return entries(j, k); }
};

/// Lower-triangular T = M(x - x*) and its inverse M(x + x*).
struct ShiftTransform {
  Complex x_star{};
  Matrix forward;
  Matrix inverse;

  static ShiftTransform make(Complex x_star, int dim);
  [[nodiscard]] int dim() const noexcept { return static_cast<int>(forward.rows()); }
  [[nodiscard]] bool is_identity() const noexcept { return x_star == Complex{}; }
};

/// Row j is the j-fold truncated convolution of row 1 = coefficients of f.
/// f must be expanded about 0.
CarlemanMatrix build_matrix(const PowerSeries& f, int dim);

/// Smallest node count for which the trapezoid rule reproduces the entries of a
/// polynomial map exactly: N * deg + N + 1.
int quadrature_exactness_bound(const PowerSeries& f, int dim);
/// 4 * N * deg(f).
int default_quadrature_nodes(const PowerSeries& f, int dim);

/// M_jk = (1/2π) ∫ e^{ikφ} f(e^{-iφ})^j dφ by the `nodes`-point trapezoid rule.
/// nodes <= 0 selects default_quadrature_nodes.
CarlemanMatrix build_matrix_quadrature(const PowerSeries& f, int dim, int nodes = 0);

/**
 * Conjugates M(f) to the fixed point: M(g) = T M(f) T^{-1}.
 *
 * The returned matrix is M(g) assembled from the frame's shifted map, which is
 * exactly upper triangular. The product T M(f) T^{-1} is formed at an enlarged
 * dimension where truncation does not touch the leading N x N block, and must
 * agree with M(g) entrywise to tol_tri relative to the magnitude of the terms
 * in each entry's sum; otherwise ShiftInconsistent is thrown.
 */
CarlemanMatrix shift_conjugate(const CarlemanMatrix& m, const FixedPointFrame& frame,
                               double tol_tri = 1e-10);

/// max |M(f∘g) - M(f) M(g)| over the leading `window` rows and columns
/// (window <= 0 means the whole matrix). g must vanish at 0.
double verify_semigroup(const PowerSeries& f, const PowerSeries& g, int dim, int window = 0);

/// Largest index set 0..floor(N/(power*degree)) where truncated products of
/// non-triangular Carleman matrices are trusted; returned as a size.
int leading_window(int dim, int degree, int power);

/// max |A_jk - B_jk| over the leading window.
double max_abs_deviation(const Matrix& a, const Matrix& b, int window = 0);

/// max |A_jk - B_jk| / max(1, max_k |B_jk|): absolute for rows of unit scale,
/// relative to the row magnitude of the reference otherwise.
double max_scaled_deviation(const Matrix& a, const Matrix& b, int window = 0);

}  // namespace carleman
