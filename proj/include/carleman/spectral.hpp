#pragma once

#include <vector>

#include "carleman/matrix.hpp"

namespace carleman {

/// Which coordinates a derived matrix is returned in.
enum class Coordinates {
  /// Powers of x: conjugated back through the shift transform.
  original,
  /// Powers of (x - x*): the triangular frame of M(g).
  fixed_point,
};

/**
 * M(g) = V^{-1} Λ V with V, V^{-1} upper unitriangular and Λ = diag(λ^j).
 *
 * Row 1 of V is the left eigenvector ψ of M(g) for λ; V itself is the Carleman
 * matrix of the linearizing chart, V^{-1} the matrix of its inverse. Non-integer
 * powers use the principal logarithm, arg λ in (-π, π].
 */
struct SpectralFactorization {
  Complex lambda{};
  Complex log_lambda{};
  Matrix v;
  Matrix v_inv;
  ShiftTransform shift;

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(v.rows()); }
  [[nodiscard]] Complex x_star() const noexcept { return shift.x_star; }
  /// λ^j by repeated multiplication.
  [[nodiscard]] std::vector<Complex> eigenvalues() const;
  /// exp(j t Log λ) for j = 0..N-1.
  [[nodiscard]] std::vector<Complex> eigenvalue_powers(double t) const;
};

struct SpectralOptions {
  /// |λ^j - λ^k| / max(|λ^j|, |λ^k|) below this is a resonance.
  double tol_res = 1e-8;
  double tol_tri = 1e-10;
};

/**
 * Builds V column by column (k increasing, j increasing) from
 *
 *     V_jk = (λ^j - λ^k)^{-1} sum_{l=j}^{k-1} V_jl M_lk,
 *
 * and V^{-1} row by row (j decreasing, k increasing) from
 *
 *     V^{-1}_jk = (λ^k - λ^j)^{-1} sum_{l=j+1}^{k} M_jl V^{-1}_lk,
 *
 * both of which follow from V M = Λ V and M V^{-1} = V^{-1} Λ.
 */
SpectralFactorization diagonalize(const CarlemanMatrix& mg, const FixedPointFrame& frame,
                                  const SpectralOptions& options = {});

/// M^t = T^{-1} V^{-1} Λ^t V T, returned in the coordinates of `m` (M(f) or M(g)).
/// Undoing a shift x* != 0 is ill-conditioned: the error grows like (1 + |x*|)^N,
/// so beyond N ~ 12 only the fixed-point coordinates are trustworthy.
CarlemanMatrix fractional_power(const SpectralFactorization& s, const CarlemanMatrix& m, double t);

/// ln M = T^{-1} V^{-1} (ln Λ) V T with (ln Λ)_jj = j Log λ.
CarlemanMatrix matrix_log(const SpectralFactorization& s,
                          Coordinates coordinates = Coordinates::original);

/// ψ = row 1 of V; satisfies ψ M(g) = λ ψ.
std::vector<Complex> left_eigenrow(const SpectralFactorization& s);

}  // namespace carleman
