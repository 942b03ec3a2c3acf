#include "carleman/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace carleman {

namespace {

std::vector<Complex> powers(Complex lambda, int n) {
  std::vector<Complex> p(static_cast<std::size_t>(n), Complex{1.0});
  for (int j = 1; j < n; ++j) p[static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(j - 1)] * lambda;
  return p;
}

Matrix conjugate_diagonal(const SpectralFactorization& s, const std::vector<Complex>& diagonal) {
  const Eigen::Map<const Eigen::VectorXcd> d(diagonal.data(), static_cast<Eigen::Index>(diagonal.size()));
  return s.v_inv * d.asDiagonal() * s.v;
}

CarlemanMatrix in_coordinates(const SpectralFactorization& s, Matrix core, Coordinates coordinates) {
  CarlemanMatrix out;
  if (coordinates == Coordinates::fixed_point || s.shift.is_identity()) {
    out.entries = std::move(core);
    out.base_point = coordinates == Coordinates::fixed_point ? s.x_star() : Complex{};
  } else {
    out.entries = s.shift.inverse * core * s.shift.forward;
    out.base_point = Complex{};
  }
  return out;
}

}  // namespace

std::vector<Complex> SpectralFactorization::eigenvalues() const { return powers(lambda, dim()); }

std::vector<Complex> SpectralFactorization::eigenvalue_powers(double t) const {
  std::vector<Complex> p(static_cast<std::size_t>(dim()));
  for (int j = 0; j < dim(); ++j) p[static_cast<std::size_t>(j)] = std::exp(static_cast<double>(j) * t * log_lambda);
  return p;
}

SpectralFactorization diagonalize(const CarlemanMatrix& mg, const FixedPointFrame& frame,
                                  const SpectralOptions& options) {
  const int n = mg.dim();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "diagonalize: dimension must be >= 2");
  const Complex lambda = frame.multiplier;

  if (std::abs(lambda) < options.tol_res) {
    std::ostringstream msg;
    msg << "diagonalize: multiplier " << lambda << " is superattracting";
    throw Error(ErrorCode::Superattracting, msg.str());
  }
  if (std::abs(mg(1, 1) - lambda) > 1e-10 * std::max(1.0, std::abs(lambda))) {
    std::ostringstream msg;
    msg << "diagonalize: M(g)_11 = " << mg(1, 1) << " differs from the frame multiplier " << lambda;
    throw Error(ErrorCode::ShiftInconsistent, msg.str());
  }
  for (int j = 1; j < n; ++j) {
    const double scale = std::max(1.0, mg.entries.row(j).cwiseAbs().maxCoeff());
    for (int k = 0; k < j; ++k) {
      if (std::abs(mg(j, k)) > options.tol_tri * scale) {
        std::ostringstream msg;
        msg << "diagonalize: matrix is not upper triangular at (" << j << "," << k << ")";
        throw Error(ErrorCode::ShiftInconsistent, msg.str());
      }
    }
  }

  SpectralFactorization s;
  s.lambda = lambda;
  s.log_lambda = std::log(lambda);
  s.shift = ShiftTransform::make(frame.x_star, n);
  const std::vector<Complex> p = powers(lambda, n);

  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const double gap = std::abs(p[static_cast<std::size_t>(j)] - p[static_cast<std::size_t>(k)]);
      const double scale = std::max(std::abs(p[static_cast<std::size_t>(j)]), std::abs(p[static_cast<std::size_t>(k)]));
      if (gap < options.tol_res * scale) {
        std::ostringstream msg;
        msg << "diagonalize: eigenvalues lambda^" << j << " and lambda^" << k << " coincide (lambda = " << lambda
            << ")";
        throw ResonantEigenvalues(msg.str(), j, k);
      }
    }
  }

  const Matrix& m = mg.entries;
  s.v = Matrix::Identity(n, n);
  for (int k = 1; k < n; ++k) {
    for (int j = 0; j < k; ++j) {
      Complex acc{};
      for (int l = j; l < k; ++l) acc += s.v(j, l) * m(l, k);
      s.v(j, k) = acc / (p[static_cast<std::size_t>(j)] - p[static_cast<std::size_t>(k)]);
    }
  }

  s.v_inv = Matrix::Identity(n, n);
  for (int j = n - 2; j >= 0; --j) {
    for (int k = j + 1; k < n; ++k) {
      Complex acc{};
      for (int l = j + 1; l <= k; ++l) acc += m(j, l) * s.v_inv(l, k);
      s.v_inv(j, k) = acc / (p[static_cast<std::size_t>(k)] - p[static_cast<std::size_t>(j)]);
    }
  }
  return s;
}

CarlemanMatrix fractional_power(const SpectralFactorization& s, const CarlemanMatrix& m, double t) {
  if (m.dim() != s.dim()) {
    throw Error(ErrorCode::OrderMismatch, "fractional_power: matrix and factorization dimensions differ");
  }
  Coordinates coordinates;
  if (m.base_point == s.x_star()) {
    coordinates = Coordinates::fixed_point;
  } else if (m.base_point == Complex{}) {
    coordinates = Coordinates::original;
  } else {
    throw Error(ErrorCode::InvalidArgument, "fractional_power: matrix coordinates match neither frame");
  }
  if (t == 0.0) {
    CarlemanMatrix id;
    id.entries = Matrix::Identity(s.dim(), s.dim());
    id.base_point = m.base_point;
    return id;
  }
  return in_coordinates(s, conjugate_diagonal(s, s.eigenvalue_powers(t)), coordinates);
}

CarlemanMatrix matrix_log(const SpectralFactorization& s, Coordinates coordinates) {
  std::vector<Complex> d(static_cast<std::size_t>(s.dim()));
  for (int j = 0; j < s.dim(); ++j) d[static_cast<std::size_t>(j)] = static_cast<double>(j) * s.log_lambda;
  return in_coordinates(s, conjugate_diagonal(s, d), coordinates);
}

std::vector<Complex> left_eigenrow(const SpectralFactorization& s) {
  std::vector<Complex> row(static_cast<std::size_t>(s.dim()));
  for (int k = 0; k < s.dim(); ++k) row[static_cast<std::size_t>(k)] = s.v(1, k);
  return row;
}

}  // namespace carleman
