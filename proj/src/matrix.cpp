#include "carleman/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace carleman {

namespace {

int effective_window(const Matrix& a, int window) {
  const int n = static_cast<int>(std::min(a.rows(), a.cols()));
  return window <= 0 ? n : std::min(window, n);
}

void require_base_zero(const PowerSeries& f, const char* op) {
  if (f.base_point() != Complex{}) {
    std::ostringstream msg;
    msg << op << ": map must be expanded about 0 (got base " << f.base_point() << ")";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
}

void require_dim(int dim, const char* op) {
  if (dim < 2) throw Error(ErrorCode::InvalidArgument, std::string(op) + ": dimension must be >= 2");
}

}  // namespace

ShiftTransform ShiftTransform::make(Complex x_star, int dim) {
  ShiftTransform t;
  t.x_star = x_star;
  t.forward = Matrix::Zero(dim, dim);
  t.inverse = Matrix::Zero(dim, dim);
  std::vector<Complex> power(static_cast<std::size_t>(dim), Complex{1.0});
  for (int i = 1; i < dim; ++i) power[static_cast<std::size_t>(i)] = power[static_cast<std::size_t>(i - 1)] * x_star;
  // Pascal rows: T_jk = C(j,k) (-x*)^{j-k}, T^{-1}_jk = C(j,k) x*^{j-k}.
  for (int j = 0; j < dim; ++j) {
    double binom = 1.0;
    for (int k = j; k >= 0; --k) {
      const int gap = j - k;
      const Complex p = power[static_cast<std::size_t>(gap)];
      t.inverse(j, k) = binom * p;
      t.forward(j, k) = (gap % 2 == 0 ? binom : -binom) * p;
      binom = binom * k / (gap + 1);
    }
  }
  if (x_star == Complex{}) {
    t.forward.setIdentity();
    t.inverse.setIdentity();
  }
  return t;
}

CarlemanMatrix build_matrix(const PowerSeries& f, int dim) {
  require_dim(dim, "build_matrix");
  require_base_zero(f, "build_matrix");
  if (f.empty()) throw Error(ErrorCode::InvalidArgument, "build_matrix: empty map");

  const PowerSeries row1 = f.resized(dim);
  CarlemanMatrix m;
  m.entries = Matrix::Zero(dim, dim);
  m.source_map = f;
  m.entries(0, 0) = 1.0;
  std::vector<Complex> row(row1.coeffs().begin(), row1.coeffs().end());
  for (int j = 1; j < dim; ++j) {
    if (j > 1) row = convolve(row, row1.coeffs(), dim);
    for (int k = 0; k < dim; ++k) m.entries(j, k) = row[static_cast<std::size_t>(k)];
  }
  return m;
}

int quadrature_exactness_bound(const PowerSeries& f, int dim) {
  const int deg = std::max(f.degree(), 1);
  return dim * deg + dim + 1;
}

int default_quadrature_nodes(const PowerSeries& f, int dim) {
  return 4 * dim * std::max(f.degree(), 1);
}

CarlemanMatrix build_matrix_quadrature(const PowerSeries& f, int dim, int nodes) {
  require_dim(dim, "build_matrix_quadrature");
  require_base_zero(f, "build_matrix_quadrature");
  if (f.empty()) throw Error(ErrorCode::InvalidArgument, "build_matrix_quadrature: empty map");
  const int q = nodes > 0 ? nodes : default_quadrature_nodes(f, dim);

  // Angles reduced mod q before scaling keep e^{ikφ} exact to rounding for every k.
  auto unit = [q](long long numerator) {
    const long long r = ((numerator % q) + q) % q;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q));
  };

  std::vector<Complex> value(static_cast<std::size_t>(q));
  std::vector<Complex> power(static_cast<std::size_t>(q), Complex{1.0});
  for (int n = 0; n < q; ++n) value[static_cast<std::size_t>(n)] = f.evaluate(unit(-n));

  CarlemanMatrix m;
  m.entries = Matrix::Zero(dim, dim);
  m.source_map = f;
  m.underresolved = q < quadrature_exactness_bound(f, dim);
  for (int j = 0; j < dim; ++j) {
    if (j > 0) {
      for (int n = 0; n < q; ++n) power[static_cast<std::size_t>(n)] *= value[static_cast<std::size_t>(n)];
    }
    for (int k = 0; k < dim; ++k) {
      Complex sum{};
      for (int n = 0; n < q; ++n) {
        sum += unit(static_cast<long long>(k) * n) * power[static_cast<std::size_t>(n)];
      }
      m.entries(j, k) = sum / static_cast<double>(q);
    }
  }
  return m;
}

CarlemanMatrix shift_conjugate(const CarlemanMatrix& m, const FixedPointFrame& frame, double tol_tri) {
  if (m.source_map.empty()) {
    throw Error(ErrorCode::InvalidArgument, "shift_conjugate: matrix carries no source map");
  }
  if (m.base_point != Complex{}) {
    throw Error(ErrorCode::InvalidArgument, "shift_conjugate: matrix is not in original coordinates");
  }
  const int n = m.dim();
  const int deg = std::max(m.source_map.degree(), 1);

  // Row j of T M(f) reaches column deg*j, so deg*(N-1)+1 columns make the
  // leading block of the triple product exact. Truncated maps of high degree are
  // capped; rows past the exact region are then not compared.
  const int full = deg * (n - 1) + 1;
  const int ext = std::min(full, 8 * n);
  const int exact_rows = std::min(n, ext >= full ? n : (ext - 1) / deg + 1);

  const CarlemanMatrix big = build_matrix(m.source_map, ext);
  const ShiftTransform shift = ShiftTransform::make(frame.x_star, ext);
  const Matrix product = shift.forward * big.entries * shift.inverse;
  const Eigen::MatrixXd magnitude =
      shift.forward.cwiseAbs() * big.entries.cwiseAbs() * shift.inverse.cwiseAbs();

  CarlemanMatrix mg = build_matrix(frame.shifted_map, n);
  mg.base_point = frame.x_star;

  double worst = 0.0;
  int worst_j = 0;
  int worst_k = 0;
  for (int j = 0; j < exact_rows; ++j) {
    for (int k = 0; k < n; ++k) {
      const double scale = std::max({1.0, magnitude(j, k), std::abs(mg.entries(j, k))});
      const double dev = std::abs(product(j, k) - mg.entries(j, k)) / scale;
      if (dev > worst) {
        worst = dev;
        worst_j = j;
        worst_k = k;
      }
    }
  }
  if (!(worst <= tol_tri)) {
    std::ostringstream msg;
    msg << "shift_conjugate: T M T^-1 disagrees with M(g) at (" << worst_j << "," << worst_k
        << "), scaled deviation " << worst << " > tol_tri " << tol_tri;
    throw Error(ErrorCode::ShiftInconsistent, msg.str());
  }
  return mg;
}

double verify_semigroup(const PowerSeries& f, const PowerSeries& g, int dim, int window) {
  const PowerSeries fg = compose(f.resized(dim), g.resized(dim));
  const CarlemanMatrix composed = build_matrix(fg, dim);
  const Matrix product = build_matrix(f, dim).entries * build_matrix(g, dim).entries;
  return max_abs_deviation(composed.entries, product, window);
}

int leading_window(int dim, int degree, int power) {
  const int span = std::max(1, degree) * std::max(1, power);
  return std::min(dim, dim / span + 1);
}

double max_abs_deviation(const Matrix& a, const Matrix& b, int window) {
  const int w = effective_window(a, window);
  return (a.topLeftCorner(w, w) - b.topLeftCorner(w, w)).cwiseAbs().maxCoeff();
}

double max_scaled_deviation(const Matrix& a, const Matrix& b, int window) {
  const int w = effective_window(a, window);
  double worst = 0.0;
  for (int j = 0; j < w; ++j) {
    const double scale = std::max(1.0, b.row(j).head(w).cwiseAbs().maxCoeff());
    worst = std::max(worst, (a.row(j).head(w) - b.row(j).head(w)).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

}  // namespace carleman
