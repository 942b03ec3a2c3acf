#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "carleman/flow.hpp"

namespace carleman::io {

/// Shortest representation that reads back to the same double.
std::string format_double(double v);

/// "re+imi" / "re-imi"; the sign of the imaginary part is always written.
std::string format_complex(Complex z);

/// Coefficient list form: real values print without an imaginary part.
std::string format_coefficient(Complex z);

/// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i" and scientific notation.
Complex parse_complex(std::string_view text);

/// Comma-separated complex coefficients, lowest degree first.
std::vector<Complex> parse_coefficients(std::string_view text);

/// Comma-separated real values.
std::vector<double> parse_reals(std::string_view text);

/// Named preset "logistic:<mu>" expanded to coefficients (0, mu, -mu).
PowerSeries parse_preset(std::string_view spec);

std::string format_coefficient_list(const PowerSeries& f);

/// Header `carleman dim=N map=<coeff list>` followed by N rows of "re+imi" entries.
void write_matrix(std::ostream& out, const CarlemanMatrix& m);

struct MatrixDump {
  int dim = 0;
  std::vector<Complex> map;
  Matrix entries;
};

MatrixDump read_matrix(std::istream& in);

/// Three blocks with headers `V dim=N lambda=<λ>`, `V_inv dim=N`, `diag dim=N`.
void write_factorization(std::ostream& out, const SpectralFactorization& s);

struct GridRow {
  double t = 0.0;
  double x = 0.0;
  Complex value{};
  std::string route;
  bool converged = true;
  std::optional<Complex> reference;
};

/// Columns t,x,re,im,route,converged and, when every row has one, ref_re,ref_im.
void write_iterate_grid(std::ostream& out, const std::vector<GridRow>& rows);

/// Columns t,re,im.
void write_trajectory(std::ostream& out, const Trajectory& path);

// JSON forms of the same outputs; complex numbers are [re, im] pairs.
std::string matrix_json(const CarlemanMatrix& m);
std::string iterate_grid_json(const std::vector<GridRow>& rows);
std::string trajectory_json(const Trajectory& path);

/// {"n", "x0", "sigma_hat", "reference"} as a single JSON object.
std::string lyapunov_json(const LyapunovEstimate& estimate);

}  // namespace carleman::io
