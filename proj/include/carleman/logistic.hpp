#pragma once

#include "carleman/errors.hpp"

// Exact solutions of the logistic map x -> mu x (1 - x) for mu = 4 and mu = 2.
// They are independent of the Carleman machinery and serve as reference values.
namespace carleman::logistic {

inline constexpr double kLn2 = 0.6931471805599453;

/// mu = 4, fixed point 0: f^t(x) = (1 - cos(2^t arccos(1 - 2x))) / 2.
Complex iterate_mu4_origin(double t, Complex x);

/// mu = 4, fixed point 3/4:
/// f^t(x) = (1 - cos((-2)^t (arccos(1 - 2x) - 2π/3) + 2π/3)) / 2, principal (-2)^t.
Complex iterate_mu4_three_quarters(double t, Complex x);

/// mu = 2, fixed point 0: f^t(x) = (1 - (1 - 2x)^{2^t}) / 2.
Complex iterate_mu2_origin(double t, Complex x);

/// Schröder charts as closed forms (not normalized).
Complex chart_mu4_origin(Complex x);          // [arccos(1 - 2x)]^2 / 4
Complex chart_mu4_three_quarters(Complex x);  // arccos(1 - 2x) / 2 - π/3
Complex chart_mu2_origin(Complex x);          // -ln(1 - 2x) / 2

/// Principal-part vector field, mu = 4: (ln 2 / 2) sin(arccos(1 - 2x)) arccos(1 - 2x).
Complex field_mu4_origin(Complex x);
/// mu = 2: ln 2 (1 - 2x) (-ln(1 - 2x) / 2).
Complex field_mu2_origin(Complex x);

}  // namespace carleman::logistic
