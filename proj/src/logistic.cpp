#include "carleman/logistic.hpp"

#include <cmath>
#include <numbers>

namespace carleman::logistic {

namespace {
constexpr double kPi = std::numbers::pi;
}

Complex iterate_mu4_origin(double t, Complex x) {
  return 0.5 * (1.0 - std::cos(std::exp2(t) * std::acos(1.0 - 2.0 * x)));
}

Complex iterate_mu4_three_quarters(double t, Complex x) {
  const Complex power = std::exp(t * std::log(Complex{-2.0, 0.0}));
  const double third = 2.0 * kPi / 3.0;
  return 0.5 * (1.0 - std::cos(power * (std::acos(1.0 - 2.0 * x) - third) + third));
}

Complex iterate_mu2_origin(double t, Complex x) {
  return 0.5 * (1.0 - std::pow(1.0 - 2.0 * x, std::exp2(t)));
}

Complex chart_mu4_origin(Complex x) {
  const Complex a = std::acos(1.0 - 2.0 * x);
  return 0.25 * a * a;
}

Complex chart_mu4_three_quarters(Complex x) { return 0.5 * std::acos(1.0 - 2.0 * x) - kPi / 3.0; }

Complex chart_mu2_origin(Complex x) { return -0.5 * std::log(1.0 - 2.0 * x); }

Complex field_mu4_origin(Complex x) {
  const Complex a = std::acos(1.0 - 2.0 * x);
  return 0.5 * kLn2 * std::sin(a) * a;
}

Complex field_mu2_origin(Complex x) { return kLn2 * (1.0 - 2.0 * x) * chart_mu2_origin(x); }

}  // namespace carleman::logistic
