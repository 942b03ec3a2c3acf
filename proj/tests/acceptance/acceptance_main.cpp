// Runs the logistic acceptance suite and prints one line per criterion.
// The closed forms it measures against are first checked on their own terms.

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "carleman/io.hpp"
#include "carleman/logistic.hpp"
#include "carleman/verification.hpp"

namespace {

using carleman::Complex;
namespace lg = carleman::logistic;

int failures = 0;

void report(const char* tag, const char* name, double measured, double tolerance, bool extra = true) {
  const bool ok = measured <= tolerance && extra;
  if (!ok) ++failures;
  std::printf("%s %s %s measured=%s tolerance=%s\n", ok ? "PASS" : "FAIL", tag, name,
              carleman::io::format_double(measured).c_str(), carleman::io::format_double(tolerance).c_str());
}

double cauchy_coefficient(Complex (*fn)(Complex), int k, double radius) {
  constexpr int nodes = 512;
  Complex sum{};
  for (int q = 0; q < nodes; ++q) {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * q / nodes);
    sum += fn(radius * w) * std::pow(w, -k);
  }
  return (sum / static_cast<double>(nodes)).real() / std::pow(radius, k);
}

void check_oracles() {
  double worst = 0.0;
  for (const double x : {0.02, 0.3, 0.7}) {
    const double fx = 4.0 * x * (1.0 - x);
    worst = std::max(worst, std::abs(lg::iterate_mu4_origin(1.0, x) - fx));
    worst = std::max(worst, std::abs(lg::iterate_mu4_three_quarters(1.0, x) - fx));
    worst = std::max(worst, std::abs(lg::iterate_mu2_origin(1.0, x) - 2.0 * x * (1.0 - x)));
  }
  report("[oracle]", "closed forms reproduce the map at t=1", worst, 1e-13);

  worst = 0.0;
  for (const double x : {0.01, 0.05, 0.1}) {
    const Complex half = lg::iterate_mu4_origin(0.5, x);
    worst = std::max(worst, std::abs(lg::iterate_mu4_origin(0.5, half) - lg::iterate_mu4_origin(1.0, x)));
    const Complex half2 = lg::iterate_mu2_origin(0.5, x);
    worst = std::max(worst, std::abs(lg::iterate_mu2_origin(0.5, half2) - lg::iterate_mu2_origin(1.0, x)));
  }
  report("[oracle]", "closed forms compose at half steps", worst, 1e-13);

  // Taylor coefficients of arcsin(sqrt x)^2 from a Cauchy integral on |x| = 1/2.
  worst = 0.0;
  double c = 1.0;  // 4^k / (2 k^2 C(2k,k)), built by its term ratio
  for (int k = 1; k <= 8; ++k) {
    c = k == 1 ? 1.0 : c * 2.0 * (k - 1) * (k - 1) / (static_cast<double>(k) * (2 * k - 1));
    const double numeric = cauchy_coefficient(lg::chart_mu4_origin, k, 0.5);
    worst = std::max(worst, std::abs(numeric - c) / c);
  }
  report("[oracle]", "arcsin^2 series matches its Cauchy coefficients", worst, 1e-12);

  // Field closed form against ln(lambda) u / u' with a central-difference u'.
  worst = 0.0;
  const double h = 1e-6;
  for (const double x : {0.01, 0.05, 0.1, 0.5}) {
    const Complex du = (lg::chart_mu4_origin(x + h) - lg::chart_mu4_origin(x - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(lg::field_mu4_origin(x) - 2.0 * lg::kLn2 * lg::chart_mu4_origin(x) / du));
    const Complex du2 = (lg::chart_mu2_origin(x * 0.5 + h) - lg::chart_mu2_origin(x * 0.5 - h)) / (2.0 * h);
    worst = std::max(worst,
                     std::abs(lg::field_mu2_origin(x * 0.5) - lg::kLn2 * lg::chart_mu2_origin(x * 0.5) / du2));
  }
  report("[oracle]", "field closed forms equal ln(lambda) u/u'", worst, 1e-8);

  report("[oracle]", "ln 2 constant", std::abs(lg::kLn2 - std::numbers::ln2), 0.0);
}

}  // namespace

int main() {
  check_oracles();
  const carleman::SuiteReport suite = carleman::run_acceptance_suite();
  for (const auto& r : suite.results) {
    const std::string tag = "[" + std::to_string(r.id) + "]";
    report(tag.c_str(), r.name.c_str(), r.measured, r.tolerance, r.passed);
    if (!r.detail.empty()) std::printf("     %s\n", r.detail.c_str());
  }
  std::printf("%s: %d failing\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
