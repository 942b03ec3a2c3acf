#include <gtest/gtest.h>

#include <numbers>

#include "carleman/pipeline.hpp"
#include "support.hpp"

using namespace carleman;
using testing_support::Gen;

namespace {

Pipeline at_logistic(double mu, double guess, int dim) {
  PipelineOptions o;
  o.dim = dim;
  return build_pipeline(PowerSeries::logistic(mu, 3), guess, o);
}

CarlemanMatrix diagonal_matrix(std::vector<Complex> d) {
  CarlemanMatrix m;
  m.entries = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t j = 0; j < d.size(); ++j) m.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = d[j];
  std::vector<Complex> row1(d.size());
  row1[1] = d[1];
  m.source_map = PowerSeries(row1);
  return m;
}

// |product - expected| measured against |A| |B| (|C|), the size of the terms summed.
double relative_to_magnitudes(const Matrix& product, const Eigen::MatrixXd& scale, const Matrix& expected) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < product.rows(); ++j) {
    for (Eigen::Index k = 0; k < product.cols(); ++k) {
      worst = std::max(worst, std::abs(product(j, k) - expected(j, k)) / std::max(1.0, scale(j, k)));
    }
  }
  return worst;
}

}  // namespace

TEST(Diagonalize, HandRecursionValues) {
  const Pipeline p = at_logistic(4.0, 0.1, 8);
  EXPECT_NEAR(std::abs(p.spectral.v(1, 2) - 1.0 / 3.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.spectral.v(1, 3) - 8.0 / 45.0), 0.0, 1e-15);
}

TEST(Diagonalize, DiagonalInputGivesIdentity) {
  const CarlemanMatrix m = diagonal_matrix({1.0, 2.0, 4.0, 8.0});
  const FixedPointFrame frame = make_frame(PowerSeries({0.0, 2.0}), 0.0);
  const SpectralFactorization s = diagonalize(m, frame);
  EXPECT_TRUE(s.v.isIdentity(0.0));
  EXPECT_TRUE(s.v_inv.isIdentity(0.0));
  const std::vector<Complex> row = left_eigenrow(s);
  EXPECT_EQ(row[1], Complex(1.0));
  EXPECT_EQ(row[2], Complex{});
}

TEST(Diagonalize, MuTwoEigenrowIsLogChart) {
  const Pipeline p = at_logistic(2.0, 0.1, 10);
  const std::vector<Complex> row = left_eigenrow(p.spectral);
  // -ln(1 - 2x) / 2 = sum 2^{k-1} x^k / k
  for (int k = 1; k < 10; ++k) {
    EXPECT_NEAR(std::abs(row[static_cast<std::size_t>(k)] - std::pow(2.0, k - 1) / k), 0.0, 1e-12 * std::pow(2.0, k));
  }
  EXPECT_EQ(row[0], Complex{});
}

TEST(Diagonalize, TypeInvariantsAtBothFixedPoints) {
  for (const double guess : {0.1, 0.7}) {
    for (const int n : {8, 16, 24}) {
      const Pipeline p = at_logistic(4.0, guess, n);
      const SpectralFactorization& s = p.spectral;
      const Matrix identity = Matrix::Identity(n, n);
      EXPECT_LE(relative_to_magnitudes(s.v * s.v_inv, s.v.cwiseAbs() * s.v_inv.cwiseAbs(), identity), 1e-10) << guess << " " << n;
      for (int j = 0; j < n; ++j) {
        EXPECT_EQ(s.v(j, j), Complex(1.0));
        EXPECT_EQ(s.v_inv(j, j), Complex(1.0));
      }
      Matrix lambda = Matrix::Zero(n, n);
      const auto powers = s.eigenvalues();
      for (int j = 0; j < n; ++j) lambda(j, j) = powers[static_cast<std::size_t>(j)];
      const Eigen::MatrixXd scale = s.v.cwiseAbs() * p.mg.entries.cwiseAbs() * s.v_inv.cwiseAbs();
      EXPECT_LE(relative_to_magnitudes(s.v * p.mg.entries * s.v_inv, scale, lambda), 1e-12) << guess << " " << n;

      // Row j of V is the j-th convolution power of row 1.
      PowerSeries row1(left_eigenrow(s));
      PowerSeries power = PowerSeries::constant(1.0, n);
      for (int j = 0; j < std::min(n, 8); ++j) {
        for (int k = 0; k < n; ++k) {
          EXPECT_NEAR(std::abs(s.v(j, k) - power[k]), 0.0, 1e-9 * std::max(1.0, std::abs(power[k])));
        }
        power = multiply(power, row1);
      }
    }
  }
}

TEST(Diagonalize, ThreeQuartersEigenvaluesAndBranch) {
  const Pipeline p = at_logistic(4.0, 0.7, 8);
  EXPECT_EQ(p.spectral.lambda, Complex(-2.0));
  EXPECT_NEAR(p.spectral.log_lambda.real(), std::numbers::ln2, 1e-15);
  EXPECT_NEAR(p.spectral.log_lambda.imag(), std::numbers::pi, 1e-15);
}

TEST(Diagonalize, LeftEigenrowRelation) {
  const Pipeline p = at_logistic(4.0, 0.1, 16);
  const int n = 16;
  Eigen::RowVectorXcd psi(n);
  const auto row = left_eigenrow(p.spectral);
  for (int k = 0; k < n; ++k) psi(k) = row[static_cast<std::size_t>(k)];
  const Eigen::RowVectorXcd lhs = psi * p.mg.entries;
  for (int k = 0; k < n; ++k) {
    EXPECT_NEAR(std::abs(lhs(k) - 4.0 * psi(k)), 0.0, 1e-9 * std::max(1.0, std::abs(lhs(k))));
  }
}

TEST(Diagonalize, ResonanceReportsPair) {
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const FixedPointFrame frame{0.0, omega, PowerSeries({0.0, omega}), PowerSeries({0.0, omega})};
  const CarlemanMatrix m = build_matrix(frame.shifted_map, 6);
  try {
    diagonalize(m, frame);
    FAIL();
  } catch (const ResonantEigenvalues& e) {
    EXPECT_EQ(e.j(), 0);
    EXPECT_EQ(e.k(), 3);
  }
}

TEST(Diagonalize, SuperattractingRejected) {
  const FixedPointFrame frame{0.0, 0.0, PowerSeries({0.0, 0.0, 1.0}), PowerSeries({0.0, 0.0, 1.0})};
  try {
    diagonalize(build_matrix(frame.shifted_map, 6), frame);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Superattracting);
  }
}

TEST(FractionalPower, ZeroIsIdentity) {
  const Pipeline p = at_logistic(4.0, 0.1, 10);
  EXPECT_TRUE(fractional_power(p.spectral, p.m, 0.0).entries.isIdentity(0.0));
}

TEST(FractionalPower, OneReproducesMatrix) {
  const Pipeline p = at_logistic(4.0, 0.1, 16);
  const int w = leading_window(16, 2, 1);
  EXPECT_LE(max_scaled_deviation(fractional_power(p.spectral, p.m, 1.0).entries, p.m.entries, w), 1e-9);
}

TEST(FractionalPower, TwoGivesComposedMap) {
  const Pipeline p = at_logistic(4.0, 0.1, 16);
  const CarlemanMatrix m2 = fractional_power(p.spectral, p.m, 2.0);
  const double expected[] = {0.0, 16.0, -80.0, 128.0, -64.0, 0.0, 0.0};
  for (int k = 0; k < 7; ++k) EXPECT_NEAR(std::abs(m2(1, k) - expected[k]), 0.0, 1e-8) << k;
}

TEST(FractionalPower, OriginalCoordinatesAtThreeQuarters) {
  const Pipeline p = at_logistic(4.0, 0.7, 8);
  const CarlemanMatrix m1 = fractional_power(p.spectral, p.m, 1.0);
  EXPECT_EQ(m1.base_point, Complex{});
  // Only the leading block survives the shift back to the origin.
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 5; ++k) EXPECT_NEAR(std::abs(m1(j, k) - p.m(j, k)), 0.0, 1e-10) << j << "," << k;
  }
  const CarlemanMatrix g1 = fractional_power(p.spectral, p.mg, 1.0);
  EXPECT_EQ(g1.base_point, Complex(0.75));
  EXPECT_LE(max_scaled_deviation(g1.entries, p.mg.entries), 1e-9);
}

TEST(FractionalPower, SemigroupInT) {
  const Pipeline p = at_logistic(4.0, 0.1, 16);
  const int w = leading_window(16, 2, 2);
  for (const auto& [s, t] : {std::pair{0.3, 0.7}, std::pair{0.5, 0.5}, std::pair{1.2, -0.2}}) {
    const Matrix product = fractional_power(p.spectral, p.m, s).entries * fractional_power(p.spectral, p.m, t).entries;
    EXPECT_LE(max_scaled_deviation(product, fractional_power(p.spectral, p.m, s + t).entries, w), 1e-8);
  }
}

TEST(FractionalPower, CarlemanStructurePreserved) {
  const Pipeline p = at_logistic(4.0, 0.1, 16);
  Gen gen(13);
  for (int trial = 0; trial < 5; ++trial) {
    const double t = gen.uniform(-0.5, 2.0);
    const CarlemanMatrix mt = fractional_power(p.spectral, p.m, t);
    EXPECT_EQ(mt(0, 0), Complex(1.0));
    for (int k = 1; k < 16; ++k) EXPECT_NEAR(std::abs(mt(0, k)), 0.0, 1e-14);
    PowerSeries row1(std::vector<Complex>(mt.entries.row(1).begin(), mt.entries.row(1).end()));
    std::vector<Complex> magnitudes(16);
    for (int k = 0; k < 16; ++k) magnitudes[static_cast<std::size_t>(k)] = std::abs(row1[k]);
    const PowerSeries abs_row1(magnitudes);
    PowerSeries power = row1;
    PowerSeries abs_power = abs_row1;
    const int w = leading_window(16, 2, 1);
    for (int j = 2; j < w; ++j) {
      power = multiply(power, row1);
      abs_power = multiply(abs_power, abs_row1);
      for (int k = 0; k < 16; ++k) {
        EXPECT_NEAR(std::abs(mt(j, k) - power[k]), 0.0, 1e-10 * std::max(1.0, abs_power[k].real())) << j << "," << k;
      }
    }
  }
}

TEST(MatrixLog, DiagonalInput) {
  const CarlemanMatrix m = diagonal_matrix({1.0, 2.0, 4.0, 8.0});
  const SpectralFactorization s = diagonalize(m, make_frame(PowerSeries({0.0, 2.0}), 0.0));
  const CarlemanMatrix l = matrix_log(s);
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(l(j, j) - j * std::numbers::ln2), 0.0, 1e-15);
}

TEST(MatrixLog, LogisticCoefficients) {
  const Pipeline p = at_logistic(4.0, 0.1, 24);
  const CarlemanMatrix l = matrix_log(p.spectral);
  EXPECT_NEAR(std::abs(l(1, 1) - 2.0 * std::numbers::ln2), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(l(1, 2) + 2.0 / 3.0 * std::numbers::ln2), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(l(1, 3) + 4.0 / 15.0 * std::numbers::ln2), 0.0, 1e-12);
}

TEST(MatrixLog, CentralDifferenceOfPower) {
  const Pipeline p = at_logistic(4.0, 0.1, 16);
  const double h = 1e-4;
  const Matrix fd = (fractional_power(p.spectral, p.m, h).entries - fractional_power(p.spectral, p.m, -h).entries) /
                    (2.0 * h);
  const Matrix l = matrix_log(p.spectral).entries;
  // Row 1 is the generator's field; compare the leading coefficients absolutely.
  for (int k = 0; k < 8; ++k) EXPECT_NEAR(std::abs(fd(1, k) - l(1, k)), 0.0, 1e-6) << k;
  EXPECT_LE(max_scaled_deviation(fd, l, leading_window(16, 2, 1)), 1e-6);
}
