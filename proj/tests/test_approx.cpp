#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <numbers>
#include <random>

#include "moment_atlas/approx.hpp"

namespace ma = moment_atlas;

namespace {

double chebyshev(unsigned j, double x) { return std::cos(j * std::acos(std::clamp(x, -1.0, 1.0))); }


}  // namespace

TEST(Kernel, MultipliersAreDecreasingAndStartAtOne) {
  for (unsigned k : {1u, 4u, 16u}) {
    const auto rho = ma::kernel_multipliers(k);
    ASSERT_EQ(rho.size(), k + 1);
    EXPECT_DOUBLE_EQ(rho[0], 1.0);
    for (unsigned j = 1; j <= k; ++j) EXPECT_LE(rho[j], rho[j - 1]);
    EXPECT_GE(rho[k], 0.0);
  }
}

TEST(Kernel, FirstMomentMatchesClosedForm) {
  for (unsigned k : {2u, 5u, 12u}) {
    const auto rho = ma::kernel_multipliers(k);
    // integral of |phi| cos(j phi) over [-pi, pi] is 2 ((-1)^j - 1) / j^2
    double integral = std::numbers::pi * std::numbers::pi;
    for (unsigned j = 1; j <= k; ++j) integral += 2 * rho[j] * 2 * ((j % 2 ? -1.0 : 1.0) - 1) / (j * j);
    EXPECT_NEAR(ma::kernel_first_moment(k), integral / (2 * std::numbers::pi), 1e-12);
  }
}

TEST(Approximate, ReproducesConstants) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto p = ma::approximate([](std::span<const double>) { return 2.5; }, n, 5);
    EXPECT_EQ(p.coefficients.size(), static_cast<std::size_t>(std::pow(6, n)));
    EXPECT_NEAR(p.coefficients[0], 2.5, 1e-12);
    for (std::size_t i = 1; i < p.coefficients.size(); ++i) EXPECT_NEAR(p.coefficients[i], 0.0, 1e-12);
  }
}

TEST(Approximate, ChebyshevInputIsDampedByItsMultiplier) {
  for (unsigned k : {3u, 6u, 10u}) {
    const auto p = ma::approximate([](std::span<const double> x) { return chebyshev(3, x[0]); }, 1, k);
    const auto rho = ma::kernel_multipliers(k);
    for (unsigned j = 0; j <= k; ++j) EXPECT_NEAR(p.coefficients[j], j == 3 ? rho[3] : 0.0, 1e-12) << k;
  }
}

TEST(Approximate, AbsErrorWithinBound) {
  const ma::Function abs1 = [](std::span<const double> x) { return std::abs(x[0]); };
  double previous = 1e300;
  for (unsigned k : {4u, 8u, 16u, 32u}) {
    const auto p = ma::approximate(abs1, 1, k);
    const double err = ma::sup_error(abs1, p, 10000);
    EXPECT_LE(err, std::numbers::pi / k);
    EXPECT_LE(err, ma::error_bound(1, k, 1.0));
    EXPECT_LE(err, previous);
    previous = err;
  }
}

TEST(Approximate, AxisOrderCommutes) {
  const ma::Function f = [](std::span<const double> x) { return std::abs(x[0] - 0.3 * x[1]) + x[1] * x[1]; };
  const auto a = ma::approximate(f, 2, 7);
  const std::vector<std::size_t> swapped = {1, 0};
  const auto b = ma::approximate(f, 2, 7, swapped);
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) EXPECT_NEAR(a.coefficients[i], b.coefficients[i], 1e-12);
}

TEST(Approximate, NormAtMostOne) {
  const std::vector<ma::Function> battery = {
      [](std::span<const double> x) { return std::abs(x[0]); },
      [](std::span<const double> x) { return std::copysign(1.0, x[0] - 0.1) * std::copysign(1.0, x[1]); },
      [](std::span<const double> x) { return std::sin(9 * x[0]) * std::cos(7 * x[1]); },
      [](std::span<const double> x) { return std::max(std::abs(x[0]), std::abs(x[1])); },
  };
  for (const auto& f : battery) {
    const auto p = ma::approximate(f, 2, 9);
    const auto zero = [](std::span<const double>) { return 0.0; };
    EXPECT_LE(ma::sup_error(zero, p, 120), 1.0 + 1e-10);
  }
}

TEST(Evaluate, Examples) {
  const auto z = ma::TensorPolynomial::zero(3, 4);
  const std::vector<double> x = {0.2, -0.4, 0.9};
  EXPECT_EQ(ma::evaluate(z, x), 0.0);

  auto p = ma::TensorPolynomial::zero(2, 3);
  const std::vector<unsigned> first = {1, 0};
  p.at(first) = 1.0;
  for (double t : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
    const std::vector<double> pt = {t, 0.45};
    EXPECT_NEAR(ma::evaluate(p, pt), t, 1e-15);
  }
}

TEST(Evaluate, AgreesWithNaiveSummation) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1, 1);
  auto p = ma::TensorPolynomial::zero(3, 6);
  for (double& c : p.coefficients) c = u(rng);
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> x = {u(rng), u(rng), u(rng)};
    double direct = 0;
    for (unsigned a = 0; a <= 6; ++a) {
      for (unsigned b = 0; b <= 6; ++b) {
        for (unsigned c = 0; c <= 6; ++c) {
          const std::vector<unsigned> m = {a, b, c};
          direct += p.at(m) * chebyshev(a, x[0]) * chebyshev(b, x[1]) * chebyshev(c, x[2]);
        }
      }
    }
    EXPECT_NEAR(ma::evaluate(p, x), direct, 1e-12);
    EXPECT_NEAR(ma::evaluate_naive(p, x), direct, 1e-12);
  }
}

TEST(Evaluate, ClampsOutsideTheCube) {
  auto p = ma::TensorPolynomial::zero(1, 2);
  p.coefficients = {0, 1, 0};
  bool clamped = false;
  const std::vector<double> x = {1.5};
  EXPECT_DOUBLE_EQ(ma::evaluate(p, x, &clamped), 1.0);
  EXPECT_TRUE(clamped);
}

TEST(SupError, Examples) {
  const ma::Function f = [](std::span<const double> x) { return x[0] * x[1]; };
  auto p = ma::TensorPolynomial::zero(2, 1);
  const std::vector<unsigned> m = {1, 1};
  p.at(m) = 1.0;
  EXPECT_NEAR(ma::sup_error(f, p, 50), 0.0, 1e-15);
  const ma::Function shifted = [](std::span<const double> x) { return x[0] * x[1] + 0.25; };
  EXPECT_NEAR(ma::sup_error(shifted, p, 50), 0.25, 1e-15);
}

TEST(ErrorBound, UsesOperatorConstant) {
  EXPECT_DOUBLE_EQ(ma::error_bound(2, 8, 1.5), ma::kOperatorConstant * 2 * 1.5 / 8);
  EXPECT_DOUBLE_EQ(ma::kOperatorConstant, std::numbers::pi);
}

TEST(Approximate, TwoDimensionalErrorDecay) {
  const ma::Function f = [](std::span<const double> x) { return std::abs(x[0]) + std::abs(x[1]); };
  double previous = 1e300;
  for (unsigned k : {4u, 8u, 16u}) {
    const double err = ma::sup_error(f, ma::approximate(f, 2, k), 201);
    EXPECT_LE(err, ma::error_bound(2, k, 1.0));
    EXPECT_LE(err, previous);
    previous = err;
  }
}
