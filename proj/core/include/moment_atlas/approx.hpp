#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace moment_atlas {

/// Coefficients c_{j_1..j_n} of sum c T_{j_1}(x_1) ... T_{j_n}(x_n), with
/// 0 <= j_i <= degree, stored with j_1 varying slowest.
struct TensorPolynomial {
  std::size_t dim = 1;
  unsigned degree = 0;
  std::vector<double> coefficients;

  static TensorPolynomial zero(std::size_t dim, unsigned degree);
  std::size_t flat_index(std::span<const unsigned> multi) const;
  double& at(std::span<const unsigned> multi) { return coefficients[flat_index(multi)]; }
  double at(std::span<const unsigned> multi) const { return coefficients[flat_index(multi)]; }
};

using Function = std::function<double(std::span<const double>)>;

/// Error constant of the implemented operator: sup error <= C * n * L / k
/// for f Lipschitz with constant L in each variable.
inline constexpr double kOperatorConstant = std::numbers::pi;

/// Fejer-Korovkin multipliers rho_0 = 1, ..., rho_k of the positive cosine
/// kernel of degree k.
std::vector<double> kernel_multipliers(unsigned k);

/// Integral of |phi| against the normalized kernel on [-pi, pi].
double kernel_first_moment(unsigned k);

/// Applies the kernel operator per axis to f(cos phi_1, ..., cos phi_n)
/// sampled on an 8k-node cosine grid, giving a degree-k tensor polynomial.
/// `axis_order` permutes the order of the per-axis passes (default 0..n-1).
TensorPolynomial approximate(const Function& f, std::size_t n, unsigned k,
                             std::span<const std::size_t> axis_order = {});

/// Stable nested Clenshaw evaluation. Coordinates outside [-1, 1] are
/// clamped; `clamped` reports whether that happened, otherwise a warning is
/// written to stderr.
double evaluate(const TensorPolynomial& p, std::span<const double> x, bool* clamped = nullptr);

/// Reference evaluation by explicit basis summation.
double evaluate_naive(const TensorPolynomial& p, std::span<const double> x);

/// Max |f - p| over the uniform grid with `resolution` points per axis.
double sup_error(const Function& f, const TensorPolynomial& p, std::size_t resolution);

/// C * n * L / k.
double error_bound(std::size_t n, unsigned k, double lipschitz);

}  // namespace moment_atlas
