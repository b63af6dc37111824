#include "moment_atlas/approx.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "moment_atlas/errors.hpp"

namespace moment_atlas {

namespace {

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

// Contracts axis `axis` of a row-major tensor with extents `ext` against the
// matrix M (rows = new extent, cols = old extent).
std::vector<double> contract_axis(const std::vector<double>& in, std::vector<std::size_t>& ext, std::size_t axis,
                                  const std::vector<std::vector<double>>& M) {
  const std::size_t old_len = ext[axis];
  const std::size_t new_len = M.size();
  std::size_t outer = 1, inner = 1;
  for (std::size_t a = 0; a < axis; ++a) outer *= ext[a];
  for (std::size_t a = axis + 1; a < ext.size(); ++a) inner *= ext[a];
  std::vector<double> out(outer * new_len * inner, 0.0);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t r = 0; r < new_len; ++r) {
      double* dst = &out[(o * new_len + r) * inner];
      for (std::size_t c = 0; c < old_len; ++c) {
        const double m = M[r][c];
        if (m == 0.0) continue;
        const double* src = &in[(o * old_len + c) * inner];
        for (std::size_t i = 0; i < inner; ++i) dst[i] += m * src[i];
      }
    }
  }
  ext[axis] = new_len;
  return out;
}

double clenshaw(std::span<const double> c, double x) {
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t j = c.size(); j-- > 1;) {
    const double b0 = 2.0 * x * b1 - b2 + c[j];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

}  // namespace

TensorPolynomial TensorPolynomial::zero(std::size_t dim, unsigned degree) {
  if (dim == 0) throw Error(ErrorKind::InvalidInput, "tensor polynomial needs dim >= 1");
  TensorPolynomial p;
  p.dim = dim;
  p.degree = degree;
  p.coefficients.assign(ipow(degree + 1, dim), 0.0);
  return p;
}

std::size_t TensorPolynomial::flat_index(std::span<const unsigned> multi) const {
  if (multi.size() != dim) throw Error(ErrorKind::LengthMismatch, "multi-index length mismatch");
  std::size_t idx = 0;
  for (unsigned j : multi) {
    if (j > degree) throw Error(ErrorKind::InvalidInput, "multi-index exceeds the degree");
    idx = idx * (degree + 1) + j;
  }
  return idx;
}

std::vector<double> kernel_multipliers(unsigned k) {
  std::vector<double> b(k + 1);
  for (unsigned j = 0; j <= k; ++j) b[j] = std::sin((j + 1.0) * std::numbers::pi / (k + 2.0));
  const double norm = std::inner_product(b.begin(), b.end(), b.begin(), 0.0);
  std::vector<double> rho(k + 1, 0.0);
  for (unsigned s = 0; s <= k; ++s) {
    double acc = 0.0;
    for (unsigned j = 0; j + s <= k; ++j) acc += b[j] * b[j + s];
    rho[s] = acc / norm;
  }
  return rho;
}

double kernel_first_moment(unsigned k) {
  // (1/2pi) int |phi| (1 + 2 sum rho_s cos s phi) dphi over [-pi, pi]
  //   = pi/2 - (4/pi) sum over odd s of rho_s / s^2.
  const auto rho = kernel_multipliers(k);
  double sum = 0.0;
  for (unsigned s = 1; s <= k; s += 2) sum += rho[s] / (static_cast<double>(s) * s);
  return std::numbers::pi / 2.0 - 4.0 / std::numbers::pi * sum;
}

TensorPolynomial approximate(const Function& f, std::size_t n, unsigned k, std::span<const std::size_t> axis_order) {
  if (n == 0 || k == 0) throw Error(ErrorKind::InvalidInput, "approximation needs n >= 1 and k >= 1");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (!axis_order.empty()) {
    if (axis_order.size() != n) throw Error(ErrorKind::LengthMismatch, "axis order length mismatch");
    order.assign(axis_order.begin(), axis_order.end());
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t a = 0; a < n; ++a) {
      if (sorted[a] != a) throw Error(ErrorKind::InvalidInput, "axis order is not a permutation");
    }
  }
  const std::size_t N = 8 * static_cast<std::size_t>(k);
  std::vector<double> grid(N);
  for (std::size_t m = 0; m < N; ++m) grid[m] = std::cos(std::numbers::pi * (m + 0.5) / static_cast<double>(N));

  std::vector<double> values(ipow(N, n));
  std::vector<double> x(n);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    for (std::size_t a = 0; a < n; ++a) x[a] = grid[idx[a]];
    values[flat] = f(x);
    for (std::size_t a = n; a-- > 0;) {
      if (++idx[a] < N) break;
      idx[a] = 0;
    }
  }

  // Damped discrete cosine transform: row s gives rho_s times the cosine
  // coefficient of order s on the grid.
  const auto rho = kernel_multipliers(k);
  std::vector<std::vector<double>> M(k + 1, std::vector<double>(N));
  for (unsigned s = 0; s <= k; ++s) {
    const double scale = (s == 0 ? 1.0 : 2.0) / static_cast<double>(N) * rho[s];
    for (std::size_t m = 0; m < N; ++m) {
      M[s][m] = scale * std::cos(s * std::numbers::pi * (m + 0.5) / static_cast<double>(N));
    }
  }
  std::vector<std::size_t> ext(n, N);
  for (std::size_t axis : order) values = contract_axis(values, ext, axis, M);

  TensorPolynomial p;
  p.dim = n;
  p.degree = k;
  p.coefficients = std::move(values);
  return p;
}

double evaluate(const TensorPolynomial& p, std::span<const double> x, bool* clamped) {
  if (x.size() != p.dim) throw Error(ErrorKind::LengthMismatch, "evaluation point has wrong dimension");
  std::vector<double> xc(x.begin(), x.end());
  bool any = false;
  for (double& v : xc) {
    if (v < -1.0 || v > 1.0) {
      v = std::clamp(v, -1.0, 1.0);
      any = true;
    }
  }
  if (clamped) {
    *clamped = any;
  } else if (any) {
    std::cerr << "warning: evaluation point outside [-1,1]^n was clamped\n";
  }
  // Collapse the last axis first; each slice is a 1-D Chebyshev series.
  const std::size_t len = p.degree + 1;
  std::vector<double> work = p.coefficients;
  for (std::size_t axis = p.dim; axis-- > 0;) {
    const std::size_t slices = work.size() / len;
    std::vector<double> next(slices);
    for (std::size_t s = 0; s < slices; ++s) {
      next[s] = clenshaw(std::span<const double>(&work[s * len], len), xc[axis]);
    }
    work = std::move(next);
  }
  return work.front();
}

double evaluate_naive(const TensorPolynomial& p, std::span<const double> x) {
  if (x.size() != p.dim) throw Error(ErrorKind::LengthMismatch, "evaluation point has wrong dimension");
  const std::size_t len = p.degree + 1;
  std::vector<std::vector<double>> T(p.dim, std::vector<double>(len));
  for (std::size_t a = 0; a < p.dim; ++a) {
    const double t = std::acos(std::clamp(x[a], -1.0, 1.0));
    for (std::size_t j = 0; j < len; ++j) T[a][j] = std::cos(j * t);
  }
  double total = 0.0;
  std::vector<std::size_t> idx(p.dim, 0);
  for (std::size_t flat = 0; flat < p.coefficients.size(); ++flat) {
    double term = p.coefficients[flat];
    for (std::size_t a = 0; a < p.dim; ++a) term *= T[a][idx[a]];
    total += term;
    for (std::size_t a = p.dim; a-- > 0;) {
      if (++idx[a] < len) break;
      idx[a] = 0;
    }
  }
  return total;
}

double sup_error(const Function& f, const TensorPolynomial& p, std::size_t resolution) {
  if (resolution < 2) throw Error(ErrorKind::InvalidInput, "sup error grid needs resolution >= 2");
  const std::size_t n = p.dim;
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> x(n);
  const std::size_t total = ipow(resolution, n);
  double worst = 0.0;
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t a = 0; a < n; ++a) {
      x[a] = -1.0 + 2.0 * static_cast<double>(idx[a]) / static_cast<double>(resolution - 1);
    }
    bool clamped = false;
    worst = std::max(worst, std::abs(f(x) - evaluate(p, x, &clamped)));
    for (std::size_t a = n; a-- > 0;) {
      if (++idx[a] < resolution) break;
      idx[a] = 0;
    }
  }
  return worst;
}

double error_bound(std::size_t n, unsigned k, double lipschitz) {
  return kOperatorConstant * static_cast<double>(n) * lipschitz / static_cast<double>(k);
}

}  // namespace moment_atlas
