#include "moment_atlas/integer_relation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "moment_atlas/errors.hpp"

namespace moment_atlas {

namespace {

using Real = long double;

constexpr double kExhaustiveBudget = 2e7;

bool accept(std::span<const double> v, const std::vector<long long>& c, int bits, double* residual) {
  Real sum = 0.0L, scale = 0.0L;
  for (std::size_t j = 0; j < v.size(); ++j) {
    sum += static_cast<Real>(c[j]) * v[j];
    scale += std::abs(static_cast<Real>(c[j]) * v[j]);
  }
  *residual = static_cast<double>(std::abs(sum));
  return std::abs(sum) <= std::ldexp(scale, -bits);
}

void normalize(std::vector<long long>& c) {
  for (long long x : c) {
    if (x == 0) continue;
    if (x < 0) {
      for (long long& y : c) y = -y;
    }
    return;
  }
}

long long height_of(const std::vector<long long>& c) {
  long long h = 0;
  for (long long x : c) h = std::max(h, std::llabs(x));
  return h;
}

void keep_better(RelationSearch& best, std::vector<long long> c, double residual) {
  normalize(c);
  const long long h = height_of(c);
  if (!best.found || h < height_of(best.relation) ||
      (h == height_of(best.relation) && residual < best.residual)) {
    best.found = true;
    best.relation = std::move(c);
    best.residual = residual;
  }
}

void exhaustive(std::span<const double> v, int bits, long long H, RelationSearch& out) {
  const std::size_t m = v.size();
  // Solve for the coefficient of the largest value; enumerate the others.
  std::size_t pivot = 0;
  for (std::size_t j = 1; j < m; ++j) {
    if (std::abs(v[j]) > std::abs(v[pivot])) pivot = j;
  }
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < m; ++j) {
    if (j != pivot) free.push_back(j);
  }
  std::vector<long long> c(m, 0);
  for (std::size_t j : free) c[j] = -H;
  for (;;) {
    Real partial = 0.0L;
    bool nonzero = false;
    for (std::size_t j : free) {
      partial += static_cast<Real>(c[j]) * v[j];
      nonzero = nonzero || c[j] != 0;
    }
    if (nonzero) {
      const Real solved = std::round(-partial / static_cast<Real>(v[pivot]));
      if (std::abs(solved) <= static_cast<Real>(H)) {
        c[pivot] = static_cast<long long>(solved);
        double residual = 0.0;
        if (accept(v, c, bits, &residual)) keep_better(out, c, residual);
        c[pivot] = 0;
      }
    }
    std::size_t k = 0;
    while (k < free.size() && c[free[k]] == H) {
      c[free[k]] = -H;
      ++k;
    }
    if (k == free.size()) break;
    ++c[free[k]];
  }
}

void lll_search(std::span<const double> v, int bits, long long H, RelationSearch& out) {
  const std::size_t m = v.size();
  Real scale = 0.0L;
  for (double x : v) scale = std::max(scale, static_cast<Real>(std::abs(x)));
  const Real weight = std::ldexp(1.0L, std::min(bits, 60)) / scale;
  const std::size_t cols = m + 1;
  std::vector<std::vector<Real>> b(m, std::vector<Real>(cols, 0.0L));
  for (std::size_t i = 0; i < m; ++i) {
    b[i][i] = 1.0L;
    b[i][m] = weight * v[i];
  }
  auto dotp = [&](const std::vector<Real>& x, const std::vector<Real>& y) {
    Real s = 0.0L;
    for (std::size_t k = 0; k < cols; ++k) s += x[k] * y[k];
    return s;
  };
  std::vector<std::vector<Real>> star(m), mu(m, std::vector<Real>(m, 0.0L));
  std::vector<Real> norm(m);
  auto gram_schmidt = [&] {
    for (std::size_t i = 0; i < m; ++i) {
      star[i] = b[i];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = norm[j] > 0.0L ? dotp(b[i], star[j]) / norm[j] : 0.0L;
        for (std::size_t k = 0; k < cols; ++k) star[i][k] -= mu[i][j] * star[j][k];
      }
      norm[i] = dotp(star[i], star[i]);
    }
  };
  gram_schmidt();
  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < m && guard++ < 100000) {
    for (std::size_t jj = k; jj-- > 0;) {
      const Real q = std::round(mu[k][jj]);
      if (q != 0.0L) {
        for (std::size_t c = 0; c < cols; ++c) b[k][c] -= q * b[jj][c];
        gram_schmidt();
      }
    }
    if (norm[k] >= (0.75L - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  for (const auto& row : b) {
    std::vector<long long> c(m);
    bool nonzero = false;
    bool within = true;
    for (std::size_t i = 0; i < m; ++i) {
      const Real r = std::round(row[i]);
      if (std::abs(r) > static_cast<Real>(H)) within = false;
      c[i] = within ? static_cast<long long>(r) : 0;
      nonzero = nonzero || c[i] != 0;
    }
    if (!within || !nonzero) continue;
    double residual = 0.0;
    if (accept(v, c, bits, &residual)) keep_better(out, c, residual);
  }
}

}  // namespace

RelationSearch q_independence_check(std::span<const double> values, int precision_bits, long long height) {
  RelationSearch out;
  out.height = height;
  for (double x : values) {
    if (!std::isfinite(x)) throw Error(ErrorKind::InvalidInput, "relation search needs finite values");
  }
  if (precision_bits <= 0 || height <= 0) {
    throw Error(ErrorKind::InvalidInput, "relation search needs positive precision and height");
  }
  const std::size_t m = values.size();
  out.method = "exhaustive";
  if (m == 0) return out;
  for (std::size_t j = 0; j < m; ++j) {
    if (values[j] == 0.0) {
      out.found = true;
      out.relation.assign(m, 0);
      out.relation[j] = 1;
      return out;
    }
  }
  if (m == 1) return out;
  const double box = std::pow(2.0 * static_cast<double>(height) + 1.0, static_cast<double>(m - 1));
  if (m <= 4 && box <= kExhaustiveBudget) {
    exhaustive(values, precision_bits, height, out);
  } else {
    out.method = "lll";
    lll_search(values, precision_bits, height, out);
  }
  return out;
}

}  // namespace moment_atlas
