#include "moment_atlas/quadrature.hpp"

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

#include "moment_atlas/errors.hpp"

namespace moment_atlas {

namespace {

constexpr std::size_t kCached = 256;

GaussRule compute_rule(std::size_t n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      const double pn = p1;
      dp = static_cast<double>(n) * (x * pn - p0) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1, 1] -> [0, 1].
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "Gauss-Legendre rule needs at least one node");
  if (n <= kCached) {
    static std::once_flag flags[kCached + 1];
    static std::unique_ptr<GaussRule> rules[kCached + 1];
    std::call_once(flags[n], [n] { rules[n] = std::make_unique<GaussRule>(compute_rule(n)); });
    return *rules[n];
  }
  thread_local GaussRule scratch;
  scratch = compute_rule(n);
  return scratch;
}

std::size_t nodes_for_degree(unsigned degree) { return (degree + 3) / 2; }

}  // namespace moment_atlas
