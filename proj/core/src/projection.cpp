#include "moment_atlas/projection.hpp"

#include <cmath>
#include <random>
#include <string>

#include "moment_atlas/errors.hpp"
#include "moment_atlas/moments.hpp"
#include "vec.hpp"

namespace moment_atlas {

SampledPath project(const SampledPath& path, const DirectionPair& v) {
  if (v.v1.size() != path.dim() || v.v2.size() != path.dim()) {
    throw Error(ErrorKind::InvalidInput, "direction pair dimension does not match the path");
  }
  std::vector<Sample> samples;
  samples.reserve(path.size());
  for (const Sample& s : path.samples()) {
    samples.push_back({s.t, {detail::dot(v.v1, s.x), detail::dot(v.v2, s.x)}});
  }
  if (path.closed()) samples.back().x = samples.front().x;
  return SampledPath::create(2, std::move(samples), path.closed());
}

DirectionPair sample_direction(std::uint64_t seed, std::size_t n) {
  if (n < 3) throw Error(ErrorKind::InvalidInput, "direction sampling needs n >= 3");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  DirectionPair pair;
  pair.seed = seed;
  for (;;) {
    pair.v1.assign(n, 0.0);
    pair.v2.assign(n, 0.0);
    for (double& x : pair.v1) x = coord(rng);
    for (double& x : pair.v2) x = coord(rng);
    const double a = detail::norm2(pair.v1);
    const double b = detail::norm2(pair.v2);
    const double c = detail::dot(pair.v1, pair.v2);
    if (a > 0.0 && b > 0.0 && a * b - c * c > 1e-12 * a * b) return pair;
  }
}

std::pair<double, double> restricted_moment(const SampledPath& path_v, unsigned d) {
  if (path_v.dim() != 2) throw Error(ErrorKind::InvalidInput, "restricted moments need a planar path");
  const double first = moment_quadrature(path_v, {{0, 0}, 0});
  const double second = moment_quadrature(path_v, {{d, 0}, 1});
  return {first, second};
}

ExpansionComparison expansion_compare(const SampledPath& path, const DirectionPair& v, unsigned d,
                                      double tol) {
  if (d > kMaxExpansionDegree) {
    throw Error(ErrorKind::DegreeTooLarge,
                "expansion degree " + std::to_string(d) + " exceeds " + std::to_string(kMaxExpansionDegree));
  }
  const std::size_t n = path.dim();
  ExpansionComparison out;
  out.projected = restricted_moment(project(path, v), d).second;

  const MomentEvaluator eval(path, d);
  std::vector<double> factorial(d + 1, 1.0);
  for (unsigned k = 1; k <= d; ++k) factorial[k] = factorial[k - 1] * k;

  // Enumerate compositions alpha of d into n parts.
  std::vector<unsigned> alpha(n, 0);
  alpha[n - 1] = d;
  for (;;) {
    double coef = factorial[d];
    for (std::size_t j = 0; j < n; ++j) {
      coef /= factorial[alpha[j]];
      coef *= std::pow(v.v1[j], static_cast<int>(alpha[j]));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (v.v2[i] == 0.0) continue;
      const double term = coef * v.v2[i] * eval({alpha, i});
      out.expanded += term;
      out.magnitude += std::abs(term);
    }
    // next composition: move one unit leftwards like an odometer
    std::size_t k = n - 1;
    while (k > 0 && alpha[k] == 0) --k;
    if (k == 0) break;
    const unsigned tail = alpha[k];
    alpha[k] = 0;
    ++alpha[k - 1];
    alpha[n - 1] = tail - 1;
  }
  out.agrees = std::abs(out.projected - out.expanded) <= tol * (1.0 + out.magnitude);
  return out;
}

bool expansion_check(const SampledPath& path, const DirectionPair& v, unsigned d, double tol) {
  return expansion_compare(path, v, d, tol).agrees;
}

}  // namespace moment_atlas
