#pragma once

#include <cstddef>
#include <vector>

namespace moment_atlas {

/// Gauss-Legendre rule on [0, 1]; weights sum to 1. Exact for polynomials of
/// degree <= 2 * size - 1.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Rules up to 256 nodes are cached; larger ones are computed per call.
const GaussRule& gauss_legendre(std::size_t n);

/// Node count that integrates a degree-d polynomial exactly: ceil((d+2)/2).
std::size_t nodes_for_degree(unsigned degree);

}  // namespace moment_atlas
