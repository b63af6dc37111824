#pragma once

#include <cstdint>
#include <utility>

#include "moment_atlas/curve_model.hpp"

namespace moment_atlas {

struct DirectionPair {
  Point v1;
  Point v2;
  std::uint64_t seed = 0;
};

/// t -> (<v1, G(t)>, <v2, G(t)>) on the same parameter grid.
SampledPath project(const SampledPath& path, const DirectionPair& v);

/// 2n coordinates i.i.d. uniform on [-1, 1] from a seeded generator; pairs
/// that are (numerically) proportional or contain a zero vector are redrawn.
DirectionPair sample_direction(std::uint64_t seed, std::size_t n);

/// (integral of g1', integral of g1^d g2') for a planar path.
std::pair<double, double> restricted_moment(const SampledPath& path_v, unsigned d);

struct ExpansionComparison {
  double projected = 0.0;  // integral of g1v^d g2v'
  double expanded = 0.0;   // multinomial combination of n-D moments
  double magnitude = 0.0;  // sum of absolute expansion terms
  bool agrees = false;
};

inline constexpr unsigned kMaxExpansionDegree = 12;

/// Compares the projected moment of degree d with its multinomial
/// expansion in the n-dimensional moments; agreement means
/// |projected - expanded| <= tol * (1 + magnitude). Throws DegreeTooLarge
/// for d > 12.
ExpansionComparison expansion_compare(const SampledPath& path, const DirectionPair& v, unsigned d,
                                      double tol);
bool expansion_check(const SampledPath& path, const DirectionPair& v, unsigned d, double tol);

}  // namespace moment_atlas
