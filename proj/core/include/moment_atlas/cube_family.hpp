#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "moment_atlas/curve_model.hpp"

namespace moment_atlas {

/// A user- or auto-supplied open cube around one arc of the curve. The
/// radius is half the side; `axis` is 0-based.
struct CubeSpec {
  std::size_t edge = 0;
  Point center;
  double radius = 0.0;
  std::size_t axis = 0;
  std::optional<double> declared_l;  // certified lower bound on the projection measure
};

struct CertifiedCube {
  CubeSpec spec;
  double measured_l = 0.0;  // measure of the axis projection of the half cube's trace
  double l = 0.0;           // value used in the bound
  double arc_length_l1 = 0.0;
};

struct CubeFamily {
  std::vector<CertifiedCube> cubes;
  double min_radius = 0.0;
  double min_l = 0.0;
  double max_length_l1 = 0.0;
  double half_side = 0.0;  // radius of the smallest cube containing the cycle edges
};

struct NdBound {
  CubeFamily family;
  std::uint64_t bound = 0;
};

/// Edges lying on some cycle, in increasing id order. These are the arcs the
/// cube family must cover.
std::vector<std::size_t> cycle_edges(const CurveComplex& complex);

/// Checks every clause of the disjoint-cube condition constructively for PL
/// arcs and measures l_i. Throws ConditionStarViolated naming the clause and
/// the offending cube indices.
CubeFamily certify_cubes(const CurveComplex& complex, std::vector<CubeSpec> cubes);

/// Greedy placement at the midpoint of each arc's longest segment, halving
/// radii until the family certifies.
CubeFamily auto_cubes(const CurveComplex& complex);

/// floor(2 pi n L d / (r l)) + 1 for a certified family; 0 when the complex
/// has no cycles. Passing no cubes selects auto placement.
NdBound n_bound_nd(const CurveComplex& complex,
                   const std::optional<std::vector<CubeSpec>>& cubes = std::nullopt);

}  // namespace moment_atlas
