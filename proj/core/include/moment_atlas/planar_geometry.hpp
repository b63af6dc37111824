#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "moment_atlas/curve_model.hpp"

namespace moment_atlas {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  auto operator<=>(const Vec2&) const = default;
};

/// Closed polygonal loop without the repeated closing vertex.
using Ring = std::vector<Vec2>;

double signed_area(std::span<const Vec2> ring);

/// A bounded component of the plane minus the curve. The outer ring is
/// counter-clockwise; it may run along dangling edges twice, once per side.
struct Face {
  Ring outer;
  std::vector<Ring> holes;  // always empty for connected complexes
  double area = 0.0;
  double inscribed_side = 0.0;  // certified lower bound r_lower
  Vec2 representative;          // centre of the certified inscribed square
};

struct FaceSet {
  std::vector<Face> faces;  // ordered by representative point
  double half_side = 0.0;   // half the side of the bounding square of all faces
  double min_side = 0.0;    // smallest inscribed side
  double max_area = 0.0;

  std::size_t size() const noexcept { return faces.size(); }
  bool empty() const noexcept { return faces.empty(); }
};

/// Bounded faces of a planar complex via a half-edge angular sweep.
/// `eps` is the bracket width for each inscribed-square side; non-positive
/// selects 1e-7 x the bounding-box diameter of the complex.
FaceSet extract_faces(const CurveComplex& complex, double eps = -1.0);

/// Signed l_inf distance from p to the boundary of the face: positive
/// inside, non-positive outside or on the boundary.
double face_depth(const Face& face, Vec2 p);

struct InscribedSquare {
  double side_lower = 0.0;  // r_lower <= r < r_lower + eps
  double side_upper = 0.0;
  Vec2 center;
};

/// Largest axis-parallel open square inside the face by branch and bound on
/// the 1-Lipschitz depth function. Throws DegenerateGeometry if the face
/// has empty interior.
InscribedSquare inscribed_square(const Face& face, double eps);
double inscribed_square_side(const Face& face, double eps);

/// floor(27 pi / 2 * A d / r^3) + 1, or 0 for an empty face set.
std::uint64_t n_bound_2d(const FaceSet& faces);

/// Signed winding number of a closed planar path around p. Throws
/// PointOnCurve when p lies within `tol` of the path (non-positive tol
/// selects 1e-9 x the path diameter).
long long winding_number(const SampledPath& path, Vec2 p, double tol = -1.0);
long long winding_number(std::span<const Vec2> ring, Vec2 p);

}  // namespace moment_atlas
