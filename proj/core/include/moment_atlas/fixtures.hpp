#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moment_atlas/cube_family.hpp"
#include "moment_atlas/curve_model.hpp"
#include "moment_atlas/io.hpp"

namespace moment_atlas {

/// A named test curve: the complex, one or more paths on it, and optionally
/// a hand-placed cube family.
struct Fixture {
  std::string name;
  CurveComplex complex;
  std::vector<SampledPath> paths;
  std::optional<std::vector<CubeSpec>> cubes;
};

/// Boundaries of the k x k congruent subsquares of [-1,1]^2.
Fixture grid(unsigned k);

/// Edges of the k^n congruent subcubes of [-1,1]^n, with the hand family of
/// one cube per edge (midpoint, radius 1/(2k), axis along the edge, l = 1/(4k)).
Fixture cube_grid(std::size_t n, unsigned k);

/// Two squares sharing the origin: [0,1]^2 and [-s,0]^2, both traversed
/// counterclockwise from the origin.
Fixture figure_eight(double second_side = 1.0);

/// Star with three arms from the origin; the path walks out and back along each.
Fixture tree();

/// Regular polygon inscribed in the unit circle.
Fixture circle_pl(std::size_t sides = 512);

/// a b a^-1 b^-1 on the figure eight.
Fixture commutator_path(double second_side = 1.0);

/// Coefficients (sin t, sin^2 t) sampled at `samples` equal steps of [0, 2pi].
/// `samples` must be a multiple of 4 so the sine table is exactly symmetric.
Fixture universal_center_abel(std::size_t samples = 1024);

/// The unit square traversed counterclockwise from the origin.
Fixture ccw_unit_square();

/// Closed path built from the cycle-basis loops in order; it traverses every
/// cycle edge of the complex.
SampledPath basis_path(const CurveComplex& complex);

/// Random walk of `steps` letters from `start` without immediate backtracking
/// (unless forced), closed by a shortest path back to `start`.
EdgeWord random_closed_word(const CurveComplex& complex, std::uint64_t seed, std::size_t steps,
                            std::size_t start = 0);

/// Closed PL path through `vertices` points drawn uniformly from [-1,1]^dim,
/// t = 0, 1, 2, ...; with `from_origin` the first (and last) point is 0.
SampledPath random_closed_path(std::uint64_t seed, std::size_t dim, std::size_t vertices,
                               bool from_origin = true);

/// Fixture by CLI name; `k`, `n` and `side` are read where relevant.
Fixture make_fixture(const std::string& name, unsigned k = 2, std::size_t n = 3, double side = 1.0);
const std::vector<std::string>& fixture_names();

// Bundle: {"format", "name", "complex", "paths", "cubes"?}
Json fixture_to_json(const Fixture& fixture);
Fixture fixture_from_json(const Json& doc);

}  // namespace moment_atlas
