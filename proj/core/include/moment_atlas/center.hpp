#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "moment_atlas/cube_family.hpp"
#include "moment_atlas/curve_model.hpp"
#include "moment_atlas/integer_relation.hpp"
#include "moment_atlas/moments.hpp"
#include "moment_atlas/topology.hpp"

namespace moment_atlas {

/// dv/dt = sum_j f_j'(t) v^(j+1) with piecewise-constant f_j' taken from a
/// closed PL coefficient path that starts at the origin.
class OdeSystem {
 public:
  /// Throws NotClosed for open paths and InvalidInput when F(a) != 0.
  static OdeSystem create(SampledPath coefficients);

  const SampledPath& path() const noexcept { return path_; }
  std::size_t order() const noexcept { return path_.dim(); }

 private:
  explicit OdeSystem(SampledPath path) : path_(std::move(path)) {}
  SampledPath path_;
};

inline constexpr std::size_t kDefaultStepsPerUnit = 16384;
inline constexpr double kResidualGate = 1e-7;

/// Classical RK4 over each PL segment with ceil(dt * steps_per_unit) equal
/// steps. Works for any coefficient path, closed or not. Throws Blowup when
/// |v| leaves the divergence guard.
double integrate_abel(const SampledPath& coefficients, double v0,
                      std::size_t steps_per_unit = kDefaultStepsPerUnit);

/// v(b) for v(a) = v0.
double first_return_map(const OdeSystem& sys, double v0,
                        std::size_t steps_per_unit = kDefaultStepsPerUnit);

struct ReturnResidual {
  double v0 = 0.0;        // the initial value actually used
  double residual = 0.0;  // |v(b) - v0|
};

/// Residuals at the requested initial values; an initial value that blows
/// up is halved (up to 20 times) before giving up with Blowup.
std::vector<ReturnResidual> return_residuals(const OdeSystem& sys, const std::vector<double>& v0s,
                                             std::size_t steps_per_unit = kDefaultStepsPerUnit);

/// 3 * int f1 f2' + 2 * int f2 f1' for a planar coefficient path.
double fourth_coefficient(const SampledPath& planar);

struct ConditionFlags {
  bool contractible = false;              // reported (a)
  bool contractible_by_reduction = false; // free reduction is empty
  bool homologically_trivial = false;     // (d)
  bool covers = false;
  bool consistent = true;  // covers && (d) implies free reduction is empty
};

ConditionFlags classify_conditions(const EdgeWord& word, const CycleBasis& basis, const EdgeWord& trail,
                                   bool cyclic_trail);

enum class Decision { UniversalCenter, NotCenter, Undecided };
std::string_view to_string(Decision d);

struct CenterVerdict {
  Decision decision = Decision::Undecided;
  std::string rule;    // "acyclic_image", "class_a_single_moment", "planar_bound", "cube_bound"
  std::string reason;
  std::uint64_t bound = 0;
  std::size_t betti_complex = 0;
  std::size_t betti_image = 0;
  EdgeWord word;
  ConditionFlags flags;
  std::optional<ScanResult> scan;
  std::optional<MomentSpec> witness;
  double witness_value = 0.0;
  bool class_a = false;
  std::optional<RelationSearch> area_relation;
  std::vector<ReturnResidual> residuals;
  double residual_gate = kResidualGate;
};

struct DecideOptions {
  bool assume_q_independent = false;
  std::optional<std::vector<CubeSpec>> cubes;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  double face_eps = -1.0;
  std::size_t trail_limit = 10000;
  bool residuals = true;
  std::vector<double> residual_v0 = {0.01, -0.01, 0.05, -0.05};
  std::size_t steps_per_unit = kDefaultStepsPerUnit;
};

/// Decision tree: acyclic image; planar class-A single moment; planar scan
/// up to N_Gamma; higher-dimensional scan up to the cube-family bound.
/// Vanishing yields a universal center when the path covers an Eulerian
/// trail of its image or reduces to the identity; a witness yields
/// not_center only under the covering hypothesis. Everything else is
/// undecided with the evidence attached.
CenterVerdict decide(const OdeSystem& sys, const CurveComplex& complex, const DecideOptions& options = {});

}  // namespace moment_atlas
