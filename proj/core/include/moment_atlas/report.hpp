#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "moment_atlas/center.hpp"
#include "moment_atlas/cube_family.hpp"
#include "moment_atlas/curve_model.hpp"
#include "moment_atlas/io.hpp"
#include "moment_atlas/moments.hpp"
#include "moment_atlas/planar_geometry.hpp"

namespace moment_atlas {

enum class Pipeline { Quadrature, Homology, Both };

struct ComplexSummary {
  std::size_t dim = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t betti = 0;
  std::string euler_class;

  bool operator==(const ComplexSummary&) const = default;
};

struct FaceSummary {
  double area = 0.0;
  double side = 0.0;
  Vec2 representative;

  bool operator==(const FaceSummary&) const = default;
};

struct AnalysisReport {
  std::string format{kFormatTag};
  ComplexSummary complex;
  std::vector<FaceSummary> faces;
  std::optional<double> half_side;
  std::optional<std::uint64_t> bound_planar;  // N_Gamma, planar complexes
  std::optional<std::uint64_t> bound_cubes;   // cube-family bound, n >= 3
  std::vector<std::vector<MomentReport>> moments;  // one list per path
  std::optional<Json> center;

  bool operator==(const AnalysisReport&) const = default;
};

Json report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const Json& doc);

ComplexSummary summarize(const CurveComplex& complex);

/// Every (d, i) with |d| <= max_total, in lexicographic order.
std::vector<MomentSpec> all_specs(std::size_t dim, unsigned max_total);

/// Moment reports for `specs`. The homology pipeline needs the planar faces;
/// it is skipped (left empty) for non-planar paths.
std::vector<MomentReport> compute_moments(const SampledPath& path, const std::vector<MomentSpec>& specs,
                                          Pipeline pipeline, const FaceSet* faces);

struct AnalyzeOptions {
  unsigned max_degree = 2;
  Pipeline pipeline = Pipeline::Both;
  std::optional<std::vector<CubeSpec>> cubes;
  double face_eps = -1.0;
  bool center = false;
  DecideOptions decide;
};

/// Summary, faces and bound of the complex plus moments of each path. With
/// `center` set, the first path is treated as an Abel coefficient path.
AnalysisReport analyze(const CurveComplex& complex, const std::vector<SampledPath>& paths,
                       const AnalyzeOptions& options = {});

}  // namespace moment_atlas
