#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "moment_atlas/approx.hpp"
#include "moment_atlas/center.hpp"
#include "moment_atlas/cube_family.hpp"
#include "moment_atlas/curve_model.hpp"
#include "moment_atlas/integer_relation.hpp"
#include "moment_atlas/moments.hpp"
#include "moment_atlas/planar_geometry.hpp"
#include "moment_atlas/projection.hpp"
#include "moment_atlas/topology.hpp"

namespace moment_atlas {

using Json = nlohmann::json;

inline constexpr std::string_view kFormatTag = "moment-atlas/1";

/// Reads and parses a JSON file; failures raise InvalidInput.
Json read_json_file(const std::filesystem::path& file);

// Path: {"format", "dim", "closed", "samples": [[t, x1..xn], ...]}
Json path_to_json(const SampledPath& path);
SampledPath path_from_json(const Json& doc);

// Complex: {"format", "dim", "vertices", "edges": [{"from", "to", "points"}], "adjacency"}
Json complex_to_json(const CurveComplex& complex);
CurveComplex complex_from_json(const Json& doc);

// Cubes: {"format", "cubes": [{"edge", "center", "radius", "axis" (1-based), "l"?}]}
Json cubes_to_json(const std::vector<CubeSpec>& cubes);
std::vector<CubeSpec> cubes_from_json(const Json& doc);

Json word_to_json(const EdgeWord& word);
EdgeWord word_from_json(const Json& doc);

/// Target index serialized 1-based as "i".
Json spec_to_json(const MomentSpec& spec);
MomentSpec spec_from_json(const Json& doc);
Json moment_report_to_json(const MomentReport& report);
MomentReport moment_report_from_json(const Json& doc);

Json scan_to_json(const ScanResult& scan);
Json faces_to_json(const FaceSet& faces);
Json cube_family_to_json(const CubeFamily& family);
Json relation_to_json(const RelationSearch& search);
Json flags_to_json(const ConditionFlags& flags);
Json verdict_to_json(const CenterVerdict& verdict);
Json tensor_to_json(const TensorPolynomial& p);
Json direction_to_json(const DirectionPair& v);

}  // namespace moment_atlas
