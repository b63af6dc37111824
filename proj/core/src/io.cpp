#include "moment_atlas/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "moment_atlas/errors.hpp"

namespace moment_atlas {

namespace {

const Json& require(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw Error(ErrorKind::InvalidInput, std::string("missing field \"") + key + "\"");
  }
  return doc.at(key);
}

void check_format(const Json& doc) {
  if (doc.is_object() && doc.contains("format") && doc.at("format") != kFormatTag) {
    throw Error(ErrorKind::InvalidInput, "unsupported format tag " + doc.at("format").dump());
  }
}

// Runs a parser, translating library type errors into InvalidInput.
template <class F>
auto guarded(const char* what, F&& parse) {
  try {
    return parse();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed ") + what + ": " + e.what());
  }
}

Json point_to_json(const Point& p) { return Json(p); }

Json vec2_to_json(Vec2 v) { return Json::array({v.x, v.y}); }

}  // namespace

Json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, file.string() + ": " + e.what());
  }
}

Json path_to_json(const SampledPath& path) {
  Json samples = Json::array();
  for (const Sample& s : path.samples()) {
    Json row = Json::array({s.t});
    for (double x : s.x) row.push_back(x);
    samples.push_back(std::move(row));
  }
  return {{"format", kFormatTag}, {"dim", path.dim()}, {"closed", path.closed()}, {"samples", std::move(samples)}};
}

SampledPath path_from_json(const Json& doc) {
  check_format(doc);
  if (doc.is_object() && doc.contains("paths") && !doc.contains("samples")) {
    const Json& paths = doc.at("paths");
    if (!paths.is_array() || paths.empty()) throw Error(ErrorKind::InvalidInput, "bundle has no paths");
    return path_from_json(paths.at(0));
  }
  return guarded("path", [&] {
    const auto dim = require(doc, "dim").get<std::size_t>();
    const bool closed = doc.value("closed", false);
    std::vector<Sample> samples;
    for (const Json& row : require(doc, "samples")) {
      if (!row.is_array() || row.size() != dim + 1) {
        throw Error(ErrorKind::InvalidInput, "each sample must be [t, x1..x" + std::to_string(dim) + "]");
      }
      Sample s;
      s.t = row.at(0).get<double>();
      for (std::size_t k = 0; k < dim; ++k) s.x.push_back(row.at(k + 1).get<double>());
      samples.push_back(std::move(s));
    }
    return SampledPath::create(dim, std::move(samples), closed);
  });
}

Json complex_to_json(const CurveComplex& complex) {
  Json vertices = Json::array();
  for (const Point& v : complex.vertices()) vertices.push_back(point_to_json(v));
  Json edges = Json::array();
  for (const Edge& e : complex.edges()) {
    Json points = Json::array();
    for (const Point& p : e.points) points.push_back(point_to_json(p));
    edges.push_back({{"from", e.from}, {"to", e.to}, {"points", std::move(points)}});
  }
  Json adjacency = Json::array();
  for (std::size_t v = 0; v < complex.num_vertices(); ++v) adjacency.push_back(complex.incident(v));
  return {{"format", kFormatTag},
          {"dim", complex.dim()},
          {"vertices", std::move(vertices)},
          {"edges", std::move(edges)},
          {"adjacency", std::move(adjacency)}};
}

CurveComplex complex_from_json(const Json& doc) {
  check_format(doc);
  if (doc.is_object() && doc.contains("complex")) return complex_from_json(doc.at("complex"));
  return guarded("complex", [&] {
    const auto dim = require(doc, "dim").get<std::size_t>();
    std::vector<Point> vertices;
    for (const Json& v : require(doc, "vertices")) vertices.push_back(v.get<Point>());
    std::vector<Edge> edges;
    for (const Json& e : require(doc, "edges")) {
      Edge edge;
      edge.from = require(e, "from").get<std::size_t>();
      edge.to = require(e, "to").get<std::size_t>();
      for (const Json& p : require(e, "points")) edge.points.push_back(p.get<Point>());
      edges.push_back(std::move(edge));
    }
    CurveComplex complex = CurveComplex::create(dim, std::move(vertices), std::move(edges));
    if (doc.contains("adjacency")) {
      const Json& adj = doc.at("adjacency");
      bool matches = adj.is_array() && adj.size() == complex.num_vertices();
      for (std::size_t v = 0; matches && v < complex.num_vertices(); ++v) {
        auto listed = adj.at(v).get<std::vector<std::size_t>>();
        auto actual = complex.incident(v);
        std::sort(listed.begin(), listed.end());
        std::sort(actual.begin(), actual.end());
        matches = listed == actual;
      }
      if (!matches) throw Error(ErrorKind::InvalidInput, "adjacency does not match the edge list");
    }
    return complex;
  });
}

Json cubes_to_json(const std::vector<CubeSpec>& cubes) {
  Json list = Json::array();
  for (const CubeSpec& c : cubes) {
    Json entry = {{"edge", c.edge}, {"center", point_to_json(c.center)}, {"radius", c.radius}, {"axis", c.axis + 1}};
    if (c.declared_l) entry["l"] = *c.declared_l;
    list.push_back(std::move(entry));
  }
  return {{"format", kFormatTag}, {"cubes", std::move(list)}};
}

std::vector<CubeSpec> cubes_from_json(const Json& doc) {
  check_format(doc);
  return guarded("cubes", [&] {
    std::vector<CubeSpec> cubes;
    for (const Json& entry : require(doc, "cubes")) {
      CubeSpec c;
      c.edge = require(entry, "edge").get<std::size_t>();
      c.center = require(entry, "center").get<Point>();
      c.radius = require(entry, "radius").get<double>();
      const auto axis = require(entry, "axis").get<std::size_t>();
      if (axis == 0) throw Error(ErrorKind::InvalidInput, "cube axis is 1-based");
      c.axis = axis - 1;
      if (entry.contains("l")) c.declared_l = entry.at("l").get<double>();
      cubes.push_back(std::move(c));
    }
    return cubes;
  });
}

Json word_to_json(const EdgeWord& word) {
  Json letters = Json::array();
  for (const Letter& l : word.letters) letters.push_back(Json::array({l.edge, l.orientation}));
  Json out = {{"letters", std::move(letters)}};
  out["start"] = word.start == kNoVertex ? Json(nullptr) : Json(word.start);
  return out;
}

EdgeWord word_from_json(const Json& doc) {
  return guarded("word", [&] {
    EdgeWord w;
    for (const Json& l : require(doc, "letters")) {
      const int o = l.at(1).get<int>();
      if (o != 1 && o != -1) throw Error(ErrorKind::InvalidInput, "letter orientation must be +1 or -1");
      w.letters.push_back({l.at(0).get<std::size_t>(), o});
    }
    if (doc.contains("start") && !doc.at("start").is_null()) w.start = doc.at("start").get<std::size_t>();
    return w;
  });
}

Json spec_to_json(const MomentSpec& spec) {
  return {{"d", spec.degrees}, {"i", spec.target + 1}};
}

MomentSpec spec_from_json(const Json& doc) {
  return guarded("moment spec", [&] {
    MomentSpec spec;
    spec.degrees = require(doc, "d").get<std::vector<unsigned>>();
    const auto i = require(doc, "i").get<std::size_t>();
    if (i == 0 || i > spec.degrees.size()) throw Error(ErrorKind::InvalidInput, "moment index i is 1-based");
    spec.target = i - 1;
    return spec;
  });
}

Json moment_report_to_json(const MomentReport& report) {
  Json out = spec_to_json(report.spec);
  out["value_quadrature"] = report.value_quadrature;
  out["value_homology"] = report.value_homology ? Json(*report.value_homology) : Json(nullptr);
  out["agreement"] = report.agreement ? Json(*report.agreement) : Json(nullptr);
  return out;
}

MomentReport moment_report_from_json(const Json& doc) {
  return guarded("moment report", [&] {
    MomentReport r;
    r.spec = spec_from_json(doc);
    r.value_quadrature = require(doc, "value_quadrature").get<double>();
    if (doc.contains("value_homology") && !doc.at("value_homology").is_null()) {
      r.value_homology = doc.at("value_homology").get<double>();
    }
    if (doc.contains("agreement") && !doc.at("agreement").is_null()) {
      r.agreement = doc.at("agreement").get<double>();
    }
    return r;
  });
}

Json scan_to_json(const ScanResult& scan) {
  Json out = {{"result", scan.all_zero ? "all_zero" : "witness"},
              {"bound", scan.bound},
              {"tol", scan.tol},
              {"family", scan.family},
              {"evaluated", scan.evaluated}};
  if (scan.witness) {
    out["witness"] = spec_to_json(*scan.witness);
    out["value"] = scan.witness_value;
    out["gate"] = scan.witness_gate;
  }
  return out;
}

Json faces_to_json(const FaceSet& faces) {
  Json list = Json::array();
  for (const Face& f : faces.faces) {
    list.push_back({{"A", f.area}, {"r", f.inscribed_side}, {"point", vec2_to_json(f.representative)}});
  }
  return {{"faces", std::move(list)},
          {"d", faces.half_side},
          {"r_min", faces.min_side},
          {"A_max", faces.max_area}};
}

Json cube_family_to_json(const CubeFamily& family) {
  Json list = Json::array();
  for (const CertifiedCube& c : family.cubes) {
    list.push_back({{"edge", c.spec.edge},
                    {"center", point_to_json(c.spec.center)},
                    {"radius", c.spec.radius},
                    {"axis", c.spec.axis + 1},
                    {"l_measured", c.measured_l},
                    {"l", c.l},
                    {"L", c.arc_length_l1}});
  }
  return {{"cubes", std::move(list)},
          {"r_T", family.min_radius},
          {"l_T", family.min_l},
          {"L_T", family.max_length_l1},
          {"d", family.half_side}};
}

Json relation_to_json(const RelationSearch& search) {
  Json out = {{"result", search.found ? "relation" : "no_relation_found"},
              {"height", search.height},
              {"method", search.method},
              {"certificate", "heuristic"}};
  if (search.found) {
    out["relation"] = search.relation;
    out["residual"] = search.residual;
  }
  return out;
}

Json flags_to_json(const ConditionFlags& flags) {
  return {{"a", flags.contractible},
          {"a_by_reduction", flags.contractible_by_reduction},
          {"d", flags.homologically_trivial},
          {"covers", flags.covers},
          {"consistent", flags.consistent}};
}

Json verdict_to_json(const CenterVerdict& v) {
  Json residuals = Json::array();
  for (const ReturnResidual& r : v.residuals) residuals.push_back({{"v0", r.v0}, {"residual", r.residual}});
  Json out = {{"format", kFormatTag},
              {"decision", std::string(to_string(v.decision))},
              {"rule", v.rule},
              {"reason", v.reason},
              {"bound", v.bound},
              {"m_complex", v.betti_complex},
              {"m_image", v.betti_image},
              {"word", word_to_json(v.word)},
              {"flags", flags_to_json(v.flags)},
              {"class_a", v.class_a},
              {"residuals", std::move(residuals)},
              {"residual_gate", v.residual_gate}};
  if (v.scan) out["scan"] = scan_to_json(*v.scan);
  if (v.witness) {
    out["witness"] = spec_to_json(*v.witness);
    out["witness_value"] = v.witness_value;
  }
  if (v.area_relation) out["area_relation"] = relation_to_json(*v.area_relation);
  return out;
}

Json tensor_to_json(const TensorPolynomial& p) {
  return {{"dim", p.dim}, {"degree", p.degree}, {"coefficients", p.coefficients}};
}

Json direction_to_json(const DirectionPair& v) {
  return {{"v1", v.v1}, {"v2", v.v2}, {"seed", v.seed}};
}

}  // namespace moment_atlas
