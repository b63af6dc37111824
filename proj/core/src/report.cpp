#include "moment_atlas/report.hpp"

#include <algorithm>
#include <cmath>

#include "moment_atlas/errors.hpp"
#include "moment_atlas/topology.hpp"

namespace moment_atlas {

namespace {

void enumerate_degrees(std::vector<unsigned>& d, std::size_t axis, unsigned left,
                       std::vector<std::vector<unsigned>>& out) {
  if (axis + 1 == d.size()) {
    for (unsigned v = 0; v <= left; ++v) {
      d[axis] = v;
      out.push_back(d);
    }
    return;
  }
  for (unsigned v = 0; v <= left; ++v) {
    d[axis] = v;
    enumerate_degrees(d, axis + 1, left - v, out);
  }
}

}  // namespace

ComplexSummary summarize(const CurveComplex& complex) {
  return {complex.dim(), complex.num_vertices(), complex.num_edges(), betti1(complex),
          std::string(to_string(euler_classify(complex).cls))};
}

std::vector<MomentSpec> all_specs(std::size_t dim, unsigned max_total) {
  if (dim == 0) throw Error(ErrorKind::InvalidInput, "dimension must be positive");
  std::vector<std::vector<unsigned>> degrees;
  std::vector<unsigned> d(dim, 0);
  enumerate_degrees(d, 0, max_total, degrees);
  std::vector<MomentSpec> specs;
  for (auto& deg : degrees) {
    for (std::size_t i = 0; i < dim; ++i) specs.push_back({deg, i});
  }
  std::sort(specs.begin(), specs.end());
  return specs;
}

std::vector<MomentReport> compute_moments(const SampledPath& path, const std::vector<MomentSpec>& specs,
                                          Pipeline pipeline, const FaceSet* faces) {
  std::vector<long long> coeffs;
  const bool homology = pipeline != Pipeline::Quadrature && faces && path.dim() == 2 && path.closed();
  if (homology) coeffs = face_coefficients(path, *faces);

  std::vector<MomentReport> out;
  out.reserve(specs.size());
  for (const MomentSpec& spec : specs) {
    MomentReport r;
    r.spec = spec;
    if (pipeline != Pipeline::Homology) r.value_quadrature = moment_quadrature(path, spec);
    if (homology) {
      r.value_homology = moment_via_homology(*faces, coeffs, spec);
      if (pipeline == Pipeline::Homology) {
        r.value_quadrature = *r.value_homology;
      } else {
        r.agreement = std::abs(r.value_quadrature - *r.value_homology);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

AnalysisReport analyze(const CurveComplex& complex, const std::vector<SampledPath>& paths,
                       const AnalyzeOptions& options) {
  AnalysisReport report;
  report.complex = summarize(complex);

  std::optional<FaceSet> faces;
  if (complex.dim() == 2) {
    faces = extract_faces(complex, options.face_eps);
    for (const Face& f : faces->faces) report.faces.push_back({f.area, f.inscribed_side, f.representative});
    report.half_side = faces->half_side;
    report.bound_planar = n_bound_2d(*faces);
  } else {
    report.bound_cubes = n_bound_nd(complex, options.cubes).bound;
  }

  const auto specs = all_specs(complex.dim(), options.max_degree);
  for (const SampledPath& p : paths) {
    if (p.dim() != complex.dim()) throw Error(ErrorKind::InvalidInput, "path and complex differ in dimension");
    report.moments.push_back(compute_moments(p, specs, options.pipeline, faces ? &*faces : nullptr));
  }

  if (options.center) {
    if (paths.empty()) throw Error(ErrorKind::InvalidInput, "center analysis needs a coefficient path");
    DecideOptions decide_options = options.decide;
    if (options.cubes) decide_options.cubes = options.cubes;
    decide_options.face_eps = options.face_eps;
    report.center = verdict_to_json(decide(OdeSystem::create(paths.front()), complex, decide_options));
  }
  return report;
}

Json report_to_json(const AnalysisReport& report) {
  Json faces = Json::array();
  for (const FaceSummary& f : report.faces) {
    faces.push_back({{"A", f.area}, {"r", f.side}, {"point", {f.representative.x, f.representative.y}}});
  }
  Json moments = Json::array();
  for (const auto& list : report.moments) {
    Json entries = Json::array();
    for (const MomentReport& r : list) entries.push_back(moment_report_to_json(r));
    moments.push_back(std::move(entries));
  }
  Json out = {{"format", report.format},
              {"complex",
               {{"dim", report.complex.dim},
                {"V", report.complex.vertices},
                {"E", report.complex.edges},
                {"m", report.complex.betti},
                {"euler", report.complex.euler_class}}},
              {"faces", std::move(faces)},
              {"moments", std::move(moments)}};
  if (report.half_side) out["d"] = *report.half_side;
  if (report.bound_planar) out["N_gamma"] = *report.bound_planar;
  if (report.bound_cubes) out["N_cubes"] = *report.bound_cubes;
  if (report.center) out["center"] = *report.center;
  return out;
}

AnalysisReport report_from_json(const Json& doc) {
  try {
    AnalysisReport r;
    r.format = doc.at("format").get<std::string>();
    if (r.format != kFormatTag) throw Error(ErrorKind::InvalidInput, "unsupported format tag " + r.format);
    const Json& c = doc.at("complex");
    r.complex = {c.at("dim").get<std::size_t>(), c.at("V").get<std::size_t>(), c.at("E").get<std::size_t>(),
                 c.at("m").get<std::size_t>(), c.at("euler").get<std::string>()};
    for (const Json& f : doc.at("faces")) {
      const Json& p = f.at("point");
      r.faces.push_back({f.at("A").get<double>(), f.at("r").get<double>(), {p.at(0).get<double>(), p.at(1).get<double>()}});
    }
    for (const Json& list : doc.at("moments")) {
      std::vector<MomentReport> entries;
      for (const Json& m : list) entries.push_back(moment_report_from_json(m));
      r.moments.push_back(std::move(entries));
    }
    if (doc.contains("d")) r.half_side = doc.at("d").get<double>();
    if (doc.contains("N_gamma")) r.bound_planar = doc.at("N_gamma").get<std::uint64_t>();
    if (doc.contains("N_cubes")) r.bound_cubes = doc.at("N_cubes").get<std::uint64_t>();
    if (doc.contains("center")) r.center = doc.at("center");
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed report: ") + e.what());
  }
}

}  // namespace moment_atlas
