#include "moment_atlas_tools/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "moment_atlas/approx.hpp"
#include "moment_atlas/center.hpp"
#include "moment_atlas/errors.hpp"
#include "moment_atlas/fixtures.hpp"
#include "moment_atlas/io.hpp"
#include "moment_atlas/projection.hpp"
#include "moment_atlas/report.hpp"
#include "moment_atlas/topology.hpp"
#include "moment_atlas_tools/acceptance.hpp"

namespace moment_atlas::cli {

namespace {

struct Settings {
  std::string input;
  std::vector<std::string> paths;
  std::string cubes_file;
  std::string bound = "auto";
  std::string pipeline = "both";
  std::string fn = "abs";
  std::string out_file;
  std::string fixture;
  double tol = 1e-9;
  double eps = -1.0;
  double side = 1.0;
  std::uint64_t seed = 0;
  unsigned max_degree = 2;
  unsigned degree = 4;
  unsigned k = 2;
  std::size_t dim = 3;
  std::size_t resolution = 0;
  int only = 0;
  bool center = false;
  bool assume_q = false;
  bool no_residuals = false;
};

Pipeline parse_pipeline(const std::string& name) {
  if (name == "quad") return Pipeline::Quadrature;
  if (name == "homology") return Pipeline::Homology;
  return Pipeline::Both;
}

CurveComplex load_complex(const std::string& file) { return complex_from_json(read_json_file(file)); }

// The path comes from its own file or, when omitted, from the bundle that
// also holds the complex.
SampledPath load_path(const Settings& s) {
  if (!s.paths.empty()) return path_from_json(read_json_file(s.paths.front()));
  return path_from_json(read_json_file(s.input));
}

std::optional<std::vector<CubeSpec>> load_cubes(const Settings& s) {
  if (!s.cubes_file.empty()) return cubes_from_json(read_json_file(s.cubes_file));
  const Json doc = read_json_file(s.input);
  if (doc.is_object() && doc.contains("cubes")) return cubes_from_json(doc);
  return std::nullopt;
}

std::uint64_t auto_bound(const CurveComplex& complex, const Settings& s) {
  if (complex.dim() == 2) return n_bound_2d(extract_faces(complex, s.eps));
  return n_bound_nd(complex, load_cubes(s)).bound;
}

struct Builtin {
  Function f;
  double lipschitz;
};

Builtin builtin_function(const std::string& name) {
  if (name == "abs") return {[](std::span<const double> x) { return std::abs(x[0]); }, 1.0};
  if (name == "norm_inf") {
    return {[](std::span<const double> x) {
              double m = 0.0;
              for (double v : x) m = std::max(m, std::abs(v));
              return m;
            },
            1.0};
  }
  if (name == "norm2") {
    return {[](std::span<const double> x) {
              double s = 0.0;
              for (double v : x) s += v * v;
              return std::sqrt(s);
            },
            1.0};
  }
  if (name == "tent") return {[](std::span<const double> x) { return std::max(0.0, 1.0 - 2.0 * std::abs(x[0])); }, 2.0};
  if (name == "const") return {[](std::span<const double>) { return 1.0; }, 0.0};
  throw Error(ErrorKind::InvalidInput, "unknown builtin function " + name + " (abs, norm_inf, norm2, tent, const)");
}

Json cmd_analyze(const Settings& s) {
  const Json doc = read_json_file(s.input);
  const CurveComplex complex = complex_from_json(doc);
  std::vector<SampledPath> paths;
  if (!s.paths.empty()) {
    for (const auto& file : s.paths) paths.push_back(path_from_json(read_json_file(file)));
  } else if (doc.is_object() && doc.contains("paths")) {
    for (const Json& p : doc.at("paths")) paths.push_back(path_from_json(p));
  }
  AnalyzeOptions o;
  o.max_degree = s.max_degree;
  o.pipeline = parse_pipeline(s.pipeline);
  o.cubes = load_cubes(s);
  o.face_eps = s.eps;
  o.center = s.center;
  o.decide.tol = s.tol;
  o.decide.seed = s.seed;
  o.decide.assume_q_independent = s.assume_q;
  o.decide.residuals = !s.no_residuals;
  return report_to_json(analyze(complex, paths, o));
}

Json cmd_nbound(const Settings& s) {
  const CurveComplex complex = load_complex(s.input);
  if (complex.dim() == 2) {
    const FaceSet faces = extract_faces(complex, s.eps);
    Json out = faces_to_json(faces);
    out["m"] = betti1(complex);
    out["N"] = n_bound_2d(faces);
    return out;
  }
  const NdBound b = n_bound_nd(complex, load_cubes(s));
  Json out = cube_family_to_json(b.family);
  out["m"] = betti1(complex);
  out["N"] = b.bound;
  return out;
}

Json cmd_homology(const Settings& s) {
  const CurveComplex complex = load_complex(s.input);
  const SampledPath path = load_path(s);
  const EdgeWord word = trace_path(path, complex);
  const CycleBasis basis = cycle_basis(complex, s.seed);
  const auto coefficients = homology_coefficients(word, basis);
  const auto reduced = reduce_word(word, basis);
  return {{"m", basis.rank()},
          {"chords", basis.chords},
          {"coefficients", coefficients},
          {"reduced_word", reduced},
          {"contractible", reduced.empty()},
          {"homologically_trivial",
           std::all_of(coefficients.begin(), coefficients.end(), [](long long n) { return n == 0; })},
          {"euler_class", std::string(to_string(euler_classify(complex).cls))},
          {"word", word_to_json(word)}};
}

Json cmd_euler(const Settings& s) {
  const CurveComplex complex = load_complex(s.input);
  const EulerResult r = euler_classify(complex);
  return {{"class", std::string(to_string(r.cls))}, {"trail", word_to_json(r.trail)}, {"cyclic", r.cyclic()}};
}

Json cmd_moments(const Settings& s) {
  const CurveComplex complex = load_complex(s.input);
  const SampledPath path = load_path(s);
  std::optional<FaceSet> faces;
  const Pipeline pipeline = parse_pipeline(s.pipeline);
  if (complex.dim() == 2 && pipeline != Pipeline::Quadrature) faces = extract_faces(complex, s.eps);
  Json out = Json::array();
  for (const MomentReport& r : compute_moments(path, all_specs(path.dim(), s.max_degree), pipeline,
                                               faces ? &*faces : nullptr)) {
    out.push_back(moment_report_to_json(r));
  }
  return out;
}

Json cmd_scan(const Settings& s) {
  const CurveComplex complex = load_complex(s.input);
  const SampledPath path = load_path(s);
  std::uint64_t bound = 0;
  if (s.bound == "auto") {
    bound = auto_bound(complex, s);
  } else {
    try {
      bound = std::stoull(s.bound);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidInput, "--bound must be auto or a non-negative integer");
    }
  }
  return scan_to_json(vanishing_scan(path, static_cast<unsigned>(bound), s.tol));
}

Json cmd_project(const Settings& s) {
  const SampledPath path = path_from_json(read_json_file(s.input));
  const DirectionPair v = sample_direction(s.seed, path.dim());
  const SampledPath projected = project(path, v);
  Json moments = Json::array();
  Json expansion = Json::array();
  for (unsigned d = 0; d <= s.degree; ++d) {
    const auto [first, second] = restricted_moment(projected, d);
    moments.push_back({{"d", d}, {"values", {first, second}}});
    if (d <= kMaxExpansionDegree) {
      const ExpansionComparison c = expansion_compare(path, v, d, s.tol);
      expansion.push_back(
          {{"d", d}, {"projected", c.projected}, {"expanded", c.expanded}, {"agrees", c.agrees}});
    }
  }
  return {{"direction", direction_to_json(v)},
          {"projected", path_to_json(projected)},
          {"restricted_moments", std::move(moments)},
          {"expansion", std::move(expansion)}};
}

Json cmd_approx(const Settings& s) {
  const Builtin b = builtin_function(s.fn);
  const TensorPolynomial p = approximate(b.f, s.dim, s.k);
  std::size_t resolution = s.resolution;
  if (resolution == 0) resolution = s.dim == 1 ? 10001 : s.dim == 2 ? 201 : 21;
  Json out = tensor_to_json(p);
  out["function"] = s.fn;
  out["lipschitz"] = b.lipschitz;
  out["measured_error"] = sup_error(b.f, p, resolution);
  out["bound"] = error_bound(s.dim, s.k, b.lipschitz);
  out["operator_constant"] = kOperatorConstant;
  return out;
}

Json cmd_center(const Settings& s) {
  const CurveComplex complex = load_complex(s.input);
  const OdeSystem sys = OdeSystem::create(load_path(s));
  DecideOptions o;
  o.assume_q_independent = s.assume_q;
  o.cubes = load_cubes(s);
  o.tol = s.tol;
  o.seed = s.seed;
  o.face_eps = s.eps;
  o.residuals = !s.no_residuals;
  return verdict_to_json(decide(sys, complex, o));
}

Json cmd_fixtures(const Settings& s) {
  if (s.fixture == "list") return fixture_names();
  const Json bundle = fixture_to_json(make_fixture(s.fixture, s.k, s.dim, s.side));
  if (s.out_file.empty()) return bundle;
  std::ofstream file(s.out_file);
  if (!file) throw Error(ErrorKind::InvalidInput, "cannot write " + s.out_file);
  file << bundle.dump(2) << '\n';
  const Json& complex = bundle.at("complex");
  return {{"written", s.out_file},
          {"name", s.fixture},
          {"V", complex.at("vertices").size()},
          {"E", complex.at("edges").size()}};
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moment and center analysis for piecewise-linear curves", "moment-atlas"};
  app.require_subcommand(1);
  Settings s;
  std::function<Json()> action;
  std::function<int()> text_action;

  auto add_tol = [&](CLI::App* c) { c->add_option("--tol", s.tol, "Vanishing tolerance")->check(CLI::PositiveNumber); };
  auto add_eps = [&](CLI::App* c) { c->add_option("--eps", s.eps, "Inscribed-square bracket width"); };
  auto add_seed = [&](CLI::App* c) { c->add_option("--seed", s.seed, "Seed for tie breaking and sampling"); };
  auto add_cubes = [&](CLI::App* c) { c->add_option("--cubes", s.cubes_file, "Cube family JSON")->check(CLI::ExistingFile); };
  auto add_pipeline = [&](CLI::App* c) {
    c->add_option("--pipeline", s.pipeline, "quad, homology or both")
        ->check(CLI::IsMember({"quad", "homology", "both"}));
  };
  auto complex_and_path = [&](CLI::App* c) {
    c->add_option("complex", s.input, "Complex or fixture bundle JSON")->required()->check(CLI::ExistingFile);
    c->add_option("path", s.paths, "Path JSON (defaults to the bundle's first path)")
        ->expected(0, 1)
        ->check(CLI::ExistingFile);
  };

  auto* analyze = app.add_subcommand("analyze", "Full report for a complex and its paths");
  analyze->add_option("complex", s.input, "Complex or fixture bundle JSON")->required()->check(CLI::ExistingFile);
  analyze->add_option("paths", s.paths, "Path JSON files")->check(CLI::ExistingFile);
  analyze->add_option("--max-degree", s.max_degree, "Largest total moment degree");
  add_pipeline(analyze);
  add_cubes(analyze);
  add_eps(analyze);
  add_tol(analyze);
  add_seed(analyze);
  analyze->add_flag("--center", s.center, "Decide the center problem for the first path");
  analyze->add_flag("--assume-q-independent", s.assume_q, "Treat face areas as rationally independent");
  analyze->add_flag("--no-residuals", s.no_residuals, "Skip return-map integration");
  analyze->callback([&] { action = [&] { return cmd_analyze(s); }; });

  auto* nbound = app.add_subcommand("nbound", "Degree bound for the moment family");
  nbound->add_option("complex", s.input, "Complex JSON")->required()->check(CLI::ExistingFile);
  add_cubes(nbound);
  add_eps(nbound);
  nbound->callback([&] { action = [&] { return cmd_nbound(s); }; });

  auto* homology = app.add_subcommand("homology", "Homology class and contractibility of a path");
  complex_and_path(homology);
  add_seed(homology);
  homology->callback([&] { action = [&] { return cmd_homology(s); }; });

  auto* euler = app.add_subcommand("euler", "Eulerian classification of a complex");
  euler->add_option("complex", s.input, "Complex JSON")->required()->check(CLI::ExistingFile);
  euler->callback([&] { action = [&] { return cmd_euler(s); }; });

  auto* moments = app.add_subcommand("moments", "All moments up to a total degree");
  complex_and_path(moments);
  moments->add_option("--max-degree", s.max_degree, "Largest total degree");
  add_pipeline(moments);
  add_eps(moments);
  moments->callback([&] { action = [&] { return cmd_moments(s); }; });

  auto* scan = app.add_subcommand("scan", "Scan the degree-bounded index family for a nonvanishing moment");
  complex_and_path(scan);
  scan->add_option("--bound", s.bound, "auto or an explicit degree bound");
  add_tol(scan);
  add_cubes(scan);
  add_eps(scan);
  scan->callback([&] { action = [&] { return cmd_scan(s); }; });

  auto* project = app.add_subcommand("project", "Planar projection and expansion identity");
  project->add_option("path", s.input, "Path JSON (n >= 3)")->required()->check(CLI::ExistingFile);
  add_seed(project);
  project->add_option("--degree", s.degree, "Largest restricted-moment degree");
  add_tol(project);
  project->callback([&] { action = [&] { return cmd_project(s); }; });

  auto* approx = app.add_subcommand("approx", "Tensor Chebyshev approximation of a builtin function");
  approx->add_option("--dim", s.dim, "Dimension")->required()->check(CLI::PositiveNumber);
  approx->add_option("--degree", s.k, "Degree per variable")->required()->check(CLI::PositiveNumber);
  approx->add_option("--fn", s.fn, "abs, norm_inf, norm2, tent or const");
  approx->add_option("--resolution", s.resolution, "Points per axis of the error grid");
  approx->callback([&] { action = [&] { return cmd_approx(s); }; });

  auto* center = app.add_subcommand("center", "Decide whether an Abel system has a universal center");
  complex_and_path(center);
  center->add_flag("--assume-q-independent", s.assume_q, "Treat face areas as rationally independent");
  add_cubes(center);
  add_tol(center);
  add_seed(center);
  add_eps(center);
  center->add_flag("--no-residuals", s.no_residuals, "Skip return-map integration");
  center->callback([&] { action = [&] { return cmd_center(s); }; });

  auto* fixtures = app.add_subcommand("fixtures", "Emit a fixture bundle (or `list`)");
  fixtures->add_option("name", s.fixture, "Fixture name")->required();
  fixtures->add_option("--k", s.k, "Subdivisions per axis")->check(CLI::PositiveNumber);
  fixtures->add_option("--n", s.dim, "Dimension of cube_grid");
  fixtures->add_option("--side", s.side, "Second square side of the figure eight");
  fixtures->add_option("--out", s.out_file, "Write the bundle here instead of stdout");
  fixtures->callback([&] { action = [&] { return cmd_fixtures(s); }; });

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--only", s.only, "Run a single criterion");
  selftest->callback([&] {
    text_action = [&] {
      const auto only = s.only > 0 ? std::optional<int>(s.only) : std::nullopt;
      return acceptance::run_all(out, only) == 0 ? kExitOk : 1;
    };
  });

  std::vector<const char*> argv;
  argv.push_back("moment-atlas");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (text_action) return text_action();
    out << action().dump(2) << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_precondition() ? kExitPrecondition : kExitValidation;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace moment_atlas::cli
