#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "moment_atlas/errors.hpp"
#include "moment_atlas/fixtures.hpp"
#include "moment_atlas/io.hpp"
#include "moment_atlas/report.hpp"

namespace ma = moment_atlas;

namespace {

ma::ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ma::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ma::ErrorKind::InvalidInput;
}

}  // namespace

TEST(Io, PathRoundTrip) {
  const auto p = ma::random_closed_path(2, 3, 6);
  const auto q = ma::path_from_json(ma::path_to_json(p));
  ASSERT_EQ(q.size(), p.size());
  EXPECT_EQ(q.closed(), p.closed());
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_EQ(q.t(i), p.t(i));
    EXPECT_EQ(q.point(i), p.point(i));
  }
}

TEST(Io, ComplexRoundTrip) {
  const auto g = ma::grid(2);
  const auto c = ma::complex_from_json(ma::complex_to_json(g.complex));
  EXPECT_EQ(c.vertices(), g.complex.vertices());
  ASSERT_EQ(c.num_edges(), g.complex.num_edges());
  for (std::size_t e = 0; e < c.num_edges(); ++e) {
    EXPECT_EQ(c.edge(e).from, g.complex.edge(e).from);
    EXPECT_EQ(c.edge(e).to, g.complex.edge(e).to);
    EXPECT_EQ(c.edge(e).points, g.complex.edge(e).points);
  }
}

TEST(Io, WordSpecAndCubes) {
  const auto fx = ma::figure_eight();
  const auto w = ma::random_closed_word(fx.complex, 3, 5);
  EXPECT_EQ(ma::word_from_json(ma::word_to_json(w)), w);

  const ma::MomentSpec s{{2, 0, 1}, 2};
  const auto js = ma::spec_to_json(s);
  EXPECT_EQ(js.at("i").get<int>(), 3);
  EXPECT_EQ(ma::spec_from_json(js), s);

  const auto cg = ma::cube_grid(3, 1);
  const auto cubes = ma::cubes_from_json(ma::cubes_to_json(*cg.cubes));
  ASSERT_EQ(cubes.size(), cg.cubes->size());
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    EXPECT_EQ(cubes[i].edge, (*cg.cubes)[i].edge);
    EXPECT_EQ(cubes[i].axis, (*cg.cubes)[i].axis);
    EXPECT_EQ(cubes[i].center, (*cg.cubes)[i].center);
    EXPECT_EQ(cubes[i].declared_l, (*cg.cubes)[i].declared_l);
  }
}

TEST(Io, MomentReportRoundTrip) {
  ma::MomentReport r{{{1, 2}, 1}, 0.25, 0.25 + 1e-17, 1e-17};
  EXPECT_EQ(ma::moment_report_from_json(ma::moment_report_to_json(r)), r);
  ma::MomentReport bare{{{0, 3}, 0}, -1.5, std::nullopt, std::nullopt};
  EXPECT_EQ(ma::moment_report_from_json(ma::moment_report_to_json(bare)), bare);
}

TEST(Io, FixtureBundleRoundTrip) {
  for (const auto& name : ma::fixture_names()) {
    const auto fx = ma::make_fixture(name, 2, 3);
    const auto doc = ma::fixture_to_json(fx);
    EXPECT_EQ(doc.at("format"), ma::kFormatTag);
    const auto back = ma::fixture_from_json(doc);
    EXPECT_EQ(back.name, fx.name);
    EXPECT_EQ(back.complex.num_edges(), fx.complex.num_edges());
    EXPECT_EQ(back.paths.size(), fx.paths.size());
    EXPECT_EQ(back.cubes.has_value(), fx.cubes.has_value());
    EXPECT_EQ(ma::fixture_to_json(back), doc) << name;
  }
}

TEST(Io, RejectsMalformedInput) {
  EXPECT_EQ(kind_of([] { ma::path_from_json(ma::Json::parse(R"({"dim": 2})")); }), ma::ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { ma::path_from_json(ma::Json::parse(R"({"format": "other/9", "dim": 1, "closed": false,
                                                               "samples": [[0, 0], [1, 1]]})")); }),
            ma::ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { ma::complex_from_json(ma::Json::array()); }), ma::ErrorKind::InvalidInput);
  EXPECT_EQ(kind_of([] { ma::spec_from_json(ma::Json::parse(R"({"d": [1, 0], "i": 0})")); }), ma::ErrorKind::InvalidInput);
}

TEST(Io, ReportRoundTrip) {
  const auto fx = ma::figure_eight();
  ma::AnalyzeOptions opts;
  opts.center = true;
  opts.decide.residuals = false;
  const auto report = ma::analyze(fx.complex, fx.paths, opts);
  const auto back = ma::report_from_json(report_to_json(report));
  EXPECT_EQ(back, report);
  EXPECT_EQ(report.complex.betti, 2u);
  EXPECT_EQ(report.faces.size(), 2u);
  ASSERT_TRUE(report.bound_planar.has_value());

  auto doc = ma::report_to_json(report);
  doc["format"] = "moment-atlas/0";
  EXPECT_EQ(kind_of([&] { ma::report_from_json(doc); }), ma::ErrorKind::InvalidInput);
}

TEST(Report, AllSpecsEnumeration) {
  const auto specs = ma::all_specs(2, 3);
  // 10 multi-indices with total <= 3, two targets each
  EXPECT_EQ(specs.size(), 20u);
  EXPECT_TRUE(std::is_sorted(specs.begin(), specs.end()));
  EXPECT_EQ(ma::all_specs(3, 2).size(), 10u * 3u);
}

TEST(Report, GridSummary) {
  const auto g = ma::grid(2);
  const auto r = ma::analyze(g.complex, g.paths);
  EXPECT_EQ(r.complex.vertices, 9u);
  EXPECT_EQ(r.complex.edges, 12u);
  EXPECT_EQ(r.complex.betti, 4u);
  EXPECT_EQ(r.complex.euler_class, "not_traversable");
  EXPECT_EQ(r.bound_planar.value(), 43u);
  ASSERT_EQ(r.moments.size(), 1u);
  for (const auto& m : r.moments.front()) EXPECT_LE(m.agreement.value(), 1e-9 * (1 + std::abs(m.value_quadrature)));
}
