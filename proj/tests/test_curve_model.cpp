#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "moment_atlas/errors.hpp"
#include "moment_atlas/fixtures.hpp"

namespace ma = moment_atlas;

namespace {

ma::SampledPath polygon(double cx, double cy, double radius, std::size_t sides, double phase) {
  std::vector<ma::Point> pts;
  for (std::size_t j = 0; j <= sides; ++j) {
    const double a = phase + 2.0 * std::numbers::pi * static_cast<double>(j % sides) / static_cast<double>(sides);
    pts.push_back({cx + radius * std::cos(a), cy + radius * std::sin(a)});
  }
  return ma::SampledPath::from_points(std::move(pts), true);
}

// Pairwise segment intersections between two closed polygons, rounded to 1e-9.
std::set<std::pair<long long, long long>> crossings(const ma::SampledPath& p, const ma::SampledPath& q) {
  std::set<std::pair<long long, long long>> out;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    for (std::size_t j = 0; j + 1 < q.size(); ++j) {
      const auto& a = p.point(i);
      const auto& b = p.point(i + 1);
      const auto& c = q.point(j);
      const auto& d = q.point(j + 1);
      const double rx = b[0] - a[0], ry = b[1] - a[1], sx = d[0] - c[0], sy = d[1] - c[1];
      const double den = rx * sy - ry * sx;
      if (std::abs(den) < 1e-15) continue;
      const double t = ((c[0] - a[0]) * sy - (c[1] - a[1]) * sx) / den;
      const double u = ((c[0] - a[0]) * ry - (c[1] - a[1]) * rx) / den;
      if (t < -1e-12 || t > 1 + 1e-12 || u < -1e-12 || u > 1 + 1e-12) continue;
      out.emplace(std::llround((a[0] + t * rx) * 1e9), std::llround((a[1] + t * ry) * 1e9));
    }
  }
  return out;
}

}  // namespace

TEST(SampledPath, SnapsClosingPointAndRejectsGaps) {
  auto p = ma::SampledPath::from_points({{0, 0}, {1, 0}, {1, 1}, {1e-12, 0}}, true);
  EXPECT_EQ(p.point(0), p.point(p.size() - 1));
  EXPECT_THROW(ma::SampledPath::from_points({{0, 0}, {1, 0}, {1, 1}, {0.5, 0}}, true), ma::Error);
}

TEST(SampledPath, RejectsDecreasingParameter) {
  std::vector<ma::Sample> s = {{0.0, {0, 0}}, {1.0, {1, 0}}, {0.5, {1, 1}}};
  EXPECT_THROW(ma::SampledPath::create(2, s, false), ma::Error);
}

TEST(SampledPath, Lengths) {
  auto p = ma::SampledPath::from_points({{0, 0}, {1, 0}, {1, 2}, {0, 0}}, true);
  EXPECT_DOUBLE_EQ(p.l1_length(), 1 + 2 + 3);
  EXPECT_DOUBLE_EQ(p.max_abs_coordinate(), 2);
  EXPECT_DOUBLE_EQ(p.parameter_length(), 3);
}

TEST(BuildComplex, TangentCirclesShareOneVertex) {
  const double phase = 0.0;
  auto left = polygon(-1, 0, 1, 64, phase);
  auto right = polygon(1, 0, 1, 64, std::numbers::pi);
  const auto oracle = crossings(left, right);
  ASSERT_EQ(oracle.size(), 1u);

  auto c = ma::build_complex({left, right});
  EXPECT_EQ(c.num_vertices(), oracle.size());
  EXPECT_EQ(c.num_edges(), 2u);
  for (const auto& e : c.edges()) EXPECT_TRUE(e.is_loop());
  EXPECT_NEAR(c.vertex(0)[0], 0.0, 1e-12);
  EXPECT_NEAR(c.vertex(0)[1], 0.0, 1e-12);
}

TEST(BuildComplex, SquareIsOneLoop) {
  auto sq = ma::ccw_unit_square();
  EXPECT_EQ(sq.complex.num_vertices(), 1u);
  EXPECT_EQ(sq.complex.num_edges(), 1u);
}

TEST(BuildComplex, GridCounts) {
  for (unsigned k = 1; k <= 5; ++k) {
    auto g = ma::grid(k);
    EXPECT_EQ(g.complex.num_vertices(), (k + 1) * (k + 1)) << k;
    EXPECT_EQ(g.complex.num_edges(), 2 * k * (k + 1)) << k;
  }
}

TEST(BuildComplex, RebuildIsIdempotent) {
  auto g = ma::grid(3);
  std::vector<ma::SampledPath> edges;
  for (std::size_t e = 0; e < g.complex.num_edges(); ++e) {
    edges.push_back(ma::realize_word({{{e, 1}}, g.complex.edge(e).from}, g.complex));
  }
  auto again = ma::build_complex(edges);
  EXPECT_EQ(again.num_vertices(), g.complex.num_vertices());
  EXPECT_EQ(again.num_edges(), g.complex.num_edges());
}

TEST(BuildComplex, OpenPathEndpointsStayVertices) {
  auto p = ma::SampledPath::from_points({{0, 0}, {1, 0}, {2, 0}}, false);
  auto c = ma::build_complex({p});
  EXPECT_EQ(c.num_vertices(), 2u);
  EXPECT_EQ(c.num_edges(), 1u);
}

TEST(CurveComplex, RejectsDisconnected) {
  auto a = ma::SampledPath::from_points({{0, 0}, {1, 0}}, false);
  auto b = ma::SampledPath::from_points({{0, 1}, {1, 1}}, false);
  try {
    ma::build_complex({a, b});
    FAIL() << "expected ComplexDisconnected";
  } catch (const ma::Error& e) {
    EXPECT_EQ(e.kind(), ma::ErrorKind::ComplexDisconnected);
  }
}

TEST(TracePath, RoundTripOnRandomWords) {
  for (const auto& fx : {ma::grid(2), ma::figure_eight(), ma::tree()}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto w = ma::random_closed_word(fx.complex, seed, 12);
      auto traced = ma::trace_path(ma::realize_word(w, fx.complex), fx.complex);
      EXPECT_EQ(traced, w) << fx.name << " seed " << seed;
    }
  }
}

TEST(TracePath, RetracedLoopRepeatsLetter) {
  auto sq = ma::ccw_unit_square();
  const auto& once = sq.paths.front();
  std::vector<ma::Point> pts;
  for (int rep = 0; rep < 2; ++rep) {
    for (std::size_t i = 0; i + 1 < once.size(); ++i) pts.push_back(once.point(i));
  }
  pts.push_back(once.point(0));
  auto w = ma::trace_path(ma::SampledPath::from_points(pts, true), sq.complex);
  const auto single = ma::trace_path(once, sq.complex);
  ASSERT_EQ(single.size(), 1u);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w.letters[0], single.letters[0]);
  EXPECT_EQ(w.letters[1], single.letters[0]);
}

TEST(TracePath, ConstantPathIsEmpty) {
  auto g = ma::grid(1);
  const auto v = g.complex.vertex(0);
  auto w = ma::trace_path(ma::SampledPath::from_points({v, v, v}, true), g.complex);
  EXPECT_TRUE(w.empty());
  EXPECT_EQ(w.start, 0u);
}

TEST(TracePath, ExcursionLeavesNoLetter) {
  auto sq = ma::ccw_unit_square();
  auto w = ma::trace_path(ma::SampledPath::from_points({{0, 0}, {0.5, 0}, {0, 0}}, true), sq.complex);
  EXPECT_TRUE(w.empty());
}

TEST(TracePath, OffCurveReportsSample) {
  auto sq = ma::ccw_unit_square();
  auto p = ma::SampledPath::from_points({{0, 0}, {0.5, 0.5}, {0, 0}}, true);
  try {
    ma::trace_path(p, sq.complex);
    FAIL() << "expected PathOffCurve";
  } catch (const ma::PathOffCurve& e) {
    EXPECT_EQ(e.sample_index(), 1u);
    EXPECT_NEAR(e.distance(), 0.5, 1e-12);
    EXPECT_TRUE(e.is_precondition());
  }
}

TEST(Words, InverseAndConcat) {
  auto fx = ma::figure_eight();
  auto w = ma::random_closed_word(fx.complex, 7, 6);
  auto ww = ma::concat(w, ma::inverse(fx.complex, w));
  EXPECT_TRUE(ma::is_closed(fx.complex, ww));
  EXPECT_EQ(ww.size(), 2 * w.size());
  EXPECT_NO_THROW(ma::validate_word(fx.complex, ww));
  auto g = ma::grid(1);
  EXPECT_THROW(ma::validate_word(g.complex, {{{0, 1}, {0, 1}}, g.complex.edge(0).from}), ma::Error);
}
