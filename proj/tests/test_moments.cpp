#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "moment_atlas/errors.hpp"
#include "moment_atlas/fixtures.hpp"
#include "moment_atlas/moments.hpp"
#include "moment_atlas/report.hpp"
#include "moment_atlas/topology.hpp"

namespace ma = moment_atlas;

namespace {

ma::MomentSpec spec(std::vector<unsigned> d, std::size_t i) { return {std::move(d), i}; }

ma::SampledPath reversed(const ma::SampledPath& p) {
  std::vector<ma::Point> pts;
  for (std::size_t i = p.size(); i-- > 0;) pts.push_back(p.point(i));
  return ma::SampledPath::from_points(pts, p.closed());
}

// Left Riemann sum of the double iterated integral on a uniform parameter grid.
double riemann_iterated(const ma::SampledPath& p, std::size_t i1, std::size_t i2, double h) {
  auto at = [&](double t) {
    std::size_t s = 0;
    while (s + 2 < p.size() && p.t(s + 1) <= t) ++s;
    const double u = (t - p.t(s)) / (p.t(s + 1) - p.t(s));
    ma::Point x(p.dim());
    for (std::size_t c = 0; c < p.dim(); ++c) x[c] = p.point(s)[c] + u * (p.point(s + 1)[c] - p.point(s)[c]);
    return x;
  };
  const double a = p.t(0), b = p.t(p.size() - 1);
  const auto steps = static_cast<std::size_t>(std::llround((b - a) / h));
  double sum = 0;
  auto prev = at(a);
  const double base = prev[i1];
  for (std::size_t s = 1; s <= steps; ++s) {
    const auto cur = at(a + s * h);
    sum += (prev[i1] - base) * (cur[i2] - prev[i2]);
    prev = cur;
  }
  return sum;
}

ma::SampledPath word_path(const ma::Fixture& fx, std::vector<ma::Letter> letters) {
  return ma::realize_word({std::move(letters), 0}, fx.complex);
}

// The letter that runs the loop edge `e` counterclockwise.
ma::Letter ccw_letter(const ma::Fixture& fx, const ma::FaceSet& faces, std::size_t e) {
  const auto n = ma::face_coefficients(ma::realize_word({{{e, 1}}, fx.complex.edge(e).from}, fx.complex), faces);
  long long total = 0;
  for (long long v : n) total += v;
  return {e, total > 0 ? 1 : -1};
}

}  // namespace

TEST(Moments, Examples) {
  const auto sq = ma::ccw_unit_square().paths.front();
  EXPECT_NEAR(ma::moment_quadrature(sq, spec({0, 0}, 0)), 0.0, 1e-15);
  EXPECT_NEAR(ma::moment_quadrature(sq, spec({0, 0}, 1)), 0.0, 1e-15);
  EXPECT_NEAR(ma::moment_quadrature(sq, spec({1, 0}, 1)), 1.0, 1e-15);

  const double coarse = ma::moment_quadrature(ma::circle_pl(512).paths.front(), spec({1, 0}, 1));
  const double dense = ma::moment_quadrature(ma::circle_pl(1 << 16).paths.front(), spec({1, 0}, 1));
  EXPECT_NEAR(coarse, dense, 1e-4);
  EXPECT_NEAR(dense, std::numbers::pi, 1e-8);
}

TEST(Moments, ExactOnSingleSegmentPolynomial) {
  // x = t, y = t^0 constant segment, then back: integral of x^5 dx over [0, 2] is 64/6
  const auto p = ma::SampledPath::from_points({{0, 1}, {2, 1}}, false);
  EXPECT_NEAR(ma::moment_quadrature(p, spec({5, 0}, 0)), 64.0 / 6.0, 1e-12);
  EXPECT_NEAR(ma::moment_quadrature(p, spec({5, 7}, 0)), 64.0 / 6.0, 1e-12);
}

TEST(Moments, EvaluatorAndTableMatchQuadrature) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto p = ma::random_closed_path(seed, 2, 9);
    const ma::MomentEvaluator eval(p, 8);
    const auto table = ma::planar_moment_table(p, 8, 1);
    for (const auto& s : ma::all_specs(2, 8)) {
      const double q = ma::moment_quadrature(p, s);
      EXPECT_NEAR(eval(s), q, 1e-12 * (1 + std::abs(q)));
      if (s.target == 1) EXPECT_NEAR(table.at(s.degrees[0], s.degrees[1]), q, 1e-12 * (1 + std::abs(q)));
    }
  }
}

TEST(Moments, OppositeTraversalsCancel) {
  const auto p = ma::random_closed_path(3, 3, 7);
  std::vector<ma::Point> pts;
  for (std::size_t i = 0; i < p.size(); ++i) pts.push_back(p.point(i));
  // out to a far point and straight back, inserted right after the base point
  pts.insert(pts.begin() + 1, {ma::Point{0.3, -0.2, 0.9}, ma::Point{0, 0, 0}});
  const auto q = ma::SampledPath::from_points(pts, true);
  for (const auto& s : ma::all_specs(3, 4)) {
    EXPECT_NEAR(ma::moment_quadrature(p, s), ma::moment_quadrature(q, s), 1e-12);
  }
}

TEST(IteratedIntegral, Examples) {
  const auto sq = ma::ccw_unit_square().paths.front();
  const std::vector<std::size_t> one = {0};
  EXPECT_NEAR(ma::iterated_integral(sq, one), 0.0, 1e-15);
  const std::vector<std::size_t> same = {0, 0};
  EXPECT_NEAR(ma::iterated_integral(sq, same), 0.0, 1e-15);
  const std::vector<std::size_t> mixed = {0, 1};
  const double value = ma::iterated_integral(sq, mixed);
  EXPECT_NEAR(value, riemann_iterated(sq, 0, 1, 1e-3), 5e-3);
  EXPECT_NEAR(value, 1.0, 1e-14);
}

TEST(IteratedIntegral, MatchesRiemannOracleOnRandomPaths) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto p = ma::random_closed_path(seed, 3, 6, false);
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) {
        const std::vector<std::size_t> idx = {a, b};
        EXPECT_NEAR(ma::iterated_integral(p, idx), riemann_iterated(p, a, b, 1e-4), 2e-3);
      }
    }
  }
}

TEST(IteratedIntegral, ShuffleIdentity) {
  // I(a,b) + I(b,a) = I(a) I(b), and I(a,a,a) = I(a)^3 / 6
  const auto p = ma::random_closed_path(9, 2, 8, false);
  const std::vector<std::size_t> x = {0}, y = {1}, xy = {0, 1}, yx = {1, 0}, xxx = {0, 0, 0};
  const double ix = ma::iterated_integral(p, x), iy = ma::iterated_integral(p, y);
  EXPECT_NEAR(ma::iterated_integral(p, xy) + ma::iterated_integral(p, yx), ix * iy, 1e-12);
  EXPECT_NEAR(ma::iterated_integral(p, xxx), ix * ix * ix / 6, 1e-12);
}

TEST(FaceIntegral, Examples) {
  const auto sq = ma::extract_faces(ma::ccw_unit_square().complex).faces.at(0);
  EXPECT_NEAR(ma::monomial_face_integral(sq, 0, 0), 1.0, 1e-15);
  EXPECT_NEAR(ma::monomial_face_integral(sq, 1, 0), 0.5, 1e-15);
  EXPECT_NEAR(ma::monomial_face_integral(sq, 2, 3), 1.0 / 12.0, 1e-15);
  for (unsigned a = 0; a <= 6; ++a) {
    for (unsigned b = 0; b <= 6; ++b) {
      EXPECT_NEAR(ma::monomial_face_integral(sq, a, b), 1.0 / ((a + 1) * (b + 1)), 1e-14);
    }
  }
  const auto tri = ma::extract_faces(ma::build_complex(
                                         {ma::SampledPath::from_points({{0, 0}, {1, 0}, {0, 1}, {0, 0}}, true)}))
                       .faces.at(0);
  EXPECT_NEAR(ma::monomial_face_integral(tri, 1, 1), 1.0 / 24.0, 1e-15);
  EXPECT_NEAR(ma::monomial_face_integral(tri, 2, 0), 1.0 / 12.0, 1e-15);
}

TEST(Homology, MomentViaFacesExamples) {
  const auto sqfx = ma::ccw_unit_square();
  const auto faces = ma::extract_faces(sqfx.complex);
  const std::vector<long long> one = {1}, zero = {0};
  EXPECT_NEAR(ma::moment_via_homology(faces, one, spec({1, 0}, 1)), 1.0, 1e-15);
  EXPECT_NEAR(ma::moment_via_homology(faces, zero, spec({1, 0}, 1)), 0.0, 1e-15);
  const std::vector<long long> two = {1, 1};
  try {
    ma::moment_via_homology(faces, two, spec({1, 0}, 1));
    FAIL();
  } catch (const ma::Error& e) {
    EXPECT_EQ(e.kind(), ma::ErrorKind::LengthMismatch);
  }

  const auto fig = ma::figure_eight(std::sqrt(2.0));
  const auto ffaces = ma::extract_faces(fig.complex);
  const ma::Letter a = ccw_letter(fig, ffaces, 0), b = ccw_letter(fig, ffaces, 1);
  const auto p = word_path(fig, {a, a, {b.edge, -b.orientation}});
  const auto n = ma::face_coefficients(p, ffaces);
  std::vector<long long> sorted = n;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<long long>{-1, 2}));
  const double expected = n[0] * ffaces.faces[0].area + n[1] * ffaces.faces[1].area;
  EXPECT_NEAR(ma::moment_via_homology(ffaces, n, spec({1, 0}, 1)), expected, 1e-14);
  EXPECT_NEAR(ma::moment_quadrature(p, spec({1, 0}, 1)), expected, 1e-12);
}

TEST(Homology, FaceCoefficientExamples) {
  const auto sq = ma::ccw_unit_square();
  const auto faces = ma::extract_faces(sq.complex);
  EXPECT_EQ(ma::face_coefficients(sq.paths.front(), faces), (std::vector<long long>{1}));
  EXPECT_EQ(ma::face_coefficients(reversed(sq.paths.front()), faces), (std::vector<long long>{-1}));
  const auto com = ma::commutator_path();
  EXPECT_EQ(ma::face_coefficients(com.paths.front(), ma::extract_faces(com.complex)), (std::vector<long long>{0, 0}));
}

TEST(Homology, FaceCoefficientsAreAdditiveOverBasisLoops) {
  const auto g = ma::grid(3);
  const auto faces = ma::extract_faces(g.complex);
  const auto basis = ma::cycle_basis(g.complex);
  std::vector<std::vector<long long>> loop_coeffs;
  for (const auto& loop : basis.loops) loop_coeffs.push_back(ma::face_coefficients(ma::realize_word(loop, g.complex), faces));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto w = ma::random_closed_word(g.complex, seed, 14);
    const auto n = ma::homology_coefficients(w, basis);
    std::vector<long long> expected(faces.size(), 0);
    for (std::size_t j = 0; j < n.size(); ++j) {
      for (std::size_t f = 0; f < faces.size(); ++f) expected[f] += n[j] * loop_coeffs[j][f];
    }
    EXPECT_EQ(ma::face_coefficients(ma::realize_word(w, g.complex), faces), expected);
  }
}

TEST(Homology, PipelinesAgree) {
  for (const auto& fx : {ma::grid(2), ma::figure_eight(), ma::ccw_unit_square()}) {
    const auto faces = ma::extract_faces(fx.complex);
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const auto p = ma::realize_word(ma::random_closed_word(fx.complex, seed, 10), fx.complex);
      for (const auto& r : ma::compute_moments(p, ma::all_specs(2, 8), ma::Pipeline::Both, &faces)) {
        ASSERT_TRUE(r.agreement.has_value());
        EXPECT_LE(*r.agreement, 1e-9 * (1 + std::abs(r.value_quadrature))) << fx.name;
      }
    }
  }
}

TEST(Homology, MomentsDependOnlyOnFaceCoefficients) {
  const auto g = ma::grid(2);
  const auto faces = ma::extract_faces(g.complex);
  const auto specs = ma::all_specs(2, 6);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto w = ma::random_closed_word(g.complex, seed, 10);
    const auto u = ma::random_closed_word(g.complex, seed + 50, 6);
    // u w u^-1 has the face coefficients of w
    const auto conj = ma::concat(ma::concat(u, w), ma::inverse(g.complex, u));
    const auto p = ma::realize_word(w, g.complex);
    const auto q = ma::realize_word(conj, g.complex);
    ASSERT_EQ(ma::face_coefficients(p, faces), ma::face_coefficients(q, faces));
    for (const auto& s : specs) EXPECT_NEAR(ma::moment_quadrature(p, s), ma::moment_quadrature(q, s), 1e-9);
  }
}

TEST(Moments, IntegrationByParts) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto p = ma::random_closed_path(seed, 2, 5 + seed % 7, seed % 2 == 0);
    const double lhs = ma::moment_quadrature(p, spec({1, 0}, 1)) + ma::moment_quadrature(p, spec({0, 1}, 0));
    EXPECT_NEAR(lhs, 0.0, 1e-12);
    for (unsigned a = 0; a <= 4; ++a) {
      for (unsigned b = 0; b <= 4; ++b) {
        // d(x^(a+1) y^(b+1)) integrates to zero around a closed path
        const double v = (a + 1) * ma::moment_quadrature(p, spec({a, b + 1}, 0)) +
                         (b + 1) * ma::moment_quadrature(p, spec({a + 1, b}, 1));
        EXPECT_NEAR(v, 0.0, 1e-12);
      }
    }
  }
}

TEST(Moments, TreeSupportedPathsVanish) {
  const auto t = ma::tree();
  for (const auto& s : ma::all_specs(2, 8)) EXPECT_NEAR(ma::moment_quadrature(t.paths.front(), s), 0.0, 1e-13);
}

TEST(Scan, Examples) {
  const auto constant = ma::SampledPath::from_points({{0.5, 0.5}, {0.5, 0.5}}, true);
  EXPECT_TRUE(ma::vanishing_scan(constant, 5).all_zero);

  const auto sq = ma::vanishing_scan(ma::ccw_unit_square().paths.front(), 1);
  ASSERT_FALSE(sq.all_zero);
  ASSERT_TRUE(sq.witness.has_value());
  EXPECT_EQ(*sq.witness, spec({1, 0}, 1));
  EXPECT_NEAR(sq.witness_value, 1.0, 1e-14);
  EXPECT_EQ(sq.family, "planar_i2");

  const auto g = ma::grid(2);
  const auto basis = ma::cycle_basis(g.complex);
  int contractible = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto w = ma::random_closed_word(g.complex, seed, 6);
    const auto ww = ma::concat(w, ma::inverse(g.complex, w));
    ASSERT_TRUE(ma::reduce_word(ww, basis).empty());
    EXPECT_TRUE(ma::vanishing_scan(ma::realize_word(ww, g.complex), 12, 1e-9).all_zero);
    ++contractible;
  }
  EXPECT_EQ(contractible, 20);
}

TEST(Scan, FamilySizes) {
  for (unsigned b = 0; b <= 5; ++b) {
    const auto planar = ma::scan_family(2, b);
    EXPECT_EQ(planar.size(), (b + 2) * (b + 1));
    for (const auto& s : planar) {
      EXPECT_EQ(s.target, 1u);
      EXPECT_LE(std::max<int>(static_cast<int>(s.degrees[0]) - 1, static_cast<int>(s.degrees[1])), static_cast<int>(b));
    }
    EXPECT_TRUE(std::is_sorted(planar.begin(), planar.end()));
    EXPECT_EQ(ma::scan_family(3, b).size(), 3 * (b + 1) * (b + 1) * (b + 1));
  }
}

TEST(Scan, GateScalesWithLengthAndRadius) {
  const auto p = ma::SampledPath::from_points({{0, 0}, {2, 0}, {2, 2}, {0, 0}}, true);
  EXPECT_DOUBLE_EQ(ma::vanishing_gate(p, 0, 1e-9), 1e-9 * 8);
  EXPECT_DOUBLE_EQ(ma::vanishing_gate(p, 3, 1e-9), 1e-9 * 8 * 8);
  const auto tiny = ma::SampledPath::from_points({{0, 0}, {1e-3, 0}, {0, 0}}, true);
  EXPECT_DOUBLE_EQ(ma::vanishing_gate(tiny, 2, 1e-9), 1e-9);
}

TEST(Scan, IndependentAreasForceFullVanishing) {
  const auto fig = ma::figure_eight(std::pow(2.0, 0.25));
  const auto faces = ma::extract_faces(fig.complex);
  int vanishing = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto w = ma::random_closed_word(fig.complex, seed, 4 + seed % 5);
    if (seed % 3 == 0) {
      const auto u = ma::random_closed_word(fig.complex, seed + 7, 3);
      w = ma::concat(ma::concat(w, u), ma::concat(ma::inverse(fig.complex, w), ma::inverse(fig.complex, u)));
    }
    const auto p = ma::realize_word(w, fig.complex);
    if (std::abs(ma::moment_quadrature(p, spec({1, 0}, 1))) > ma::vanishing_gate(p, 1, 1e-9)) continue;
    ++vanishing;
    const auto n = ma::face_coefficients(p, faces);
    EXPECT_TRUE(std::all_of(n.begin(), n.end(), [](long long v) { return v == 0; }));
    for (const auto& s : ma::all_specs(2, 8)) {
      EXPECT_LE(std::abs(ma::moment_quadrature(p, s)), ma::vanishing_gate(p, s.total_degree(), 1e-9));
    }
  }
  EXPECT_GE(vanishing, 10);
}

TEST(Scan, VanishingPersistsBeyondTheBound) {
  for (const auto& fx : {ma::grid(1), ma::figure_eight(), ma::ccw_unit_square()}) {
    const auto bound = static_cast<unsigned>(ma::n_bound_2d(ma::extract_faces(fx.complex)));
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto w = ma::random_closed_word(fx.complex, seed, 5);
      const auto ww = ma::concat(w, ma::inverse(fx.complex, w));
      const auto p = ma::realize_word(ww, fx.complex);
      const auto at = ma::vanishing_scan(p, bound);
      if (!at.all_zero) continue;
      EXPECT_TRUE(ma::vanishing_scan(p, bound + 4).all_zero) << fx.name;
    }
  }
}
