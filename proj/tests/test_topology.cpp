#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "moment_atlas/errors.hpp"
#include "moment_atlas/fixtures.hpp"
#include "moment_atlas/topology.hpp"

namespace ma = moment_atlas;

namespace {

ma::EdgeWord word_at(std::size_t start, std::vector<ma::Letter> letters) { return {std::move(letters), start}; }

// Depth-first search over (trail position, word index); independent of the
// set-based automaton in the library.
bool covers_by_search(const ma::EdgeWord& word, const ma::EdgeWord& trail) {
  const std::size_t L = trail.size();
  std::function<bool(std::size_t, std::size_t)> go = [&](std::size_t pos, std::size_t i) {
    if (i == word.size()) return true;
    const ma::Letter& l = word.letters[i];
    if (pos < L && trail.letters[pos] == l && go(pos + 1, i + 1)) return true;
    if (pos > 0) {
      const ma::Letter& t = trail.letters[pos - 1];
      if (t.edge == l.edge && t.orientation == -l.orientation && go(pos - 1, i + 1)) return true;
    }
    return false;
  };
  for (std::size_t p = 0; p <= L; ++p) {
    if (go(p, 0)) return true;
  }
  return false;
}

}  // namespace

TEST(Betti, Examples) {
  EXPECT_EQ(ma::betti1(ma::figure_eight().complex), 2u);
  EXPECT_EQ(ma::betti1(ma::tree().complex), 0u);
  for (unsigned k = 1; k <= 4; ++k) EXPECT_EQ(ma::betti1(ma::grid(k).complex), k * k);
}

TEST(CycleBasis, LoopsUseTheirChordOnce) {
  for (const auto& fx : {ma::grid(3), ma::figure_eight(), ma::circle_pl(16)}) {
    const auto basis = ma::cycle_basis(fx.complex);
    ASSERT_EQ(basis.rank(), ma::betti1(fx.complex));
    for (std::size_t j = 0; j < basis.rank(); ++j) {
      EXPECT_TRUE(ma::is_closed(fx.complex, basis.loops[j]));
      const auto n = ma::homology_coefficients(basis.loops[j], basis);
      for (std::size_t i = 0; i < n.size(); ++i) EXPECT_EQ(n[i], i == j ? 1 : 0) << fx.name;
    }
  }
}

TEST(CycleBasis, SeedChangesTiesReproducibly) {
  const auto g = ma::grid(3);
  const auto a = ma::cycle_basis(g.complex, 5);
  const auto b = ma::cycle_basis(g.complex, 5);
  EXPECT_EQ(a.chords, b.chords);
  EXPECT_EQ(a.rank(), ma::cycle_basis(g.complex, 6).rank());
}

TEST(Homology, FigureEightExamples) {
  const auto fx = ma::figure_eight();
  const auto basis = ma::cycle_basis(fx.complex);
  const ma::Letter a{0, 1}, b{1, 1}, A{0, -1}, B{1, -1};
  EXPECT_EQ(ma::homology_coefficients(word_at(0, {a, b, A, B}), basis), (ma::HomologyVector{0, 0}));
  EXPECT_EQ(ma::homology_coefficients(word_at(0, {a, a}), basis), (ma::HomologyVector{2, 0}));
  EXPECT_EQ(ma::homology_coefficients(word_at(0, {a, B, B}), basis), (ma::HomologyVector{1, -2}));
}

TEST(Homology, OpenWordThrowsNotClosed) {
  const auto g = ma::grid(1);
  const auto basis = ma::cycle_basis(g.complex);
  const auto& e = g.complex.edge(0);
  try {
    ma::homology_coefficients(word_at(e.from, {{0, 1}}), basis);
    FAIL();
  } catch (const ma::Error& err) {
    EXPECT_EQ(err.kind(), ma::ErrorKind::NotClosed);
  }
}

TEST(Homology, AdditiveUnderConcatenation) {
  for (const auto& fx : {ma::grid(2), ma::figure_eight()}) {
    const auto basis = ma::cycle_basis(fx.complex);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const auto w1 = ma::random_closed_word(fx.complex, seed, 9);
      const auto w2 = ma::random_closed_word(fx.complex, seed + 1000, 7);
      const auto n1 = ma::homology_coefficients(w1, basis);
      const auto n2 = ma::homology_coefficients(w2, basis);
      auto sum = n1;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += n2[i];
      EXPECT_EQ(ma::homology_coefficients(ma::concat(w1, w2), basis), sum);
    }
  }
}

TEST(ReduceWord, Examples) {
  const auto fx = ma::figure_eight();
  const auto basis = ma::cycle_basis(fx.complex);
  const ma::Letter a{0, 1}, b{1, 1}, A{0, -1}, B{1, -1};
  EXPECT_TRUE(ma::reduce_word(word_at(0, {a, A}), basis).empty());
  EXPECT_EQ(ma::reduce_word(word_at(0, {a, b, A, B}), basis).size(), 4u);

  const auto t = ma::tree();
  EXPECT_TRUE(ma::reduce_word(ma::trace_path(t.paths.front(), t.complex), ma::cycle_basis(t.complex)).empty());
}

TEST(ReduceWord, EmptyReductionImpliesTrivialHomology) {
  for (const auto& fx : {ma::grid(2), ma::figure_eight(), ma::tree()}) {
    const auto basis = ma::cycle_basis(fx.complex);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      auto w = ma::random_closed_word(fx.complex, seed, 6);
      // u w u^-1 w^-1 always reduces in homology; w w^-1 always reduces freely
      const auto u = ma::random_closed_word(fx.complex, seed + 77, 5);
      for (const auto& cand : {ma::concat(w, ma::inverse(fx.complex, w)),
                               ma::concat(ma::concat(u, w), ma::concat(ma::inverse(fx.complex, u), ma::inverse(fx.complex, w))),
                               w}) {
        if (ma::reduce_word(cand, basis).empty()) {
          const auto n = ma::homology_coefficients(cand, basis);
          EXPECT_TRUE(std::all_of(n.begin(), n.end(), [](long long v) { return v == 0; }));
        }
      }
    }
  }
}

TEST(Euler, Classification) {
  EXPECT_EQ(ma::euler_classify(ma::figure_eight().complex).cls, ma::EulerClass::Unicursal);
  const auto arc = ma::build_complex({ma::SampledPath::from_points({{0, 0}, {1, 0}, {1, 1}}, false)});
  EXPECT_EQ(ma::euler_classify(arc).cls, ma::EulerClass::Traversable);
  EXPECT_EQ(ma::euler_classify(ma::grid(2).complex).cls, ma::EulerClass::NotTraversable);
  EXPECT_EQ(ma::euler_classify(ma::tree().complex).cls, ma::EulerClass::NotTraversable);
}

TEST(Euler, WitnessUsesEveryEdgeOnce) {
  for (const auto& fx : {ma::figure_eight(), ma::grid(1), ma::circle_pl(12), ma::tree()}) {
    const auto r = ma::euler_classify(fx.complex);
    if (r.cls == ma::EulerClass::NotTraversable) continue;
    std::vector<std::size_t> edges;
    for (const auto& l : r.trail.letters) edges.push_back(l.edge);
    std::sort(edges.begin(), edges.end());
    std::vector<std::size_t> all(fx.complex.num_edges());
    for (std::size_t e = 0; e < all.size(); ++e) all[e] = e;
    EXPECT_EQ(edges, all) << fx.name;
    EXPECT_NO_THROW(ma::validate_word(fx.complex, r.trail));
    EXPECT_EQ(r.cyclic(), ma::is_closed(fx.complex, r.trail));
  }
}

TEST(Euler, TrailEnumerationOnFigureEight) {
  const auto trails = ma::eulerian_trails(ma::figure_eight().complex, 100);
  EXPECT_FALSE(trails.empty());
  for (const auto& t : trails) EXPECT_EQ(t.size(), 2u);
}

TEST(CoversTrail, Examples) {
  const ma::EdgeWord trail = word_at(0, {{0, 1}, {1, 1}, {2, 1}});
  EXPECT_TRUE(ma::covers_trail(trail, trail, false));
  ma::EdgeWord back_and_forth = trail;
  for (auto it = trail.letters.rbegin(); it != trail.letters.rend(); ++it) back_and_forth.letters.push_back({it->edge, -it->orientation});
  EXPECT_TRUE(ma::covers_trail(back_and_forth, trail, false));
  EXPECT_FALSE(ma::covers_trail(word_at(0, {{0, 1}, {2, 1}}), trail, false));
  EXPECT_TRUE(ma::covers_trail(ma::EdgeWord{{}, 0}, trail, false));
}

TEST(CoversTrail, CyclicWrapsAround) {
  const ma::EdgeWord trail = word_at(0, {{0, 1}, {1, 1}});
  const ma::EdgeWord w = word_at(0, {{1, 1}, {0, 1}, {1, 1}});
  EXPECT_TRUE(ma::covers_trail(w, trail, true));
  EXPECT_FALSE(ma::covers_trail(w, trail, false));
}

TEST(CoversTrail, AgreesWithExhaustiveSearch) {
  const ma::EdgeWord trail = word_at(0, {{0, 1}, {1, 1}, {2, -1}, {3, 1}, {1, -1}});
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> edge(0, 3);
  std::uniform_int_distribution<int> sign(0, 1);
  int positives = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    ma::EdgeWord w{{}, 0};
    const std::size_t len = 1 + trial % 6;
    for (std::size_t i = 0; i < len; ++i) w.letters.push_back({edge(rng), sign(rng) ? 1 : -1});
    const bool expected = covers_by_search(w, trail);
    positives += expected;
    EXPECT_EQ(ma::covers_trail(w, trail, false), expected);
  }
  EXPECT_GT(positives, 50);
}

TEST(CoversEulerianTrail, FigureEightWords) {
  const auto fx = ma::figure_eight();
  const ma::Letter a{0, 1}, b{1, 1}, A{0, -1}, B{1, -1};
  EXPECT_TRUE(ma::covers_eulerian_trail(fx.complex, word_at(0, {a, b})));
  EXPECT_TRUE(ma::covers_eulerian_trail(fx.complex, word_at(0, {a, b, B, A})));
  EXPECT_FALSE(ma::covers_eulerian_trail(fx.complex, word_at(0, {a, b, A, B})));
  EXPECT_TRUE(ma::covers_eulerian_trail(fx.complex, word_at(0, {})));
}
