#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "moment_atlas/curve_model.hpp"

namespace moment_atlas {

/// Generators of H1 from a spanning tree: one closed word per chord.
struct CycleBasis {
  std::size_t root = 0;
  std::vector<bool> is_tree_edge;
  std::vector<std::size_t> chords;            // ordered by edge id
  std::vector<EdgeWord> loops;                // loops[j] uses chords[j] once
  std::vector<std::pair<std::size_t, std::size_t>> edge_ends;  // (from, to)

  std::size_t rank() const noexcept { return chords.size(); }
  /// Index j of the chord for an edge, or rank() for tree edges.
  std::size_t chord_index(std::size_t edge) const;
};

using HomologyVector = std::vector<long long>;

/// E - V + 1 of a connected complex.
std::size_t betti1(const CurveComplex& complex);

/// BFS spanning tree rooted at the lexicographically smallest vertex; the
/// seed permutes neighbour order to break ties reproducibly.
CycleBasis cycle_basis(const CurveComplex& complex, std::uint64_t seed = 0);

/// n_j = signed number of traversals of chord j. Throws NotClosed.
HomologyVector homology_coefficients(const EdgeWord& word, const CycleBasis& basis);

/// Rewrites a closed word over chord generators (+-(j+1) for chord j) and
/// freely reduces it. Empty result <=> the path is contractible.
std::vector<int> reduce_word(const EdgeWord& word, const CycleBasis& basis);

enum class EulerClass { NotTraversable, Traversable, Unicursal };
std::string_view to_string(EulerClass c);

struct EulerResult {
  EulerClass cls = EulerClass::NotTraversable;
  EdgeWord trail;  // empty for NotTraversable

  bool cyclic() const noexcept { return cls == EulerClass::Unicursal; }
};

/// Degree census plus a Hierholzer witness trail using every edge once.
EulerResult euler_classify(const CurveComplex& complex);

/// Enumerates distinct Eulerian trails (up to rotation for circuits) by
/// backtracking, stopping after `limit` trails.
std::vector<EdgeWord> eulerian_trails(const CurveComplex& complex, std::size_t limit);

/// True iff `word` is produced by a walk that steps forward or backward along
/// the letter positions of `trail` (cyclically when the trail is closed).
bool covers_trail(const EdgeWord& word, const EdgeWord& trail, bool cyclic);

/// Whether the word covers some Eulerian trail of the subcomplex spanned by
/// the edges it traverses, searching at most `limit` enumerated trails. The
/// empty word covers vacuously.
bool covers_eulerian_trail(const CurveComplex& complex, const EdgeWord& word,
                           std::size_t limit = 10000);

}  // namespace moment_atlas
