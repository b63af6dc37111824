#include "moment_atlas/topology.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <random>

#include "moment_atlas/errors.hpp"

namespace moment_atlas {

namespace {

std::size_t other_end(const CurveComplex& complex, std::size_t e, std::size_t v) {
  const Edge& edge = complex.edge(e);
  return edge.from == v ? edge.to : edge.from;
}

Letter leaving(const CurveComplex& complex, std::size_t e, std::size_t v) {
  return {e, complex.edge(e).from == v ? 1 : -1};
}

bool closed_over(const CycleBasis& basis, const EdgeWord& word) {
  if (word.letters.empty()) return true;
  auto tail = [&](const Letter& l) {
    return l.orientation > 0 ? basis.edge_ends[l.edge].first : basis.edge_ends[l.edge].second;
  };
  auto head = [&](const Letter& l) {
    return l.orientation > 0 ? basis.edge_ends[l.edge].second : basis.edge_ends[l.edge].first;
  };
  for (std::size_t i = 1; i < word.letters.size(); ++i) {
    if (head(word.letters[i - 1]) != tail(word.letters[i])) return false;
  }
  return tail(word.letters.front()) == head(word.letters.back());
}

void require_closed(const CycleBasis& basis, const EdgeWord& word) {
  for (const Letter& l : word.letters) {
    if (l.edge >= basis.edge_ends.size()) {
      throw Error(ErrorKind::InvalidInput, "word references an edge outside the basis");
    }
  }
  if (!closed_over(basis, word)) throw Error(ErrorKind::NotClosed, "word is not a closed walk");
}

}  // namespace

std::size_t CycleBasis::chord_index(std::size_t edge) const {
  const auto it = std::lower_bound(chords.begin(), chords.end(), edge);
  if (it != chords.end() && *it == edge) return static_cast<std::size_t>(it - chords.begin());
  return chords.size();
}

std::size_t betti1(const CurveComplex& complex) {
  return complex.num_edges() + 1 - complex.num_vertices();
}

CycleBasis cycle_basis(const CurveComplex& complex, std::uint64_t seed) {
  CycleBasis basis;
  const std::size_t nv = complex.num_vertices();
  const std::size_t ne = complex.num_edges();
  for (const Edge& e : complex.edges()) basis.edge_ends.emplace_back(e.from, e.to);

  std::size_t root = 0;
  for (std::size_t v = 1; v < nv; ++v) {
    if (complex.vertex(v) < complex.vertex(root)) root = v;
  }
  basis.root = root;
  basis.is_tree_edge.assign(ne, false);

  std::mt19937_64 rng(seed);
  std::vector<Letter> parent_letter(nv);  // letter from parent into v
  std::vector<bool> seen(nv, false);
  std::queue<std::size_t> queue;
  queue.push(root);
  seen[root] = true;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop();
    std::vector<std::size_t> order = complex.incident(v);
    std::sort(order.begin(), order.end());
    order.erase(std::unique(order.begin(), order.end()), order.end());
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t e : order) {
      if (complex.edge(e).is_loop()) continue;
      const std::size_t w = other_end(complex, e, v);
      if (seen[w]) continue;
      seen[w] = true;
      basis.is_tree_edge[e] = true;
      parent_letter[w] = leaving(complex, e, v);
      queue.push(w);
    }
  }

  auto root_path = [&](std::size_t v) {
    EdgeWord w;
    std::vector<Letter> rev;
    while (v != root) {
      const Letter l = parent_letter[v];
      rev.push_back(l);
      v = letter_tail(complex, l);
    }
    w.letters.assign(rev.rbegin(), rev.rend());
    w.start = root;
    return w;
  };

  for (std::size_t e = 0; e < ne; ++e) {
    if (basis.is_tree_edge[e]) continue;
    basis.chords.push_back(e);
    const Edge& edge = complex.edge(e);
    EdgeWord loop = root_path(edge.from);
    loop.letters.push_back({e, 1});
    const EdgeWord back = inverse(complex, root_path(edge.to));
    loop.letters.insert(loop.letters.end(), back.letters.begin(), back.letters.end());
    loop.start = root;
    basis.loops.push_back(std::move(loop));
  }
  return basis;
}

HomologyVector homology_coefficients(const EdgeWord& word, const CycleBasis& basis) {
  require_closed(basis, word);
  HomologyVector n(basis.rank(), 0);
  for (const Letter& l : word.letters) {
    const std::size_t j = basis.chord_index(l.edge);
    if (j < basis.rank()) n[j] += l.orientation;
  }
  return n;
}

std::vector<int> reduce_word(const EdgeWord& word, const CycleBasis& basis) {
  require_closed(basis, word);
  std::vector<int> stack;
  for (const Letter& l : word.letters) {
    const std::size_t j = basis.chord_index(l.edge);
    if (j == basis.rank()) continue;
    const int g = static_cast<int>(j + 1) * l.orientation;
    if (!stack.empty() && stack.back() == -g) {
      stack.pop_back();
    } else {
      stack.push_back(g);
    }
  }
  return stack;
}

std::string_view to_string(EulerClass c) {
  switch (c) {
    case EulerClass::NotTraversable: return "not_traversable";
    case EulerClass::Traversable: return "traversable";
    case EulerClass::Unicursal: return "unicursal";
  }
  return "unknown";
}

namespace {

EdgeWord hierholzer(const CurveComplex& complex, std::size_t start) {
  std::vector<bool> used(complex.num_edges(), false);
  std::vector<std::size_t> cursor(complex.num_vertices(), 0);
  struct Frame {
    std::size_t vertex;
    bool has_letter;
    Letter letter;
  };
  std::vector<Frame> stack{{start, false, {}}};
  std::vector<Letter> reversed;
  while (!stack.empty()) {
    const std::size_t v = stack.back().vertex;
    const auto& inc = complex.incident(v);
    while (cursor[v] < inc.size() && used[inc[cursor[v]]]) ++cursor[v];
    if (cursor[v] < inc.size()) {
      const std::size_t e = inc[cursor[v]];
      used[e] = true;
      stack.push_back({other_end(complex, e, v), true, leaving(complex, e, v)});
    } else {
      if (stack.back().has_letter) reversed.push_back(stack.back().letter);
      stack.pop_back();
    }
  }
  EdgeWord trail;
  trail.letters.assign(reversed.rbegin(), reversed.rend());
  trail.start = start;
  return trail;
}

std::vector<std::size_t> odd_vertices(const CurveComplex& complex) {
  std::vector<std::size_t> odd;
  for (std::size_t v = 0; v < complex.num_vertices(); ++v) {
    if (complex.degree(v) % 2 == 1) odd.push_back(v);
  }
  return odd;
}

}  // namespace

EulerResult euler_classify(const CurveComplex& complex) {
  const auto odd = odd_vertices(complex);
  EulerResult result;
  if (odd.empty()) {
    result.cls = EulerClass::Unicursal;
    result.trail = hierholzer(complex, 0);
  } else if (odd.size() == 2) {
    result.cls = EulerClass::Traversable;
    result.trail = hierholzer(complex, odd.front());
  } else {
    result.cls = EulerClass::NotTraversable;
  }
  return result;
}

std::vector<EdgeWord> eulerian_trails(const CurveComplex& complex, std::size_t limit) {
  std::vector<EdgeWord> out;
  const auto odd = odd_vertices(complex);
  if (!(odd.empty() || odd.size() == 2) || limit == 0) return out;
  const std::size_t start = odd.empty() ? 0 : odd.front();
  const std::size_t ne = complex.num_edges();
  std::vector<bool> used(ne, false);
  EdgeWord current;
  current.start = start;

  std::function<void(std::size_t)> extend = [&](std::size_t v) {
    if (out.size() >= limit) return;
    if (current.letters.size() == ne) {
      out.push_back(current);
      return;
    }
    const auto& inc = complex.incident(v);
    for (std::size_t idx = 0; idx < inc.size(); ++idx) {
      const std::size_t e = inc[idx];
      if (used[e]) continue;
      const Edge& edge = complex.edge(e);
      // A loop is listed twice; try each orientation once.
      const bool second_copy =
          edge.is_loop() && std::find(inc.begin(), inc.begin() + static_cast<std::ptrdiff_t>(idx), e) !=
                                inc.begin() + static_cast<std::ptrdiff_t>(idx);
      const Letter l = edge.is_loop() ? Letter{e, second_copy ? -1 : 1} : leaving(complex, e, v);
      // Circuits: fix the first letter's edge to remove rotations.
      if (odd.empty() && current.letters.empty()) {
        const std::size_t first_edge = *std::min_element(inc.begin(), inc.end());
        if (e != first_edge) continue;
      }
      used[e] = true;
      current.letters.push_back(l);
      extend(other_end(complex, e, v));
      current.letters.pop_back();
      used[e] = false;
      if (out.size() >= limit) return;
    }
  };
  extend(start);
  return out;
}

bool covers_trail(const EdgeWord& word, const EdgeWord& trail, bool cyclic) {
  if (word.letters.empty()) return true;
  const std::size_t L = trail.letters.size();
  if (L == 0) return false;
  const std::size_t positions = cyclic ? L : L + 1;
  std::vector<char> active(positions, 1);
  std::vector<char> next(positions, 0);
  for (const Letter& l : word.letters) {
    std::fill(next.begin(), next.end(), 0);
    bool any = false;
    for (std::size_t p = 0; p < positions; ++p) {
      if (!active[p]) continue;
      // forward: position p -> p+1 reads trail[p]
      if (cyclic || p < L) {
        if (trail.letters[p % L] == l) {
          next[(p + 1) % positions] = 1;
          any = true;
        }
      }
      // backward: position p -> p-1 reads trail[p-1]^{-1}
      if (cyclic || p > 0) {
        const std::size_t q = (p + positions - 1) % positions;
        const Letter& t = trail.letters[q % L];
        if (t.edge == l.edge && t.orientation == -l.orientation) {
          next[q] = 1;
          any = true;
        }
      }
    }
    if (!any) return false;
    active.swap(next);
  }
  return true;
}

bool covers_eulerian_trail(const CurveComplex& complex, const EdgeWord& word, std::size_t limit) {
  if (word.letters.empty()) return true;
  std::vector<std::size_t> used;
  for (const Letter& l : word.letters) used.push_back(l.edge);
  const Subcomplex sub = subcomplex(complex, used);
  const auto trails = eulerian_trails(sub.complex, limit);
  if (trails.empty()) return false;
  std::vector<std::size_t> odd;
  for (std::size_t v = 0; v < sub.complex.num_vertices(); ++v) {
    if (sub.complex.degree(v) % 2 == 1) odd.push_back(v);
  }
  const bool cyclic = odd.empty();
  for (EdgeWord trail : trails) {
    for (Letter& l : trail.letters) l.edge = sub.edge_map[l.edge];
    if (covers_trail(word, trail, cyclic)) return true;
  }
  return false;
}

}  // namespace moment_atlas
