#include "moment_atlas/cube_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "moment_atlas/errors.hpp"
#include "moment_atlas/topology.hpp"
#include "vec.hpp"

namespace moment_atlas {

namespace {

using detail::Vec;

struct Interval {
  double lo;
  double hi;
};

// Parameter range of segment a->b inside the closed box |x - c|_inf <= r.
std::optional<Interval> clip(const Point& a, const Point& b, const Point& c, double r) {
  double lo = 0.0, hi = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double u = b[k] - a[k];
    const double lower = c[k] - r - a[k];
    const double upper = c[k] + r - a[k];
    if (u == 0.0) {
      if (lower > 0.0 || upper < 0.0) return std::nullopt;
      continue;
    }
    double s0 = lower / u, s1 = upper / u;
    if (s0 > s1) std::swap(s0, s1);
    lo = std::max(lo, s0);
    hi = std::min(hi, s1);
    if (lo > hi) return std::nullopt;
  }
  return Interval{lo, hi};
}

// Trace of an arc inside a box, as merged intervals of the arc parameter
// (segment k covers [k, k+1]).
std::vector<Interval> trace_in_box(const Edge& edge, const Point& c, double r) {
  std::vector<Interval> pieces;
  const std::size_t nseg = edge.points.size() - 1;
  for (std::size_t k = 0; k < nseg; ++k) {
    if (auto iv = clip(edge.points[k], edge.points[k + 1], c, r)) {
      const Interval g{static_cast<double>(k) + iv->lo, static_cast<double>(k) + iv->hi};
      if (!pieces.empty() && g.lo <= pieces.back().hi + 1e-12) {
        pieces.back().hi = std::max(pieces.back().hi, g.hi);
      } else {
        pieces.push_back(g);
      }
    }
  }
  if (edge.is_loop() && pieces.size() > 1 && pieces.front().lo <= 1e-12 &&
      pieces.back().hi >= static_cast<double>(nseg) - 1e-12) {
    pieces.front().lo = pieces.back().lo - static_cast<double>(nseg);
    pieces.pop_back();
  }
  return pieces;
}

bool touches_open_box(const Edge& edge, const Point& c, double r) {
  if (r <= 0.0) return false;
  for (std::size_t k = 0; k + 1 < edge.points.size(); ++k) {
    if (clip(edge.points[k], edge.points[k + 1], c, r)) return true;
  }
  return false;
}

// Sum of |dx_axis| over the pieces of the arc inside the box.
double projected_measure(const Edge& edge, const std::vector<Interval>& pieces, std::size_t axis) {
  const std::size_t nseg = edge.points.size() - 1;
  auto coord = [&](double u) {
    u = std::fmod(u + static_cast<double>(nseg), static_cast<double>(nseg));
    std::size_t k = std::min(static_cast<std::size_t>(u), nseg - 1);
    const double s = u - static_cast<double>(k);
    return edge.points[k][axis] + s * (edge.points[k + 1][axis] - edge.points[k][axis]);
  };
  double total = 0.0;
  for (const Interval& iv : pieces) {
    // Piecewise linear in u: sum over breakpoints.
    double prev_u = iv.lo;
    double prev_x = coord(prev_u);
    for (double u = std::floor(iv.lo) + 1.0; u < iv.hi; u += 1.0) {
      const double x = coord(u);
      total += std::abs(x - prev_x);
      prev_u = u;
      prev_x = x;
    }
    total += std::abs(coord(iv.hi) - prev_x);
  }
  return total;
}

// Strict monotonicity of the axis coordinate across a connected piece.
bool monotone_on(const Edge& edge, const Interval& piece, std::size_t axis) {
  const std::size_t nseg = edge.points.size() - 1;
  int sign = 0;
  const auto first = static_cast<long long>(std::floor(piece.lo));
  const auto last = static_cast<long long>(std::ceil(piece.hi)) - 1;
  for (long long kk = first; kk <= last; ++kk) {
    const double seg_lo = std::max(piece.lo, static_cast<double>(kk));
    const double seg_hi = std::min(piece.hi, static_cast<double>(kk + 1));
    if (seg_hi - seg_lo <= 1e-12) continue;
    const std::size_t k = static_cast<std::size_t>((kk % static_cast<long long>(nseg) +
                                                    static_cast<long long>(nseg)) %
                                                   static_cast<long long>(nseg));
    const double u = edge.points[k + 1][axis] - edge.points[k][axis];
    const int s = u > 0.0 ? 1 : (u < 0.0 ? -1 : 0);
    if (s == 0) return false;
    if (sign == 0) sign = s;
    if (s != sign) return false;
  }
  return sign != 0;
}

double point_edge_inf(const Point& p, const Edge& edge) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < edge.points.size(); ++k) {
    best = std::min(best, detail::point_segment_inf(p, edge.points[k], edge.points[k + 1]));
  }
  return best;
}

double point_edge_dist(const Point& p, const Edge& edge) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < edge.points.size(); ++k) {
    best = std::min(best, detail::point_segment(p, edge.points[k], edge.points[k + 1]).distance);
  }
  return best;
}

double l1_length(const Edge& edge) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < edge.points.size(); ++k) {
    for (std::size_t a = 0; a < edge.points[k].size(); ++a) {
      total += std::abs(edge.points[k + 1][a] - edge.points[k][a]);
    }
  }
  return total;
}

bool is_bridge(const CurveComplex& complex, std::size_t removed) {
  if (complex.edge(removed).is_loop()) return false;
  std::vector<bool> seen(complex.num_vertices(), false);
  std::queue<std::size_t> queue;
  const std::size_t target = complex.edge(removed).to;
  queue.push(complex.edge(removed).from);
  seen[complex.edge(removed).from] = true;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop();
    if (v == target) return false;
    for (std::size_t e : complex.incident(v)) {
      if (e == removed) continue;
      const Edge& edge = complex.edge(e);
      const std::size_t w = edge.from == v ? edge.to : edge.from;
      if (!seen[w]) {
        seen[w] = true;
        queue.push(w);
      }
    }
  }
  return true;
}

double default_tol(const CurveComplex& complex) {
  return 1e-9 * std::max(complex.bbox_diameter(), 1e-300);
}

// Per-cube clauses; returns the failing clause name or empty.
std::string single_cube_failure(const CurveComplex& complex, const std::vector<std::size_t>& arcs,
                                const CubeSpec& cube, double tol, std::size_t* other) {
  const Edge& own = complex.edge(cube.edge);
  if (point_edge_dist(cube.center, own) > tol) return "center_on_arc";
  const auto pieces = trace_in_box(own, cube.center, cube.radius);
  if (pieces.size() != 1) return "trace_connected";
  for (std::size_t e : arcs) {
    if (e == cube.edge) continue;
    if (touches_open_box(complex.edge(e), cube.center, cube.radius - tol)) {
      if (other) *other = e;
      return "trace_avoids_other_arcs";
    }
  }
  if (!monotone_on(own, pieces.front(), cube.axis)) return "projection_injective";
  return {};
}

}  // namespace

std::vector<std::size_t> cycle_edges(const CurveComplex& complex) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < complex.num_edges(); ++e) {
    if (!is_bridge(complex, e)) out.push_back(e);
  }
  return out;
}

CubeFamily certify_cubes(const CurveComplex& complex, std::vector<CubeSpec> cubes) {
  const std::size_t n = complex.dim();
  const double tol = default_tol(complex);
  const auto arcs = cycle_edges(complex);

  std::vector<std::size_t> owner(complex.num_edges(), cubes.size());
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    const CubeSpec& c = cubes[i];
    if (c.edge >= complex.num_edges() || !std::binary_search(arcs.begin(), arcs.end(), c.edge)) {
      throw ConditionStarViolated("arc", i, i, "cube does not sit on an arc of a cycle");
    }
    if (owner[c.edge] != cubes.size()) {
      throw ConditionStarViolated("arc", owner[c.edge], i, "two cubes on the same arc");
    }
    owner[c.edge] = i;
    if (c.center.size() != n) throw ConditionStarViolated("center_on_arc", i, i, "center has wrong dimension");
    if (!(c.radius > 0.0)) throw ConditionStarViolated("radius", i, i, "radius must be positive");
    if (c.axis >= n) throw ConditionStarViolated("projection_injective", i, i, "axis out of range");
  }
  for (std::size_t e : arcs) {
    if (owner[e] == cubes.size()) {
      throw ConditionStarViolated("arc", e, e, "arc " + std::to_string(e) + " has no cube");
    }
  }

  for (std::size_t i = 0; i < cubes.size(); ++i) {
    for (std::size_t j = i + 1; j < cubes.size(); ++j) {
      bool separated = false;
      for (std::size_t a = 0; a < n && !separated; ++a) {
        separated = std::abs(cubes[i].center[a] - cubes[j].center[a]) >=
                    cubes[i].radius + cubes[j].radius - tol;
      }
      if (!separated) throw ConditionStarViolated("pairwise_disjoint", i, j, "cubes overlap");
    }
  }

  CubeFamily family;
  family.min_radius = std::numeric_limits<double>::infinity();
  family.min_l = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    std::size_t other = i;
    const std::string clause = single_cube_failure(complex, arcs, cubes[i], tol, &other);
    if (!clause.empty()) {
      std::size_t j = i;
      if (clause == "trace_avoids_other_arcs") j = owner[other];
      throw ConditionStarViolated(clause, i, j, "clause fails for cube " + std::to_string(i));
    }
    const Edge& own = complex.edge(cubes[i].edge);
    CertifiedCube cc;
    cc.spec = cubes[i];
    cc.measured_l = projected_measure(own, trace_in_box(own, cubes[i].center, 0.5 * cubes[i].radius),
                                      cubes[i].axis);
    cc.l = cc.measured_l;
    if (cubes[i].declared_l) {
      const double declared = *cubes[i].declared_l;
      if (!(declared > 0.0) || declared > cc.measured_l + tol) {
        throw ConditionStarViolated("projection_measure", i, i,
                                    "declared l exceeds the measured " + std::to_string(cc.measured_l));
      }
      cc.l = declared;
    }
    if (!(cc.l > 0.0)) throw ConditionStarViolated("projection_measure", i, i, "projection has zero measure");
    cc.arc_length_l1 = l1_length(own);
    family.min_radius = std::min(family.min_radius, cc.spec.radius);
    family.min_l = std::min(family.min_l, cc.l);
    family.max_length_l1 = std::max(family.max_length_l1, cc.arc_length_l1);
    family.cubes.push_back(std::move(cc));
  }

  if (!arcs.empty()) {
    Vec lo(n, std::numeric_limits<double>::infinity());
    Vec hi(n, -std::numeric_limits<double>::infinity());
    for (std::size_t e : arcs) {
      for (const Point& p : complex.edge(e).points) {
        for (std::size_t a = 0; a < n; ++a) {
          lo[a] = std::min(lo[a], p[a]);
          hi[a] = std::max(hi[a], p[a]);
        }
      }
    }
    double side = 0.0;
    for (std::size_t a = 0; a < n; ++a) side = std::max(side, hi[a] - lo[a]);
    family.half_side = 0.5 * side;
  } else {
    family.min_radius = family.min_l = 0.0;
  }
  return family;
}

CubeFamily auto_cubes(const CurveComplex& complex) {
  const std::size_t n = complex.dim();
  const double tol = default_tol(complex);
  const auto arcs = cycle_edges(complex);
  std::vector<CubeSpec> cubes;
  for (std::size_t e : arcs) {
    const Edge& edge = complex.edge(e);
    std::size_t longest = 0;
    double longest_len = -1.0;
    for (std::size_t k = 0; k + 1 < edge.points.size(); ++k) {
      const double len = detail::dist(edge.points[k], edge.points[k + 1]);
      if (len > longest_len) {
        longest_len = len;
        longest = k;
      }
    }
    const Point& a = edge.points[longest];
    const Point& b = edge.points[longest + 1];
    CubeSpec cube;
    cube.edge = e;
    cube.center = detail::lerp(a, b, 0.5);
    double extent = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double u = std::abs(b[k] - a[k]);
      if (u > extent) {
        extent = u;
        cube.axis = k;
      }
    }
    double clearance = 0.5 * extent;
    for (std::size_t other : arcs) {
      if (other != e) clearance = std::min(clearance, point_edge_inf(cube.center, complex.edge(other)));
    }
    cube.radius = 0.25 * clearance;
    for (int halvings = 0; halvings < 80; ++halvings) {
      if (single_cube_failure(complex, arcs, cube, tol, nullptr).empty()) break;
      cube.radius *= 0.5;
    }
    cubes.push_back(std::move(cube));
  }
  for (int round = 0; round < 80; ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < cubes.size(); ++i) {
      for (std::size_t j = i + 1; j < cubes.size(); ++j) {
        bool separated = false;
        for (std::size_t a = 0; a < n && !separated; ++a) {
          separated = std::abs(cubes[i].center[a] - cubes[j].center[a]) >=
                      cubes[i].radius + cubes[j].radius - tol;
        }
        if (!separated) {
          CubeSpec& big = cubes[i].radius >= cubes[j].radius ? cubes[i] : cubes[j];
          big.radius *= 0.5;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return certify_cubes(complex, std::move(cubes));
}

NdBound n_bound_nd(const CurveComplex& complex, const std::optional<std::vector<CubeSpec>>& cubes) {
  NdBound result;
  result.family = cubes ? certify_cubes(complex, *cubes) : auto_cubes(complex);
  if (betti1(complex) == 0) return result;
  const CubeFamily& f = result.family;
  const double n = static_cast<double>(complex.dim());
  const double value =
      2.0 * std::numbers::pi * n * f.max_length_l1 * f.half_side / (f.min_radius * f.min_l);
  result.bound = static_cast<std::uint64_t>(std::floor(value)) + 1;
  return result;
}

}  // namespace moment_atlas
