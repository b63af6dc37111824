#include "moment_atlas/planar_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <queue>

#include "moment_atlas/errors.hpp"
#include "moment_atlas/parallel.hpp"

namespace moment_atlas {

namespace {

Vec2 to_vec2(const Point& p) { return {p[0], p[1]}; }

double cross(Vec2 o, Vec2 a, Vec2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// l_inf distance from p to segment ab; max(|dx|, |dy|) along the segment is
// convex and piecewise linear, so the minimum is at an endpoint, where one
// coordinate difference vanishes, or where |dx| = |dy|.
double segment_dist_inf(Vec2 p, Vec2 a, Vec2 b) {
  const double wx = p.x - a.x;
  const double wy = p.y - a.y;
  const double ux = b.x - a.x;
  const double uy = b.y - a.y;
  auto f = [&](double s) { return std::max(std::abs(wx - s * ux), std::abs(wy - s * uy)); };
  double best = std::min(f(0.0), f(1.0));
  auto consider = [&](double s) {
    if (s > 0.0 && s < 1.0) best = std::min(best, f(s));
  };
  if (ux != 0.0) consider(wx / ux);
  if (uy != 0.0) consider(wy / uy);
  if (ux - uy != 0.0) consider((wx - wy) / (ux - uy));
  if (ux + uy != 0.0) consider((wx + wy) / (ux + uy));
  return best;
}

double segment_dist2(Vec2 p, Vec2 a, Vec2 b) {
  const double ux = b.x - a.x;
  const double uy = b.y - a.y;
  const double uu = ux * ux + uy * uy;
  double s = 0.0;
  if (uu > 0.0) s = std::clamp(((p.x - a.x) * ux + (p.y - a.y) * uy) / uu, 0.0, 1.0);
  const double dx = p.x - (a.x + s * ux);
  const double dy = p.y - (a.y + s * uy);
  return std::sqrt(dx * dx + dy * dy);
}

double ring_dist_inf(std::span<const Vec2> ring, Vec2 p) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, segment_dist_inf(p, ring[i], ring[(i + 1) % n]));
  }
  return best;
}

struct HalfEdge {
  std::size_t origin;
  std::size_t target;
  std::size_t twin;
  double angle;
};

}  // namespace

double signed_area(std::span<const Vec2> ring) {
  const std::size_t n = ring.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = ring[i];
    const Vec2 b = ring[(i + 1) % n];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

long long winding_number(std::span<const Vec2> ring, Vec2 p) {
  long long w = 0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = ring[i];
    const Vec2 b = ring[(i + 1) % n];
    if (a.y <= p.y) {
      if (b.y > p.y && cross(a, b, p) > 0.0) ++w;
    } else if (b.y <= p.y && cross(a, b, p) < 0.0) {
      --w;
    }
  }
  return w;
}

long long winding_number(const SampledPath& path, Vec2 p, double tol) {
  if (path.dim() != 2) throw Error(ErrorKind::InvalidInput, "winding number needs a planar path");
  if (!path.closed()) throw Error(ErrorKind::NotClosed, "winding number needs a closed path");
  if (tol <= 0.0) tol = 1e-9 * std::max(path.bbox_diameter(), 1e-300);
  Ring ring;
  ring.reserve(path.size());
  for (std::size_t i = 0; i + 1 < path.size(); ++i) ring.push_back(to_vec2(path.point(i)));
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const double d = segment_dist2(p, to_vec2(path.point(i)), to_vec2(path.point(i + 1)));
    if (d <= tol) {
      throw Error(ErrorKind::PointOnCurve,
                  "point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                      ") lies on the path near segment " + std::to_string(i));
    }
  }
  return winding_number(std::span<const Vec2>(ring), p);
}

double face_depth(const Face& face, Vec2 p) {
  bool inside = winding_number(std::span<const Vec2>(face.outer), p) != 0;
  for (const Ring& hole : face.holes) {
    if (winding_number(std::span<const Vec2>(hole), p) != 0) inside = false;
  }
  double d = ring_dist_inf(face.outer, p);
  for (const Ring& hole : face.holes) d = std::min(d, ring_dist_inf(hole, p));
  return inside ? d : -d;
}

InscribedSquare inscribed_square(const Face& face, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidInput, "inscribed square needs eps > 0");
  if (face.outer.size() < 3) throw Error(ErrorKind::DegenerateGeometry, "face has fewer than 3 corners");
  double xmin = face.outer[0].x, xmax = xmin, ymin = face.outer[0].y, ymax = ymin;
  for (const Vec2& v : face.outer) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  struct Cell {
    Vec2 c;
    double h;
    double ub;
    bool operator<(const Cell& o) const { return ub < o.ub; }
  };
  // Depth is 1-Lipschitz in l_inf, so a cell of half-width h centred at c
  // contains no point deeper than depth(c) + h.
  const double half_eps = 0.5 * eps;
  Cell root{{0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}, 0.5 * std::max(xmax - xmin, ymax - ymin), 0.0};
  double best = face_depth(face, root.c);
  Vec2 best_c = root.c;
  root.ub = best + root.h;
  std::priority_queue<Cell> queue;
  queue.push(root);
  while (!queue.empty()) {
    const Cell cell = queue.top();
    if (cell.ub - best < half_eps) break;
    queue.pop();
    const double h = 0.5 * cell.h;
    for (int sx = -1; sx <= 1; sx += 2) {
      for (int sy = -1; sy <= 1; sy += 2) {
        const Vec2 c{cell.c.x + sx * h, cell.c.y + sy * h};
        const double d = face_depth(face, c);
        if (d > best) {
          best = d;
          best_c = c;
        }
        const double ub = d + h;
        if (ub - best >= half_eps) queue.push({c, h, ub});
      }
    }
  }
  if (!(best > 0.0)) throw Error(ErrorKind::DegenerateGeometry, "face has empty interior");
  return {2.0 * best, 2.0 * best + eps, best_c};
}

double inscribed_square_side(const Face& face, double eps) {
  return inscribed_square(face, eps).side_lower;
}

FaceSet extract_faces(const CurveComplex& complex, double eps) {
  if (complex.dim() != 2) throw Error(ErrorKind::InvalidInput, "face extraction needs a planar complex");
  const double diameter = complex.bbox_diameter();
  if (eps <= 0.0) eps = 1e-7 * std::max(diameter, 1e-300);

  // Nodes: complex vertices first, then polyline interior points.
  std::vector<Vec2> nodes;
  for (const Point& v : complex.vertices()) nodes.push_back(to_vec2(v));
  std::vector<HalfEdge> half;
  auto add_segment = [&](std::size_t a, std::size_t b) {
    const std::size_t i = half.size();
    const Vec2 pa = nodes[a], pb = nodes[b];
    half.push_back({a, b, i + 1, std::atan2(pb.y - pa.y, pb.x - pa.x)});
    half.push_back({b, a, i, std::atan2(pa.y - pb.y, pa.x - pb.x)});
  };
  for (const Edge& e : complex.edges()) {
    std::size_t prev = e.from;
    for (std::size_t k = 1; k + 1 < e.points.size(); ++k) {
      nodes.push_back(to_vec2(e.points[k]));
      const std::size_t cur = nodes.size() - 1;
      add_segment(prev, cur);
      prev = cur;
    }
    add_segment(prev, e.to);
  }

  // Outgoing half-edges per node, sorted counter-clockwise.
  std::vector<std::vector<std::size_t>> out(nodes.size());
  for (std::size_t h = 0; h < half.size(); ++h) out[half[h].origin].push_back(h);
  std::vector<std::size_t> position(half.size());
  for (auto& list : out) {
    std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      return half[a].angle < half[b].angle;
    });
    for (std::size_t k = 0; k < list.size(); ++k) position[list[k]] = k;
  }
  // The face to the left of u->v continues along the outgoing edge at v
  // that is next clockwise from v->u.
  auto next = [&](std::size_t h) {
    const std::size_t t = half[h].twin;
    const auto& list = out[half[h].target];
    return list[(position[t] + list.size() - 1) % list.size()];
  };

  const double area_floor = 1e-12 * std::max(diameter * diameter, 1e-300);
  std::vector<bool> visited(half.size(), false);
  FaceSet result;
  for (std::size_t start = 0; start < half.size(); ++start) {
    if (visited[start]) continue;
    Ring ring;
    std::vector<std::size_t> cycle;
    std::size_t h = start;
    do {
      visited[h] = true;
      cycle.push_back(h);
      ring.push_back(nodes[half[h].origin]);
      h = next(h);
    } while (h != start);
    const double area = signed_area(ring);
    if (area > area_floor) {
      Face face;
      face.outer = std::move(ring);
      face.area = area;
      result.faces.push_back(std::move(face));
    } else if (area > 0.0) {
      // A walk around a tree meets both sides of every edge and encloses
      // nothing; only a genuine cycle with collapsed area is degenerate.
      std::sort(cycle.begin(), cycle.end());
      const bool tree_walk = std::all_of(cycle.begin(), cycle.end(), [&](std::size_t e) {
        return std::binary_search(cycle.begin(), cycle.end(), half[e].twin);
      });
      if (!tree_walk) throw Error(ErrorKind::DegenerateGeometry, "face with vanishing area after snapping");
    }
  }

  parallel_for(result.faces.size(), [&](std::size_t j) {
    Face& face = result.faces[j];
    const InscribedSquare sq = inscribed_square(face, eps);
    face.inscribed_side = sq.side_lower;
    face.representative = sq.center;
  });
  std::sort(result.faces.begin(), result.faces.end(),
            [](const Face& a, const Face& b) { return a.representative < b.representative; });

  if (!result.faces.empty()) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    result.min_side = std::numeric_limits<double>::infinity();
    for (const Face& f : result.faces) {
      for (const Vec2& v : f.outer) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
      }
      result.min_side = std::min(result.min_side, f.inscribed_side);
      result.max_area = std::max(result.max_area, f.area);
    }
    result.half_side = 0.5 * std::max(xmax - xmin, ymax - ymin);
  }
  return result;
}

std::uint64_t n_bound_2d(const FaceSet& faces) {
  if (faces.empty()) return 0;
  const double r = faces.min_side;
  const double value = 27.0 * std::numbers::pi / 2.0 * faces.max_area * faces.half_side / (r * r * r);
  return static_cast<std::uint64_t>(std::floor(value)) + 1;
}

}  // namespace moment_atlas
