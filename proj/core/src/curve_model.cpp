#include "moment_atlas/curve_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>

#include "moment_atlas/errors.hpp"
#include "vec.hpp"

namespace moment_atlas {

using detail::dist;

namespace {

double bbox_diameter_of(const std::vector<const Point*>& points, std::size_t dim) {
  if (points.empty()) return 0.0;
  Point lo(dim, std::numeric_limits<double>::infinity());
  Point hi(dim, -std::numeric_limits<double>::infinity());
  for (const Point* p : points) {
    for (std::size_t k = 0; k < dim; ++k) {
      lo[k] = std::min(lo[k], (*p)[k]);
      hi[k] = std::max(hi[k], (*p)[k]);
    }
  }
  return dist(lo, hi);
}

double tolerance_from_diameter(double diameter) {
  return diameter > 0.0 ? 1e-9 * diameter : 1e-12;
}

bool all_finite(const Point& p) {
  return std::all_of(p.begin(), p.end(), [](double v) { return std::isfinite(v); });
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
  std::vector<std::size_t> parent;
};

}  // namespace

// ---------------------------------------------------------------------------
// SampledPath

SampledPath SampledPath::create(std::size_t dim, std::vector<Sample> samples,
                                bool closed, double snap_eps) {
  if (dim == 0) throw Error(ErrorKind::InvalidInput, "path dimension must be positive");
  if (samples.size() < 2) {
    throw Error(ErrorKind::InvalidInput, "a path needs at least 2 samples");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].x.size() != dim) {
      throw Error(ErrorKind::InvalidInput,
                  "sample " + std::to_string(i) + " has wrong dimension");
    }
    if (!std::isfinite(samples[i].t) || !all_finite(samples[i].x)) {
      throw Error(ErrorKind::InvalidInput,
                  "sample " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(samples[i].t > samples[i - 1].t)) {
      throw Error(ErrorKind::InvalidInput,
                  "sample parameters must be strictly increasing at index " +
                      std::to_string(i));
    }
  }
  if (closed) {
    std::vector<const Point*> pts;
    pts.reserve(samples.size());
    for (const auto& s : samples) pts.push_back(&s.x);
    const double eps =
        snap_eps > 0.0 ? snap_eps : tolerance_from_diameter(bbox_diameter_of(pts, dim));
    const double gap = dist(samples.front().x, samples.back().x);
    if (gap > eps) {
      throw Error(ErrorKind::InvalidInput,
                  "closed path endpoints differ by " + std::to_string(gap));
    }
    samples.back().x = samples.front().x;
  }
  SampledPath path;
  path.dim_ = dim;
  path.closed_ = closed;
  path.samples_ = std::move(samples);
  return path;
}

SampledPath SampledPath::from_points(std::vector<Point> points, bool closed,
                                     double snap_eps) {
  if (points.empty()) throw Error(ErrorKind::InvalidInput, "empty point list");
  const std::size_t dim = points.front().size();
  std::vector<Sample> samples;
  samples.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    samples.push_back({static_cast<double>(i), std::move(points[i])});
  }
  return create(dim, std::move(samples), closed, snap_eps);
}

double SampledPath::parameter_length() const {
  return samples_.back().t - samples_.front().t;
}

double SampledPath::l1_length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      total += std::abs(samples_[i].x[k] - samples_[i - 1].x[k]);
    }
  }
  return total;
}

double SampledPath::max_abs_coordinate() const {
  double m = 0.0;
  for (const auto& s : samples_) {
    for (double v : s.x) m = std::max(m, std::abs(v));
  }
  return m;
}

double SampledPath::bbox_diameter() const {
  std::vector<const Point*> pts;
  pts.reserve(samples_.size());
  for (const auto& s : samples_) pts.push_back(&s.x);
  return bbox_diameter_of(pts, dim_);
}

// ---------------------------------------------------------------------------
// CurveComplex

namespace {

struct SegmentRef {
  std::size_t edge;
  std::size_t index;  // segment index within the edge polyline
};

bool collinear_same_direction(const Point& origin, const Point& a, const Point& b) {
  const detail::Vec u = detail::sub(a, origin);
  const detail::Vec w = detail::sub(b, origin);
  const double nu = detail::norm(u);
  const double nw = detail::norm(w);
  if (nu == 0.0 || nw == 0.0) return true;
  return detail::dot(u, w) / (nu * nw) > 1.0 - 1e-12;
}

}  // namespace

CurveComplex CurveComplex::create(std::size_t dim, std::vector<Point> vertices,
                                  std::vector<Edge> edges, double tol) {
  if (dim == 0) throw Error(ErrorKind::InvalidInput, "complex dimension must be positive");
  if (edges.empty()) throw Error(ErrorKind::InvalidInput, "complex has no edges");
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (vertices[v].size() != dim || !all_finite(vertices[v])) {
      throw Error(ErrorKind::InvalidInput, "vertex " + std::to_string(v) + " is malformed");
    }
  }
  std::vector<const Point*> all_points;
  for (const auto& v : vertices) all_points.push_back(&v);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& edge = edges[e];
    if (edge.from >= vertices.size() || edge.to >= vertices.size()) {
      throw Error(ErrorKind::InvalidInput, "edge " + std::to_string(e) + " references a missing vertex");
    }
    if (edge.points.size() < 2) {
      throw Error(ErrorKind::InvalidInput, "edge " + std::to_string(e) + " needs at least 2 points");
    }
    for (const auto& p : edge.points) {
      if (p.size() != dim || !all_finite(p)) {
        throw Error(ErrorKind::InvalidInput, "edge " + std::to_string(e) + " has a malformed point");
      }
      all_points.push_back(&p);
    }
  }
  const double eps = tol > 0.0 ? tol : tolerance_from_diameter(bbox_diameter_of(all_points, dim));

  for (std::size_t e = 0; e < edges.size(); ++e) {
    Edge& edge = edges[e];
    if (dist(edge.points.front(), vertices[edge.from]) > eps ||
        dist(edge.points.back(), vertices[edge.to]) > eps) {
      throw Error(ErrorKind::InvalidInput,
                  "edge " + std::to_string(e) + " endpoints do not match its vertices");
    }
    edge.points.front() = vertices[edge.from];
    edge.points.back() = vertices[edge.to];
    for (std::size_t i = 1; i < edge.points.size(); ++i) {
      if (dist(edge.points[i - 1], edge.points[i]) <= eps) {
        throw Error(ErrorKind::DegenerateGeometry,
                    "edge " + std::to_string(e) + " has a zero-length segment");
      }
    }
    if (edge.is_loop() && edge.points.size() < 4) {
      throw Error(ErrorKind::DegenerateGeometry,
                  "loop edge " + std::to_string(e) + " needs at least 3 segments");
    }
  }

  CurveComplex complex;
  complex.dim_ = dim;
  complex.adjacency_.assign(vertices.size(), {});
  for (std::size_t e = 0; e < edges.size(); ++e) {
    complex.adjacency_[edges[e].from].push_back(e);
    complex.adjacency_[edges[e].to].push_back(e);
  }
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (complex.adjacency_[v].empty()) {
      throw Error(ErrorKind::InvalidInput, "vertex " + std::to_string(v) + " has no incident edge");
    }
  }

  // Connectivity.
  {
    std::vector<bool> seen(vertices.size(), false);
    std::queue<std::size_t> queue;
    queue.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop();
      for (std::size_t e : complex.adjacency_[v]) {
        const std::size_t w = edges[e].from == v ? edges[e].to : edges[e].from;
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          queue.push(w);
        }
      }
    }
    if (count != vertices.size()) {
      throw Error(ErrorKind::ComplexDisconnected,
                  "complex has " + std::to_string(vertices.size() - count) +
                      " vertices unreachable from vertex 0");
    }
  }

  // CW condition: edge interiors pairwise disjoint and free of vertices.
  std::vector<SegmentRef> segments;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (std::size_t i = 0; i + 1 < edges[e].points.size(); ++i) segments.push_back({e, i});
  }
  auto seg_a = [&](const SegmentRef& s) -> const Point& { return edges[s.edge].points[s.index]; };
  auto seg_b = [&](const SegmentRef& s) -> const Point& { return edges[s.edge].points[s.index + 1]; };
  // Vertex id sitting at a polyline point, or kNoVertex for interior points.
  auto vertex_at = [&](std::size_t e, std::size_t point_index) {
    if (point_index == 0) return edges[e].from;
    if (point_index + 1 == edges[e].points.size()) return edges[e].to;
    return kNoVertex;
  };

  std::vector<Point> lo(segments.size(), Point(dim)), hi(segments.size(), Point(dim));
  for (std::size_t s = 0; s < segments.size(); ++s) {
    for (std::size_t k = 0; k < dim; ++k) {
      lo[s][k] = std::min(seg_a(segments[s])[k], seg_b(segments[s])[k]) - eps;
      hi[s][k] = std::max(seg_a(segments[s])[k], seg_b(segments[s])[k]) + eps;
    }
  }
  auto boxes_overlap = [&](std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < dim; ++k) {
      if (lo[i][k] > hi[j][k] || lo[j][k] > hi[i][k]) return false;
    }
    return true;
  };

  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (std::size_t j = i + 1; j < segments.size(); ++j) {
      if (!boxes_overlap(i, j)) continue;
      const SegmentRef& si = segments[i];
      const SegmentRef& sj = segments[j];
      const auto contact = detail::segment_segment(seg_a(si), seg_b(si), seg_a(sj), seg_b(sj));
      if (contact.distance > eps) continue;
      // Find a legitimately shared endpoint.
      std::optional<std::pair<std::size_t, std::size_t>> shared;  // point indices
      for (std::size_t pi : {si.index, si.index + 1}) {
        for (std::size_t pj : {sj.index, sj.index + 1}) {
          const Point& a = edges[si.edge].points[pi];
          const Point& b = edges[sj.edge].points[pj];
          if (dist(a, b) > eps) continue;
          bool legal = false;
          if (si.edge == sj.edge) {
            legal = pi == pj ||
                    (edges[si.edge].is_loop() && vertex_at(si.edge, pi) != kNoVertex &&
                     vertex_at(sj.edge, pj) != kNoVertex);
          } else {
            const std::size_t vi = vertex_at(si.edge, pi);
            legal = vi != kNoVertex && vi == vertex_at(sj.edge, pj);
          }
          if (legal) shared = std::make_pair(pi, pj);
        }
      }
      if (!shared) {
        throw Error(ErrorKind::DegenerateGeometry,
                    "edges " + std::to_string(si.edge) + " and " + std::to_string(sj.edge) +
                        " intersect away from a shared vertex");
      }
      const Point& origin = edges[si.edge].points[shared->first];
      const Point& far_i = edges[si.edge].points[shared->first == si.index ? si.index + 1 : si.index];
      const Point& far_j = edges[sj.edge].points[shared->second == sj.index ? sj.index + 1 : sj.index];
      if (collinear_same_direction(origin, far_i, far_j)) {
        throw Error(ErrorKind::DegenerateGeometry,
                    "edges " + std::to_string(si.edge) + " and " + std::to_string(sj.edge) +
                        " overlap");
      }
    }
  }
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    for (const SegmentRef& s : segments) {
      const auto ps = detail::point_segment(vertices[v], seg_a(s), seg_b(s));
      if (ps.distance > eps) continue;
      const bool at_a = vertex_at(s.edge, s.index) == v && dist(seg_a(s), vertices[v]) <= eps;
      const bool at_b = vertex_at(s.edge, s.index + 1) == v && dist(seg_b(s), vertices[v]) <= eps;
      if (!at_a && !at_b) {
        throw Error(ErrorKind::DegenerateGeometry,
                    "vertex " + std::to_string(v) + " lies inside edge " + std::to_string(s.edge));
      }
    }
  }

  complex.vertices_ = std::move(vertices);
  complex.edges_ = std::move(edges);
  return complex;
}

double CurveComplex::bbox_diameter() const {
  std::vector<const Point*> pts;
  for (const auto& e : edges_) {
    for (const auto& p : e.points) pts.push_back(&p);
  }
  return bbox_diameter_of(pts, dim_);
}

double CurveComplex::edge_length(std::size_t e) const {
  double total = 0.0;
  const auto& pts = edges_[e].points;
  for (std::size_t i = 1; i < pts.size(); ++i) total += dist(pts[i - 1], pts[i]);
  return total;
}

// ---------------------------------------------------------------------------
// Words

std::size_t letter_tail(const CurveComplex& complex, const Letter& letter) {
  const Edge& e = complex.edge(letter.edge);
  return letter.orientation > 0 ? e.from : e.to;
}

std::size_t letter_head(const CurveComplex& complex, const Letter& letter) {
  const Edge& e = complex.edge(letter.edge);
  return letter.orientation > 0 ? e.to : e.from;
}

void validate_word(const CurveComplex& complex, const EdgeWord& word) {
  for (std::size_t i = 0; i < word.letters.size(); ++i) {
    const Letter& l = word.letters[i];
    if (l.edge >= complex.num_edges() || (l.orientation != 1 && l.orientation != -1)) {
      throw Error(ErrorKind::InvalidInput, "malformed letter at position " + std::to_string(i));
    }
    if (i > 0 && letter_head(complex, word.letters[i - 1]) != letter_tail(complex, l)) {
      throw Error(ErrorKind::InvalidInput,
                  "letters " + std::to_string(i - 1) + " and " + std::to_string(i) +
                      " do not share a vertex");
    }
  }
  if (!word.letters.empty() && word.start != kNoVertex &&
      word.start != letter_tail(complex, word.letters.front())) {
    throw Error(ErrorKind::InvalidInput, "word start vertex does not match its first letter");
  }
}

bool is_closed(const CurveComplex& complex, const EdgeWord& word) {
  if (word.letters.empty()) return true;
  return letter_tail(complex, word.letters.front()) == letter_head(complex, word.letters.back());
}

EdgeWord inverse(const CurveComplex& complex, const EdgeWord& word) {
  EdgeWord out;
  out.letters.reserve(word.letters.size());
  for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
    out.letters.push_back({it->edge, -it->orientation});
  }
  out.start = out.letters.empty() ? word.start : letter_tail(complex, out.letters.front());
  return out;
}

EdgeWord concat(const EdgeWord& a, const EdgeWord& b) {
  EdgeWord out = a;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  if (out.start == kNoVertex) out.start = b.start;
  return out;
}

// ---------------------------------------------------------------------------
// build_complex

double default_snap_eps(const std::vector<SampledPath>& paths) {
  std::vector<const Point*> pts;
  for (const auto& p : paths) {
    for (const auto& s : p.samples()) pts.push_back(&s.x);
  }
  const std::size_t dim = paths.empty() ? 1 : paths.front().dim();
  return tolerance_from_diameter(bbox_diameter_of(pts, dim));
}

namespace {

struct RawSegment {
  Point a;
  Point b;
  std::vector<double> splits;  // parameters in [0, 1]
};

// Adds the intersection parameters of two segments (within eps) to both.
void intersect_into(RawSegment& A, RawSegment& B, double eps) {
  const auto c = detail::segment_segment(A.a, A.b, B.a, B.b);
  if (c.distance > eps) return;
  const detail::Vec u = detail::sub(A.b, A.a);
  const detail::Vec w = detail::sub(B.b, B.a);
  const double lu = detail::norm(u);
  const double lw = detail::norm(w);
  const double cosang = std::abs(detail::dot(u, w)) / (lu * lw);
  const bool parallel = cosang > 1.0 - 1e-12;
  if (parallel) {
    // Collinear (distance between lines is within eps since the segments
    // touch): split both at every endpoint of the other that falls inside.
    auto param_on = [](const RawSegment& S, const Point& p) {
      return detail::point_segment(p, S.a, S.b);
    };
    for (const Point* p : {&B.a, &B.b}) {
      const auto ps = param_on(A, *p);
      if (ps.distance <= eps) A.splits.push_back(ps.s);
    }
    for (const Point* p : {&A.a, &A.b}) {
      const auto ps = param_on(B, *p);
      if (ps.distance <= eps) B.splits.push_back(ps.s);
    }
    return;
  }
  A.splits.push_back(c.s);
  B.splits.push_back(c.t);
}

}  // namespace

CurveComplex build_complex(const std::vector<SampledPath>& paths, double snap_eps) {
  if (paths.empty()) throw Error(ErrorKind::InvalidInput, "no paths given");
  const std::size_t dim = paths.front().dim();
  for (const auto& p : paths) {
    if (p.dim() != dim) throw Error(ErrorKind::InvalidInput, "paths have different dimensions");
  }
  const double eps = snap_eps > 0.0 ? snap_eps : default_snap_eps(paths);

  std::vector<RawSegment> segments;
  std::vector<Point> pinned;  // endpoints of open paths
  for (const auto& path : paths) {
    const auto& s = path.samples();
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (s[i].x == s[i - 1].x) continue;
      segments.push_back({s[i - 1].x, s[i].x, {0.0, 1.0}});
    }
    if (!path.closed()) {
      pinned.push_back(s.front().x);
      pinned.push_back(s.back().x);
    }
  }
  if (segments.empty()) {
    throw Error(ErrorKind::DegenerateGeometry, "paths have no segment of positive length");
  }

  // Pairwise intersections with a bounding-box prefilter.
  std::vector<Point> lo(segments.size(), Point(dim)), hi(segments.size(), Point(dim));
  for (std::size_t s = 0; s < segments.size(); ++s) {
    for (std::size_t k = 0; k < dim; ++k) {
      lo[s][k] = std::min(segments[s].a[k], segments[s].b[k]) - eps;
      hi[s][k] = std::max(segments[s].a[k], segments[s].b[k]) + eps;
    }
  }
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (std::size_t j = i + 1; j < segments.size(); ++j) {
      bool overlap = true;
      for (std::size_t k = 0; k < dim && overlap; ++k) {
        overlap = !(lo[i][k] > hi[j][k] || lo[j][k] > hi[i][k]);
      }
      if (overlap) intersect_into(segments[i], segments[j], eps);
    }
  }

  // Gather candidate points and cluster them.
  struct Candidate {
    Point x;
    bool original;  // an input sample, preferred as cluster representative
  };
  std::vector<Candidate> candidates;
  std::vector<std::vector<std::pair<double, std::size_t>>> seg_points(segments.size());
  for (std::size_t s = 0; s < segments.size(); ++s) {
    auto& sp = segments[s].splits;
    std::sort(sp.begin(), sp.end());
    sp.erase(std::unique(sp.begin(), sp.end()), sp.end());
    for (double param : sp) {
      const bool original = param == 0.0 || param == 1.0;
      Point x = param == 0.0   ? segments[s].a
                : param == 1.0 ? segments[s].b
                               : detail::lerp(segments[s].a, segments[s].b, param);
      seg_points[s].push_back({param, candidates.size()});
      candidates.push_back({std::move(x), original});
    }
  }
  std::vector<std::size_t> pinned_ids;
  for (auto& p : pinned) {
    pinned_ids.push_back(candidates.size());
    candidates.push_back({p, true});
  }

  UnionFind uf(candidates.size());
  {
    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return candidates[a].x[0] < candidates[b].x[0];
    });
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        if (candidates[order[j]].x[0] - candidates[order[i]].x[0] > eps) break;
        if (dist(candidates[order[i]].x, candidates[order[j]].x) <= eps) {
          uf.unite(order[i], order[j]);
        }
      }
    }
  }
  // Cluster representative: the lowest-index original sample, else the mean.
  std::map<std::size_t, std::size_t> root_to_cluster;
  std::vector<Point> cluster_point;
  std::vector<std::size_t> candidate_cluster(candidates.size());
  {
    std::map<std::size_t, std::vector<std::size_t>> members;
    for (std::size_t c = 0; c < candidates.size(); ++c) members[uf.find(c)].push_back(c);
    for (auto& [root, list] : members) {
      const std::size_t id = cluster_point.size();
      root_to_cluster[root] = id;
      std::optional<std::size_t> rep;
      for (std::size_t c : list) {
        if (candidates[c].original) {
          rep = c;
          break;
        }
      }
      if (rep) {
        cluster_point.push_back(candidates[*rep].x);
      } else {
        Point mean(dim, 0.0);
        for (std::size_t c : list) {
          for (std::size_t k = 0; k < dim; ++k) mean[k] += candidates[c].x[k];
        }
        for (auto& v : mean) v /= static_cast<double>(list.size());
        cluster_point.push_back(std::move(mean));
      }
      for (std::size_t c : list) candidate_cluster[c] = id;
    }
  }

  // Sub-segments between consecutive clusters, deduplicated.
  std::map<std::pair<std::size_t, std::size_t>, bool> links;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto& pts = seg_points[s];
    const std::size_t first = candidate_cluster[pts.front().second];
    const std::size_t last = candidate_cluster[pts.back().second];
    if (first == last) {
      throw Error(ErrorKind::DegenerateGeometry,
                  "segment collapses to a point after snapping");
    }
    std::size_t prev = first;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const std::size_t cur = candidate_cluster[pts[i].second];
      if (cur == prev) continue;
      links[{std::min(prev, cur), std::max(prev, cur)}] = true;
      prev = cur;
    }
  }

  const std::size_t num_clusters = cluster_point.size();
  std::vector<std::vector<std::size_t>> nbrs(num_clusters);
  for (const auto& [key, _] : links) {
    nbrs[key.first].push_back(key.second);
    nbrs[key.second].push_back(key.first);
  }
  auto lex_less = [&](std::size_t a, std::size_t b) { return cluster_point[a] < cluster_point[b]; };
  for (auto& list : nbrs) std::sort(list.begin(), list.end(), lex_less);

  std::vector<bool> is_vertex(num_clusters, false);
  for (std::size_t c = 0; c < num_clusters; ++c) {
    if (!nbrs[c].empty() && nbrs[c].size() != 2) is_vertex[c] = true;
  }
  for (std::size_t id : pinned_ids) {
    const std::size_t c = candidate_cluster[id];
    if (!nbrs[c].empty()) is_vertex[c] = true;
  }

  std::set<std::pair<std::size_t, std::size_t>> used;
  auto link_key = [](std::size_t a, std::size_t b) {
    return std::make_pair(std::min(a, b), std::max(a, b));
  };

  std::vector<std::size_t> vertex_clusters;
  std::vector<Edge> edges;
  std::map<std::size_t, std::size_t> cluster_to_vertex;

  auto add_vertex = [&](std::size_t c) {
    auto it = cluster_to_vertex.find(c);
    if (it != cluster_to_vertex.end()) return it->second;
    const std::size_t id = vertex_clusters.size();
    vertex_clusters.push_back(c);
    cluster_to_vertex[c] = id;
    return id;
  };
  auto walk_chain = [&](std::size_t start, std::size_t next) {
    std::vector<std::size_t> chain{start, next};
    used.insert(link_key(start, next));
    std::size_t prev = start;
    std::size_t cur = next;
    while (!is_vertex[cur]) {
      const std::size_t step = nbrs[cur][0] == prev ? nbrs[cur][1] : nbrs[cur][0];
      used.insert(link_key(cur, step));
      chain.push_back(step);
      prev = cur;
      cur = step;
    }
    return chain;
  };

  std::vector<std::size_t> ordered(num_clusters);
  std::iota(ordered.begin(), ordered.end(), std::size_t{0});
  std::sort(ordered.begin(), ordered.end(), lex_less);
  for (std::size_t c : ordered) {
    if (is_vertex[c]) add_vertex(c);
  }
  for (std::size_t c : ordered) {
    if (!is_vertex[c]) continue;
    for (std::size_t n : nbrs[c]) {
      if (used.count(link_key(c, n))) continue;
      const auto chain = walk_chain(c, n);
      Edge edge;
      edge.from = add_vertex(chain.front());
      edge.to = add_vertex(chain.back());
      for (std::size_t k : chain) edge.points.push_back(cluster_point[k]);
      edges.push_back(std::move(edge));
    }
  }
  // Remaining links form pure cycles; anchor each at its smallest point.
  for (std::size_t c : ordered) {
    if (nbrs[c].empty()) continue;
    bool has_unused = false;
    for (std::size_t n : nbrs[c]) has_unused = has_unused || !used.count(link_key(c, n));
    if (!has_unused) continue;
    is_vertex[c] = true;
    const auto chain = walk_chain(c, nbrs[c][0]);
    Edge edge;
    edge.from = edge.to = add_vertex(c);
    for (std::size_t k : chain) edge.points.push_back(cluster_point[k]);
    edges.push_back(std::move(edge));
  }

  std::vector<Point> vertices;
  vertices.reserve(vertex_clusters.size());
  for (std::size_t c : vertex_clusters) vertices.push_back(cluster_point[c]);
  return CurveComplex::create(dim, std::move(vertices), std::move(edges), 0.5 * eps);
}

// ---------------------------------------------------------------------------
// trace_path

namespace {

struct Location {
  bool at_vertex = false;
  std::size_t vertex = kNoVertex;
  std::size_t edge = 0;
  double s = 0.0;  // arclength along the edge
  double distance = 0.0;
};

class Locator {
 public:
  Locator(const CurveComplex& complex, double tol) : complex_(complex), tol_(tol) {
    for (std::size_t e = 0; e < complex.num_edges(); ++e) {
      const auto& pts = complex.edge(e).points;
      std::vector<double> cum{0.0};
      for (std::size_t i = 1; i < pts.size(); ++i) cum.push_back(cum.back() + dist(pts[i - 1], pts[i]));
      cumulative_.push_back(std::move(cum));
    }
  }

  double length(std::size_t e) const { return cumulative_[e].back(); }

  Location locate(const Point& p) const {
    Location best;
    best.distance = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < complex_.num_vertices(); ++v) {
      const double d = dist(p, complex_.vertex(v));
      if (d <= tol_ && d < best.distance) {
        best.at_vertex = true;
        best.vertex = v;
        best.distance = d;
      }
    }
    if (best.at_vertex) return best;
    for (std::size_t e = 0; e < complex_.num_edges(); ++e) {
      const auto proj = project(p, e);
      if (proj.second < best.distance) {
        best.edge = e;
        best.s = proj.first;
        best.distance = proj.second;
      }
    }
    return best;
  }

  // (arclength, distance) of the nearest point of edge e.
  std::pair<double, double> project(const Point& p, std::size_t e) const {
    const auto& pts = complex_.edge(e).points;
    double best_d = std::numeric_limits<double>::infinity();
    double best_s = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const auto ps = detail::point_segment(p, pts[i], pts[i + 1]);
      if (ps.distance < best_d) {
        best_d = ps.distance;
        best_s = cumulative_[e][i] + ps.s * (cumulative_[e][i + 1] - cumulative_[e][i]);
      }
    }
    return {best_s, best_d};
  }

 private:
  const CurveComplex& complex_;
  double tol_;
  std::vector<std::vector<double>> cumulative_;
};

struct RefinedPoint {
  Point x;
  std::size_t source;  // originating sample index
  Location loc;
};

struct Piece {
  std::size_t edge;
  int start_end;  // -1 interior, 0 at from-end, 1 at to-end
  int finish_end;
};

}  // namespace

EdgeWord trace_path(const SampledPath& path, const CurveComplex& complex, double tol) {
  if (path.dim() != complex.dim()) {
    throw Error(ErrorKind::InvalidInput, "path and complex dimensions differ");
  }
  if (tol <= 0.0) tol = 10.0 * tolerance_from_diameter(complex.bbox_diameter());
  const Locator locator(complex, tol);

  // Insert complex vertices crossed by path segments.
  std::vector<RefinedPoint> pts;
  const auto& samples = path.samples();
  auto push = [&](Point x, std::size_t source) {
    Location loc = locator.locate(x);
    if (loc.distance > tol) throw PathOffCurve(source, loc.distance);
    pts.push_back({std::move(x), source, loc});
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i > 0) {
      const Point& a = samples[i - 1].x;
      const Point& b = samples[i].x;
      std::vector<std::pair<double, std::size_t>> hits;
      for (std::size_t v = 0; v < complex.num_vertices(); ++v) {
        const Point& q = complex.vertex(v);
        const auto ps = detail::point_segment(q, a, b);
        if (ps.distance <= tol && dist(q, a) > tol && dist(q, b) > tol) hits.push_back({ps.s, v});
      }
      std::sort(hits.begin(), hits.end());
      for (const auto& [s, v] : hits) {
        RefinedPoint rp{complex.vertex(v), i - 1, {}};
        rp.loc.at_vertex = true;
        rp.loc.vertex = v;
        pts.push_back(std::move(rp));
      }
    }
    push(samples[i].x, i);
  }

  // Convert consecutive refined points into edge pieces.
  std::vector<Piece> pieces;
  std::vector<std::size_t> piece_start_point;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const RefinedPoint& a = pts[k];
    const RefinedPoint& b = pts[k + 1];
    if (a.loc.at_vertex && b.loc.at_vertex && a.loc.vertex == b.loc.vertex) continue;
    if (dist(a.x, b.x) == 0.0) continue;
    const Point mid = detail::lerp(a.x, b.x, 0.5);
    const Location m = locator.locate(mid);
    if (m.distance > tol) throw PathOffCurve(a.source, m.distance);
    std::size_t e;
    if (!m.at_vertex) {
      e = m.edge;
    } else if (!a.loc.at_vertex) {
      e = a.loc.edge;
    } else if (!b.loc.at_vertex) {
      e = b.loc.edge;
    } else {
      continue;
    }
    const double len = locator.length(e);
    const Edge& edge = complex.edge(e);
    const double s_mid = m.at_vertex ? (locator.project(mid, e).first) : m.s;
    auto end_of = [&](const RefinedPoint& p) -> int {
      if (!p.loc.at_vertex) return -1;
      const bool is_from = edge.from == p.loc.vertex;
      const bool is_to = edge.to == p.loc.vertex;
      if (is_from && is_to) return s_mid < 0.5 * len ? 0 : 1;
      if (is_from) return 0;
      if (is_to) return 1;
      throw PathOffCurve(p.source, tol);
    };
    for (const RefinedPoint* p : {&a, &b}) {
      if (!p->loc.at_vertex) {
        const auto proj = locator.project(p->x, e);
        if (proj.second > tol) throw PathOffCurve(p->source, proj.second);
      }
    }
    pieces.push_back({e, end_of(a), end_of(b)});
    piece_start_point.push_back(k);
  }

  EdgeWord word;
  if (pieces.empty()) {
    for (const auto& p : pts) {
      if (p.loc.at_vertex) {
        word.start = p.loc.vertex;
        break;
      }
    }
    return word;
  }

  // Closed paths are rotated to start at a vertex visit.
  if (path.closed()) {
    std::optional<std::size_t> first_vertex_piece;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (pieces[i].start_end >= 0) {
        first_vertex_piece = i;
        break;
      }
    }
    if (!first_vertex_piece) return word;  // stays inside one edge interior
    std::rotate(pieces.begin(), pieces.begin() + static_cast<std::ptrdiff_t>(*first_vertex_piece),
                pieces.end());
  }

  int entry_end = -1;
  bool inside = false;
  std::size_t current = 0;
  for (const Piece& piece : pieces) {
    const Edge& edge = complex.edge(piece.edge);
    if (piece.start_end >= 0) {
      if (word.start == kNoVertex) word.start = piece.start_end == 0 ? edge.from : edge.to;
      entry_end = piece.start_end;
      inside = true;
      current = piece.edge;
    } else if (!inside || current != piece.edge) {
      // Entered an edge interior without a known entry end (open path start).
      inside = true;
      current = piece.edge;
    }
    if (piece.finish_end >= 0) {
      if (word.start == kNoVertex) {
        word.start = piece.finish_end == 0 ? edge.from : edge.to;
      }
      if (entry_end >= 0 && piece.finish_end != entry_end) {
        word.letters.push_back({piece.edge, piece.finish_end == 1 ? 1 : -1});
      }
      inside = false;
      entry_end = -1;
    }
  }
  if (!word.letters.empty()) word.start = letter_tail(complex, word.letters.front());
  return word;
}

SampledPath realize_word(const EdgeWord& word, const CurveComplex& complex) {
  validate_word(complex, word);
  std::vector<Point> points;
  if (word.letters.empty()) {
    if (word.start == kNoVertex || word.start >= complex.num_vertices()) {
      throw Error(ErrorKind::InvalidInput, "empty word needs a start vertex");
    }
    points = {complex.vertex(word.start), complex.vertex(word.start)};
    return SampledPath::create(complex.dim(), {{0.0, points[0]}, {1.0, points[1]}}, true);
  }
  for (const Letter& l : word.letters) {
    const auto& poly = complex.edge(l.edge).points;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& p = l.orientation > 0 ? poly[i] : poly[n - 1 - i];
      if (i == 0 && !points.empty()) continue;
      points.push_back(p);
    }
  }
  std::vector<Sample> samples;
  samples.reserve(points.size());
  double t = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) t += dist(points[i - 1], points[i]);
    samples.push_back({t, points[i]});
  }
  return SampledPath::create(complex.dim(), std::move(samples), is_closed(complex, word));
}

Subcomplex subcomplex(const CurveComplex& complex, const std::vector<std::size_t>& edge_ids) {
  std::vector<std::size_t> sorted = edge_ids;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::map<std::size_t, std::size_t> vmap;
  std::vector<std::size_t> edge_map;
  std::vector<std::size_t> vertex_map;
  std::vector<Point> vertices;
  std::vector<Edge> edges;
  auto map_vertex = [&](std::size_t v) {
    auto it = vmap.find(v);
    if (it != vmap.end()) return it->second;
    const std::size_t id = vertices.size();
    vmap[v] = id;
    vertices.push_back(complex.vertex(v));
    vertex_map.push_back(v);
    return id;
  };
  for (std::size_t e : sorted) {
    if (e >= complex.num_edges()) throw Error(ErrorKind::InvalidInput, "edge id out of range");
    Edge edge = complex.edge(e);
    edge.from = map_vertex(edge.from);
    edge.to = map_vertex(edge.to);
    edges.push_back(std::move(edge));
    edge_map.push_back(e);
  }
  return {CurveComplex::create(complex.dim(), std::move(vertices), std::move(edges)),
          std::move(edge_map), std::move(vertex_map)};
}

}  // namespace moment_atlas
