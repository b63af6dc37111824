#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <vector>

namespace moment_atlas {

using Point = std::vector<double>;

struct Sample {
  double t = 0.0;
  Point x;
};

/// A parametrized piecewise-linear path t -> x(t) in R^n.
///
/// Immutable after construction. For closed paths the first and last points
/// are identical bit for bit: create() snaps the last sample onto the first
/// when they agree within the snapping tolerance and rejects the path
/// otherwise.
class SampledPath {
 public:
  /// Validates and builds a path. A non-positive snap_eps selects the default
  /// 1e-9 x (bounding-box diameter).
  static SampledPath create(std::size_t dim, std::vector<Sample> samples,
                            bool closed, double snap_eps = -1.0);

  /// Convenience: parameter t = 0, 1, 2, ... for the given points.
  static SampledPath from_points(std::vector<Point> points, bool closed,
                                 double snap_eps = -1.0);

  std::size_t dim() const noexcept { return dim_; }
  bool closed() const noexcept { return closed_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const std::vector<Sample>& samples() const noexcept { return samples_; }
  const Point& point(std::size_t i) const { return samples_[i].x; }
  double t(std::size_t i) const { return samples_[i].t; }

  double parameter_length() const;
  /// Sum over segments of the l1 norm of the displacement.
  double l1_length() const;
  /// Largest absolute coordinate over all samples.
  double max_abs_coordinate() const;
  double bbox_diameter() const;

 private:
  SampledPath() = default;

  std::size_t dim_ = 0;
  bool closed_ = false;
  std::vector<Sample> samples_;
};

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  /// Polyline geometry, front() == vertex(from), back() == vertex(to).
  std::vector<Point> points;

  bool is_loop() const noexcept { return from == to; }
};

/// Finite one-dimensional CW complex with polyline edges.
class CurveComplex {
 public:
  /// Validates the CW conditions (endpoints coincide with vertices, edge
  /// interiors disjoint and vertex-free, every vertex used, connected).
  /// `tol` is the coincidence tolerance; non-positive selects
  /// 1e-9 x (bounding-box diameter).
  static CurveComplex create(std::size_t dim, std::vector<Point> vertices,
                             std::vector<Edge> edges, double tol = -1.0);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Point& vertex(std::size_t v) const { return vertices_[v]; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }
  /// Edge ids incident to v; a loop edge appears twice.
  const std::vector<std::size_t>& incident(std::size_t v) const {
    return adjacency_[v];
  }
  std::size_t degree(std::size_t v) const { return adjacency_[v].size(); }
  double bbox_diameter() const;
  double edge_length(std::size_t e) const;

 private:
  CurveComplex() = default;

  std::size_t dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

struct Letter {
  std::size_t edge = 0;
  int orientation = 1;  // +1 traverses from -> to, -1 to -> from

  auto operator<=>(const Letter&) const = default;
};

inline constexpr std::size_t kNoVertex = std::numeric_limits<std::size_t>::max();

/// Combinatorial form of a path on a complex: a sequence of oriented edges.
/// `start` pins the base vertex, which matters for the empty word.
struct EdgeWord {
  std::vector<Letter> letters;
  std::size_t start = kNoVertex;

  bool empty() const noexcept { return letters.empty(); }
  std::size_t size() const noexcept { return letters.size(); }
  bool operator==(const EdgeWord& other) const {
    return letters == other.letters && start == other.start;
  }
};

std::size_t letter_tail(const CurveComplex& complex, const Letter& letter);
std::size_t letter_head(const CurveComplex& complex, const Letter& letter);

/// Checks consecutive letters share vertices; throws InvalidInput otherwise.
void validate_word(const CurveComplex& complex, const EdgeWord& word);
bool is_closed(const CurveComplex& complex, const EdgeWord& word);
EdgeWord inverse(const CurveComplex& complex, const EdgeWord& word);
EdgeWord concat(const EdgeWord& a, const EdgeWord& b);

/// Default snapping tolerance 1e-9 x the bounding-box diameter of all paths.
double default_snap_eps(const std::vector<SampledPath>& paths);

/// Builds the CW complex of the union of the path images. All pairwise
/// segment intersections become vertices; degree-2 chains are merged except
/// at endpoints of open input paths.
CurveComplex build_complex(const std::vector<SampledPath>& paths,
                           double snap_eps = -1.0);

/// Converts a path lying on `complex` into the sequence of full edge
/// traversals it performs. Excursions into an edge that return to the same
/// end produce no letter. `tol` <= 0 selects 10 x the default snap epsilon of
/// the complex.
EdgeWord trace_path(const SampledPath& path, const CurveComplex& complex,
                    double tol = -1.0);

/// Geometric realization of a word: concatenated edge polylines with t equal
/// to the cumulative Euclidean arclength.
SampledPath realize_word(const EdgeWord& word, const CurveComplex& complex);

/// The subcomplex spanned by the given edges (vertices renumbered in order
/// of first appearance). Returns the edge-id map alongside.
struct Subcomplex {
  CurveComplex complex;
  std::vector<std::size_t> edge_map;  // sub edge id -> original edge id
  std::vector<std::size_t> vertex_map;  // sub vertex id -> original vertex id
};
Subcomplex subcomplex(const CurveComplex& complex,
                      const std::vector<std::size_t>& edge_ids);

}  // namespace moment_atlas
