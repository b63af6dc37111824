#include "moment_atlas/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <random>

#include "moment_atlas/errors.hpp"
#include "moment_atlas/topology.hpp"

namespace moment_atlas {

namespace {

double lattice(unsigned i, unsigned k) { return -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(k); }

SampledPath segment(Point a, Point b) { return SampledPath::from_points({std::move(a), std::move(b)}, false); }

// Square with corner at the origin and opposite corner (s, s); counterclockwise
// for either sign of s.
std::vector<Point> square_points(double s) { return {{0, 0}, {s, 0}, {s, s}, {0, s}, {0, 0}}; }

}  // namespace

Fixture grid(unsigned k) {
  if (k == 0) throw Error(ErrorKind::InvalidInput, "grid needs k >= 1");
  std::vector<SampledPath> segments;
  for (unsigned j = 0; j <= k; ++j) {
    for (unsigned i = 0; i < k; ++i) {
      segments.push_back(segment({lattice(i, k), lattice(j, k)}, {lattice(i + 1, k), lattice(j, k)}));
      segments.push_back(segment({lattice(j, k), lattice(i, k)}, {lattice(j, k), lattice(i + 1, k)}));
    }
  }
  Fixture f{"grid", build_complex(segments), {}, std::nullopt};
  f.paths.push_back(basis_path(f.complex));
  return f;
}

Fixture cube_grid(std::size_t n, unsigned k) {
  if (n < 2 || k == 0) throw Error(ErrorKind::InvalidInput, "cube_grid needs n >= 2 and k >= 1");
  const std::size_t side = k + 1;
  std::size_t count = 1;
  for (std::size_t a = 0; a < n; ++a) count *= side;

  std::vector<Point> vertices(count, Point(n));
  std::vector<std::vector<unsigned>> index(count, std::vector<unsigned>(n));
  for (std::size_t v = 0; v < count; ++v) {
    std::size_t rest = v;
    for (std::size_t a = n; a-- > 0;) {
      index[v][a] = static_cast<unsigned>(rest % side);
      rest /= side;
      vertices[v][a] = lattice(index[v][a], k);
    }
  }
  std::vector<Edge> edges;
  std::vector<CubeSpec> cubes;
  for (std::size_t v = 0; v < count; ++v) {
    std::size_t stride = 1;
    for (std::size_t a = n; a-- > 0;) {
      if (index[v][a] < k) {
        const std::size_t w = v + stride;
        CubeSpec c;
        c.edge = edges.size();
        c.center = vertices[v];
        c.center[a] = 0.5 * (vertices[v][a] + vertices[w][a]);
        c.radius = 1.0 / (2.0 * k);
        c.axis = a;
        c.declared_l = 1.0 / (4.0 * k);
        cubes.push_back(std::move(c));
        edges.push_back({v, w, {vertices[v], vertices[w]}});
      }
      stride *= side;
    }
  }
  Fixture f{"cube_grid", CurveComplex::create(n, std::move(vertices), std::move(edges)), {}, std::move(cubes)};
  f.paths.push_back(basis_path(f.complex));
  return f;
}

Fixture figure_eight(double second_side) {
  if (!(second_side > 0.0)) throw Error(ErrorKind::InvalidInput, "figure_eight needs a positive side");
  auto first = SampledPath::from_points(square_points(1.0), true);
  auto second = SampledPath::from_points(square_points(-second_side), true);
  Fixture f{"figure_eight", build_complex({first, second}), {}, std::nullopt};
  auto points = square_points(1.0);
  const auto tail = square_points(-second_side);
  points.insert(points.end(), tail.begin() + 1, tail.end());
  f.paths.push_back(SampledPath::from_points(std::move(points), true));
  return f;
}

Fixture tree() {
  const std::vector<Point> tips = {{1.0, 0.0}, {-1.0, 1.0}, {-1.0, -1.0}};
  std::vector<SampledPath> arms;
  std::vector<Point> walk = {{0.0, 0.0}};
  for (const Point& tip : tips) {
    arms.push_back(segment({0.0, 0.0}, tip));
    walk.push_back(tip);
    walk.push_back({0.0, 0.0});
  }
  Fixture f{"tree", build_complex(arms), {}, std::nullopt};
  f.paths.push_back(SampledPath::from_points(std::move(walk), true));
  return f;
}

Fixture circle_pl(std::size_t sides) {
  if (sides < 3) throw Error(ErrorKind::InvalidInput, "circle_pl needs at least 3 sides");
  std::vector<Point> points;
  for (std::size_t j = 0; j <= sides; ++j) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(j % sides) / static_cast<double>(sides);
    points.push_back({std::cos(a), std::sin(a)});
  }
  auto path = SampledPath::from_points(std::move(points), true);
  return {"circle_pl", build_complex({path}), {path}, std::nullopt};
}

Fixture commutator_path(double second_side) {
  Fixture f = figure_eight(second_side);
  f.name = "commutator_path";
  const auto a = square_points(1.0);
  const auto b = square_points(-second_side);
  std::vector<Point> points = a;
  points.insert(points.end(), b.begin() + 1, b.end());
  points.insert(points.end(), a.rbegin() + 1, a.rend());
  points.insert(points.end(), b.rbegin() + 1, b.rend());
  f.paths = {SampledPath::from_points(std::move(points), true)};
  return f;
}

Fixture universal_center_abel(std::size_t samples) {
  if (samples == 0 || samples % 4 != 0) {
    throw Error(ErrorKind::InvalidInput, "universal_center_abel needs a positive multiple of 4 samples");
  }
  const std::size_t q = samples / 4;
  std::vector<double> quarter(q + 1);
  for (std::size_t i = 0; i <= q; ++i) {
    quarter[i] = std::sin(std::numbers::pi / 2.0 * static_cast<double>(i) / static_cast<double>(q));
  }
  quarter[0] = 0.0;
  quarter[q] = 1.0;
  auto sine = [&](std::size_t j) {
    if (j <= q) return quarter[j];
    if (j <= 2 * q) return quarter[2 * q - j];
    if (j <= 3 * q) return -quarter[j - 2 * q];
    return -quarter[4 * q - j];
  };
  std::vector<Sample> path;
  for (std::size_t j = 0; j <= samples; ++j) {
    const double s = sine(j);
    path.push_back({2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(samples), {s, s * s}});
  }
  // The image is the parabola arc over [-1, 1], split at the origin.
  std::vector<Point> right, left;
  for (std::size_t i = 0; i <= q; ++i) {
    right.push_back({quarter[i], quarter[i] * quarter[i]});
    left.push_back({-quarter[i], quarter[i] * quarter[i]});
  }
  std::vector<Point> vertices = {{0.0, 0.0}, right.back(), left.back()};
  std::vector<Edge> edges = {{0, 1, std::move(right)}, {0, 2, std::move(left)}};
  return {"universal_center_abel",
          CurveComplex::create(2, std::move(vertices), std::move(edges)),
          {SampledPath::create(2, std::move(path), true)},
          std::nullopt};
}

Fixture ccw_unit_square() {
  auto path = SampledPath::from_points(square_points(1.0), true);
  return {"ccw_unit_square", build_complex({path}), {path}, std::nullopt};
}

SampledPath basis_path(const CurveComplex& complex) {
  const CycleBasis basis = cycle_basis(complex);
  if (basis.rank() == 0) throw Error(ErrorKind::InvalidInput, "complex has no cycles");
  EdgeWord word;
  word.start = basis.root;
  for (const EdgeWord& loop : basis.loops) word = concat(word, loop);
  return realize_word(word, complex);
}

EdgeWord random_closed_word(const CurveComplex& complex, std::uint64_t seed, std::size_t steps,
                            std::size_t start) {
  if (start >= complex.num_vertices()) throw Error(ErrorKind::InvalidInput, "start vertex out of range");
  std::mt19937_64 rng(seed);
  EdgeWord word;
  word.start = start;
  std::size_t at = start;
  std::size_t previous = complex.num_edges();
  for (std::size_t s = 0; s < steps; ++s) {
    std::vector<std::size_t> options;
    for (std::size_t e : complex.incident(at)) {
      if (e != previous) options.push_back(e);
    }
    if (options.empty()) options = complex.incident(at);
    const std::size_t e = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    const Edge& edge = complex.edge(e);
    int orientation = edge.from == at ? 1 : -1;
    if (edge.is_loop()) orientation = (rng() & 1U) ? 1 : -1;
    word.letters.push_back({e, orientation});
    at = orientation == 1 ? edge.to : edge.from;
    previous = e;
  }

  // Shortest way home.
  std::vector<std::size_t> parent_edge(complex.num_vertices(), complex.num_edges());
  std::vector<bool> seen(complex.num_vertices(), false);
  std::queue<std::size_t> queue;
  queue.push(start);
  seen[start] = true;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop();
    for (std::size_t e : complex.incident(v)) {
      const Edge& edge = complex.edge(e);
      const std::size_t w = edge.from == v ? edge.to : edge.from;
      if (!seen[w]) {
        seen[w] = true;
        parent_edge[w] = e;
        queue.push(w);
      }
    }
  }
  while (at != start) {
    const Edge& edge = complex.edge(parent_edge[at]);
    const int orientation = edge.to == at ? -1 : 1;
    word.letters.push_back({parent_edge[at], orientation});
    at = orientation == 1 ? edge.to : edge.from;
  }
  return word;
}

SampledPath random_closed_path(std::uint64_t seed, std::size_t dim, std::size_t vertices, bool from_origin) {
  if (dim == 0 || vertices < 2) throw Error(ErrorKind::InvalidInput, "random path needs dim >= 1 and 2 vertices");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::vector<Point> points;
  if (from_origin) points.push_back(Point(dim, 0.0));
  while (points.size() < vertices) {
    Point p(dim);
    for (double& x : p) x = coord(rng);
    points.push_back(std::move(p));
  }
  points.push_back(points.front());
  return SampledPath::from_points(std::move(points), true);
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"grid",      "cube_grid",       "figure_eight",
                                                 "tree",      "circle_pl",       "commutator_path",
                                                 "universal_center_abel", "ccw_unit_square"};
  return names;
}

Fixture make_fixture(const std::string& name, unsigned k, std::size_t n, double side) {
  if (name == "grid") return grid(k);
  if (name == "cube_grid") return cube_grid(n, k);
  if (name == "figure_eight") return figure_eight(side);
  if (name == "tree") return tree();
  if (name == "circle_pl") return circle_pl();
  if (name == "commutator_path") return commutator_path(side);
  if (name == "universal_center_abel") return universal_center_abel();
  if (name == "ccw_unit_square") return ccw_unit_square();
  throw Error(ErrorKind::InvalidInput, "unknown fixture " + name);
}

Json fixture_to_json(const Fixture& fixture) {
  Json paths = Json::array();
  for (const SampledPath& p : fixture.paths) paths.push_back(path_to_json(p));
  Json out = {{"format", kFormatTag},
              {"name", fixture.name},
              {"complex", complex_to_json(fixture.complex)},
              {"paths", std::move(paths)}};
  if (fixture.cubes) out["cubes"] = cubes_to_json(*fixture.cubes).at("cubes");
  return out;
}

Fixture fixture_from_json(const Json& doc) {
  Fixture f{doc.value("name", std::string{}), complex_from_json(doc), {}, std::nullopt};
  if (doc.contains("paths")) {
    for (const Json& p : doc.at("paths")) f.paths.push_back(path_from_json(p));
  }
  if (doc.contains("cubes")) f.cubes = cubes_from_json(doc);
  return f;
}

}  // namespace moment_atlas
