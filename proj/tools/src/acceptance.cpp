#include "moment_atlas_tools/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "moment_atlas/approx.hpp"
#include "moment_atlas/center.hpp"
#include "moment_atlas/fixtures.hpp"
#include "moment_atlas/projection.hpp"
#include "moment_atlas/report.hpp"
#include "moment_atlas/topology.hpp"

namespace moment_atlas::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failures; the criterion passes when none were recorded.
class Verdict {
 public:
  template <class... Args>
  void fail(const Args&... parts) {
    if (failures_++ < 4) {
      if (!text_.str().empty()) text_ << "; ";
      (text_ << ... << parts);
    }
  }
  template <class... Args>
  void note(const Args&... parts) {
    if (!notes_.str().empty()) notes_ << "; ";
    (notes_ << ... << parts);
  }
  bool pass() const { return failures_ == 0; }
  std::string detail() const {
    std::string out = notes_.str();
    if (failures_ > 0) {
      if (!out.empty()) out += "; ";
      out += "failures=" + std::to_string(failures_) + ": " + text_.str();
    }
    return out;
  }

 private:
  int failures_ = 0;
  std::ostringstream text_;
  std::ostringstream notes_;
};

std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(6) << x;
  return s.str();
}

EdgeWord commutator(const CurveComplex& complex, const EdgeWord& a, const EdgeWord& b) {
  return concat(concat(a, b), concat(inverse(complex, a), inverse(complex, b)));
}

// Closed word on a complex for seed s: a random walk, or for odd seeds the
// commutator of two walks (homologically trivial, so every moment vanishes).
EdgeWord seeded_word(const CurveComplex& complex, std::uint64_t seed, std::size_t max_steps) {
  std::mt19937_64 rng(seed * 7919 + 17);
  std::uniform_int_distribution<std::size_t> steps(2, max_steps);
  EdgeWord w = random_closed_word(complex, rng(), steps(rng));
  if (seed % 2 == 1) w = commutator(complex, w, random_closed_word(complex, rng(), steps(rng)));
  return w;
}

std::vector<Fixture> planar_cycle_fixtures() {
  std::vector<Fixture> out;
  out.push_back(grid(2));
  out.push_back(figure_eight());
  out.push_back(circle_pl());
  out.push_back(ccw_unit_square());
  return out;
}

// Degree bounds of the square grids.
void grid_bound(Verdict& v) {
  const std::uint64_t expected[] = {22, 43, 64, 85};
  for (unsigned k = 1; k <= 4; ++k) {
    const auto start = Clock::now();
    const Fixture f = grid(k);
    const FaceSet faces = extract_faces(f.complex);
    const std::uint64_t n = n_bound_2d(faces);
    const double t = seconds_since(start);
    const auto formula = static_cast<std::uint64_t>(std::floor(27.0 * std::numbers::pi * k / 4.0)) + 1;
    if (n != expected[k - 1] || n != formula) v.fail("k=", k, " N=", n, " expected ", expected[k - 1]);
    if (betti1(f.complex) != k * k || faces.size() != k * k) v.fail("k=", k, " m=", betti1(f.complex));
    for (const Face& face : faces.faces) {
      if (std::abs(face.inscribed_side - 2.0 / k) > 1e-9) v.fail("k=", k, " r=", num(face.inscribed_side));
      if (std::abs(face.area - 4.0 / (k * k)) > 1e-9) v.fail("k=", k, " A=", num(face.area));
    }
    if (t >= 1.0) v.fail("k=", k, " took ", num(t), " s");
    v.note("k=", k, ":N=", n);
  }
}

// Cube-grid bounds with the hand family.
void cube_bound(Verdict& v) {
  const auto start = Clock::now();
  for (auto [n, k] : std::vector<std::pair<std::size_t, unsigned>>{{3, 1}, {3, 2}, {4, 1}}) {
    const Fixture f = cube_grid(n, k);
    const NdBound b = n_bound_nd(f.complex, f.cubes);
    const auto expected =
        static_cast<std::uint64_t>(std::floor(32.0 * std::numbers::pi * static_cast<double>(n * k))) + 1;
    if (b.bound != expected) v.fail("(", n, ",", k, ") N=", b.bound, " expected ", expected);
    const double m = static_cast<double>(betti1(f.complex));
    const double scale = static_cast<double>(n * (n - 1)) * std::pow(2.0, static_cast<double>(n) - 3.0) /
                         std::pow(2.0, static_cast<double>(n) - 2.0);
    const double lower = scale * std::pow(k, static_cast<double>(n));
    const double upper = scale * std::pow(k + 2.0, static_cast<double>(n));
    if (!(lower < m && m < upper)) v.fail("(", n, ",", k, ") m=", m, " outside (", lower, ",", upper, ")");
    v.note("(", n, ",", k, "):N=", b.bound, ",m=", m);
  }
  const double t = seconds_since(start);
  if (t >= 2.0) v.fail("took ", num(t), " s");
}

// Quadrature and homology pipelines agree on random closed words.
void pipeline_equivalence(Verdict& v) {
  const auto start = Clock::now();
  const auto specs = all_specs(2, 8);
  double worst = 0.0;
  for (const Fixture& f : {grid(2), figure_eight()}) {
    const FaceSet faces = extract_faces(f.complex);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const SampledPath path = realize_word(seeded_word(f.complex, seed, 12), f.complex);
      for (const MomentReport& r : compute_moments(path, specs, Pipeline::Both, &faces)) {
        const double excess = *r.agreement / (1.0 + std::abs(r.value_quadrature));
        worst = std::max(worst, excess);
        if (excess > 1e-9) v.fail(f.name, " seed ", seed, " |diff|=", num(*r.agreement));
      }
    }
  }
  const double t = seconds_since(start);
  if (t >= 30.0) v.fail("took ", num(t), " s");
  v.note("max relative diff ", num(worst));
}

// sqrt(m) <= d/r < N on each planar fixture with cycles.
void size_inequality(Verdict& v) {
  std::vector<Fixture> fixtures;
  for (unsigned k = 1; k <= 4; ++k) fixtures.push_back(grid(k));
  fixtures.push_back(figure_eight());
  fixtures.push_back(circle_pl());
  fixtures.push_back(ccw_unit_square());
  for (const Fixture& f : fixtures) {
    const std::size_t m = betti1(f.complex);
    if (m == 0) continue;
    const FaceSet faces = extract_faces(f.complex);
    const double ratio = faces.half_side / faces.min_side;
    const auto n = static_cast<double>(n_bound_2d(faces));
    const double root = std::sqrt(static_cast<double>(m));
    if (!(root <= ratio)) v.fail(f.name, " sqrt(m)=", num(root), " > d/r=", num(ratio));
    if (!(ratio < n)) v.fail(f.name, " d/r=", num(ratio), " >= N=", n);
    v.note(f.name, " m=", m, ": sqrt(m)=", num(root), " d/r=", num(ratio), " N=", n);
  }
}

// Vanishing of the theorem family up to N implies vanishing up to N + 6.
void degree_sufficiency(Verdict& v) {
  const double tol = 1e-9;
  std::size_t implications = 0;
  std::size_t words = 0;
  for (const Fixture& f : planar_cycle_fixtures()) {
    const unsigned bound = static_cast<unsigned>(n_bound_2d(extract_faces(f.complex)));
    const unsigned top = bound + 6;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const SampledPath path = realize_word(seeded_word(f.complex, seed, 6), f.complex);
      ++words;
      if (!vanishing_scan(path, bound, tol).all_zero) continue;
      ++implications;
      for (std::size_t target = 0; target < 2; ++target) {
        const PlanarMomentTable table = planar_moment_table(path, top, target);
        for (unsigned a = 0; a <= top; ++a) {
          for (unsigned b = 0; a + b <= top; ++b) {
            const double gate = vanishing_gate(path, a + b, tol);
            if (std::abs(table.at(a, b)) > gate) {
              v.fail(f.name, " seed ", seed, " d=(", a, ",", b, ") i=", target + 1, " value ",
                     num(table.at(a, b)));
            }
          }
        }
      }
    }
  }
  v.note(implications, " of ", words, " words had a vanishing family");
  if (implications == 0) v.fail("no word exercised the implication");
}

// On words covering the figure-eight trail, homological triviality equals
// triviality of the free reduction.
void covering_consistency(Verdict& v) {
  const Fixture f = figure_eight();
  const EulerResult euler = euler_classify(f.complex);
  const CycleBasis basis = cycle_basis(f.complex);
  const auto& trail = euler.trail.letters;
  const auto len = static_cast<long long>(trail.size());
  std::size_t agree = 0, trivial = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::mt19937_64 rng(seed + 1000);
    EdgeWord word;
    word.start = euler.trail.start;
    long long position = 0;
    auto step = [&](int dir) {
      const long long slot = dir > 0 ? position : position - 1;
      const Letter& l = trail[static_cast<std::size_t>(((slot % len) + len) % len)];
      word.letters.push_back({l.edge, dir > 0 ? l.orientation : -l.orientation});
      position += dir;
    };
    const std::size_t steps = std::uniform_int_distribution<std::size_t>(3, 24)(rng);
    for (std::size_t s = 0; s < steps; ++s) step((rng() & 1U) ? 1 : -1);
    if (seed % 2 == 1) {
      while (position != 0) step(position > 0 ? -1 : 1);
      if (word.empty()) step(1), step(-1);
    }
    if (!covers_trail(word, euler.trail, euler.cyclic())) v.fail("seed ", seed, " walk does not cover the trail");
    const auto n = homology_coefficients(word, basis);
    const bool d = std::all_of(n.begin(), n.end(), [](long long x) { return x == 0; });
    const bool a = reduce_word(word, basis).empty();
    trivial += d ? 1 : 0;
    if (d == a) {
      ++agree;
    } else {
      v.fail("seed ", seed, " homology trivial=", d, " reduction trivial=", a);
    }
  }
  v.note(agree, "/30 agree, ", trivial, " homologically trivial");
}

// Return-map residuals of a universal center and of the CCW square.
void center_soundness(Verdict& v) {
  const auto start = Clock::now();
  const Fixture uc = universal_center_abel();
  const OdeSystem uc_sys = OdeSystem::create(uc.paths.front());
  const std::vector<double> small = {0.01, -0.01, 0.05, -0.05};
  double worst = 0.0;
  for (const ReturnResidual& r : return_residuals(uc_sys, small)) {
    worst = std::max(worst, r.residual);
    if (r.residual > 1e-8) v.fail("universal center v0=", r.v0, " residual ", num(r.residual));
  }
  const Fixture sq = ccw_unit_square();
  DecideOptions o;
  o.residual_v0 = {0.1, -0.1, 0.05, -0.05};
  const CenterVerdict verdict = decide(OdeSystem::create(sq.paths.front()), sq.complex, o);
  if (!verdict.witness) v.fail("square produced no moment witness");
  double largest = 0.0;
  for (const ReturnResidual& r : verdict.residuals) {
    if (std::abs(r.v0) <= 0.1) largest = std::max(largest, r.residual);
  }
  if (largest < 1e-4) v.fail("square residual ", num(largest), " < 1e-4");
  const double t = seconds_since(start);
  if (t >= 5.0) v.fail("took ", num(t), " s");
  v.note("universal max residual ", num(worst), ", square max residual ", num(largest), ", square ",
         to_string(verdict.decision));
}

// 3 M1 + 2 M2 = 5 M1 on random closed planar systems through the origin.
void fourth_coefficient_identity(Verdict& v) {
  double worst_stated = 0.0, worst_sum = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const SampledPath path = random_closed_path(seed, 2, 4 + seed % 7);
    const double m1 = moment_quadrature(path, {{1, 0}, 1});
    const double m2 = moment_quadrature(path, {{0, 1}, 0});
    const double stated = std::abs(fourth_coefficient(path) - 5.0 * m1);
    worst_stated = std::max(worst_stated, stated);
    worst_sum = std::max(worst_sum, std::abs(m1 + m2));
    if (stated > 1e-12) v.fail("seed ", seed, " |3M1+2M2-5M1|=", num(stated));
    if (std::abs(m1 + m2) > 1e-12) v.fail("seed ", seed, " |M1+M2|=", num(std::abs(m1 + m2)));
  }
  v.note("max |3M1+2M2-5M1| ", num(worst_stated), ", max |M1+M2| ", num(worst_sum));
}

// Structural properties and error decay of the tensor approximation.
void approximation(Verdict& v) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (double c : {1.0, -2.5, 0.3}) {
      const Function f = [c](std::span<const double>) { return c; };
      const TensorPolynomial p = approximate(f, n, 6);
      const double err = sup_error(f, p, 11);
      if (err > 1e-12 * std::abs(c)) v.fail("constant ", c, " n=", n, " error ", num(err));
    }
  }
  const Function mixed = [](std::span<const double> x) {
    double s = 0.0, prod = 1.0;
    for (double t : x) {
      s += std::abs(t - 0.2);
      prod *= t;
    }
    return s + prod;
  };
  double worst_order = 0.0;
  for (std::size_t n : {2u, 3u}) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const TensorPolynomial ref = approximate(mixed, n, 5, order);
    while (std::next_permutation(order.begin(), order.end())) {
      const TensorPolynomial p = approximate(mixed, n, 5, order);
      for (std::size_t j = 0; j < p.coefficients.size(); ++j) {
        worst_order = std::max(worst_order, std::abs(p.coefficients[j] - ref.coefficients[j]));
      }
    }
  }
  if (worst_order > 1e-12) v.fail("axis order changes coefficients by ", num(worst_order));

  const Function abs_first = [](std::span<const double> x) { return std::abs(x[0]); };
  for (std::size_t n : {1u, 2u}) {
    double previous = std::numeric_limits<double>::infinity();
    std::ostringstream errors;
    for (unsigned k : {4u, 8u, 16u, 32u}) {
      const double err = sup_error(abs_first, approximate(abs_first, n, k), n == 1 ? 10000 : 201);
      const double bound = error_bound(n, k, 1.0);
      if (err > bound) v.fail("n=", n, " k=", k, " error ", num(err), " > ", num(bound));
      if (err > previous) v.fail("n=", n, " k=", k, " error increased");
      previous = err;
      errors << (k == 4 ? "" : ",") << num(err);
    }
    v.note("|x1| n=", n, " errors ", errors.str());
  }
  v.note("C_op=pi, axis-order spread ", num(worst_order));
}

// Multinomial expansion identity for projected moments.
void expansion_identity(Verdict& v) {
  const auto start = Clock::now();
  std::size_t checks = 0;
  for (std::size_t n : {3u, 4u}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const SampledPath path = random_closed_path(seed * 31 + n, n, 9, false);
      for (std::uint64_t j = 0; j < 5; ++j) {
        const DirectionPair dir = sample_direction(seed * 5 + j, n);
        for (unsigned d = 0; d <= 6; ++d) {
          ++checks;
          if (!expansion_check(path, dir, d, 1e-9)) v.fail("n=", n, " seed ", seed, " pair ", j, " d=", d);
        }
      }
    }
  }
  const double t = seconds_since(start);
  if (t >= 60.0) v.fail("took ", num(t), " s");
  v.note(checks, " comparisons");
}

// Closed-form monomial integrals over the unit square.
void polygon_integrals(Verdict& v) {
  const FaceSet faces = extract_faces(ccw_unit_square().complex);
  double worst = 0.0;
  for (unsigned a = 0; a <= 10; ++a) {
    for (unsigned b = 0; b <= 10; ++b) {
      const double diff = std::abs(monomial_face_integral(faces.faces.front(), a, b) - 1.0 / ((a + 1.0) * (b + 1.0)));
      worst = std::max(worst, diff);
      if (diff > 1e-13) v.fail("a=", a, " b=", b, " diff ", num(diff));
    }
  }
  v.note("max diff ", num(worst));
}

struct Criterion {
  int id;
  const char* title;
  void (*run)(Verdict&);
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "grid degree bound", grid_bound},
      {2, "cube-grid degree bound", cube_bound},
      {3, "quadrature and homology pipelines agree", pipeline_equivalence},
      {4, "sqrt(m) <= d/r < N on planar fixtures", size_inequality},
      {5, "degree sufficiency of the planar family", degree_sufficiency},
      {6, "covering words: homology vs free reduction", covering_consistency},
      {7, "center soundness by return map", center_soundness},
      {8, "fourth-coefficient identity", fourth_coefficient_identity},
      {9, "tensor approximation properties", approximation},
      {10, "projection expansion identity", expansion_identity},
      {11, "exact polygon monomial integrals", polygon_integrals},
  };
  return list;
}

}  // namespace

std::vector<int> criterion_ids() {
  std::vector<int> ids;
  for (const Criterion& c : criteria()) ids.push_back(c.id);
  return ids;
}

CriterionResult run_criterion(int id) {
  for (const Criterion& c : criteria()) {
    if (c.id != id) continue;
    CriterionResult r{id, c.title, false, {}, 0.0};
    Verdict v;
    const auto start = Clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.fail("exception: ", e.what());
    }
    r.seconds = seconds_since(start);
    r.pass = v.pass();
    r.detail = v.detail();
    return r;
  }
  return {id, "unknown criterion", false, "no criterion with this id", 0.0};
}

int run_all(std::ostream& out, std::optional<int> only) {
  int failures = 0;
  for (int id : criterion_ids()) {
    if (only && *only != id) continue;
    const CriterionResult r = run_criterion(id);
    failures += r.pass ? 0 : 1;
    out << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << " (" << std::fixed
        << std::setprecision(2) << r.seconds << " s) " << std::defaultfloat << r.detail << '\n';
  }
  if (only && std::find(criterion_ids().begin(), criterion_ids().end(), *only) == criterion_ids().end()) {
    out << "FAIL [" << *only << "] unknown criterion\n";
    ++failures;
  }
  return failures;
}

}  // namespace moment_atlas::acceptance
