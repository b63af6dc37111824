#include "moment_atlas/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "moment_atlas/errors.hpp"
#include "moment_atlas/parallel.hpp"
#include "moment_atlas/projection.hpp"
#include "moment_atlas/quadrature.hpp"

namespace moment_atlas {

namespace {

void check_spec(const SampledPath& path, const MomentSpec& spec) {
  if (spec.degrees.size() != path.dim()) {
    throw Error(ErrorKind::LengthMismatch, "moment multi-index has length " +
                                               std::to_string(spec.degrees.size()) + ", path dimension is " +
                                               std::to_string(path.dim()));
  }
  if (spec.target >= path.dim()) throw Error(ErrorKind::InvalidInput, "moment target index out of range");
}

SampledPath scaled(const SampledPath& path, double factor) {
  std::vector<Sample> samples = path.samples();
  for (Sample& s : samples) {
    for (double& x : s.x) x *= factor;
  }
  return SampledPath::create(path.dim(), std::move(samples), path.closed());
}

// Does value_n * R^(d+1) exceed tol * max(1, L R^d)? Evaluated in logs so
// large degrees neither overflow nor underflow.
bool exceeds(double value_n, unsigned d, double R, double L, double tol) {
  if (value_n == 0.0 || !std::isfinite(value_n)) return value_n != 0.0;
  const double logR = std::log(R);
  const double lhs = std::log(std::abs(value_n)) + (d + 1.0) * logR;
  const double scale = L > 0.0 ? std::max(0.0, std::log(L) + d * logR) : 0.0;
  return lhs > std::log(tol) + scale;
}

std::vector<std::vector<double>> binomials(unsigned n) {
  std::vector<std::vector<double>> c(n + 1);
  for (unsigned i = 0; i <= n; ++i) {
    c[i].assign(i + 1, 1.0);
    for (unsigned k = 1; k < i; ++k) c[i][k] = c[i - 1][k - 1] + c[i - 1][k];
  }
  return c;
}

std::vector<double> powers_of(double x, unsigned n) {
  std::vector<double> p(n + 1, 1.0);
  for (unsigned k = 1; k <= n; ++k) p[k] = p[k - 1] * x;
  return p;
}

// Integral over [0,1] of x(s)^p y(s)^q for linear x, y, in the Bernstein
// form: all terms are products of endpoint coordinates, no differences.
double segment_power_integral(Vec2 a, Vec2 b, unsigned p, unsigned q,
                              const std::vector<std::vector<double>>& C) {
  const auto xa = powers_of(a.x, p), xb = powers_of(b.x, p);
  const auto ya = powers_of(a.y, q), yb = powers_of(b.y, q);
  double total = 0.0;
  for (unsigned i = 0; i <= p; ++i) {
    const double xi = C[p][i] * xa[p - i] * xb[i];
    if (xi == 0.0) continue;
    for (unsigned j = 0; j <= q; ++j) {
      total += xi * C[q][j] * ya[q - j] * yb[j] / C[p + q][i + j];
    }
  }
  return total / (p + q + 1.0);
}

double ring_integral(const Ring& ring, unsigned a, unsigned b, const std::vector<std::vector<double>>& C) {
  double total = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t e = 0; e < n; ++e) {
    const Vec2 p = ring[e];
    const Vec2 q = ring[(e + 1) % n];
    const double dy = q.y - p.y;
    if (dy == 0.0) continue;
    total += dy * segment_power_integral(p, q, a + 1, b, C);
  }
  return total / (a + 1.0);
}

struct ChainSegment {
  const Point* a;
  const Point* b;
  double weight;
};

// The path as a 1-chain: segments run in opposite directions cancel and
// repeats add up. Every moment is a line integral, so nothing changes except
// the work, which drops sharply for paths that retrace their edges.
std::vector<ChainSegment> segment_chain(const SampledPath& path) {
  std::vector<ChainSegment> raw;
  raw.reserve(path.size());
  for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
    const Point& a = path.point(seg);
    const Point& b = path.point(seg + 1);
    if (a == b) continue;
    if (b < a) {
      raw.push_back({&b, &a, -1.0});
    } else {
      raw.push_back({&a, &b, 1.0});
    }
  }
  auto key_less = [](const ChainSegment& x, const ChainSegment& y) {
    if (*x.a != *y.a) return *x.a < *y.a;
    return *x.b < *y.b;
  };
  std::stable_sort(raw.begin(), raw.end(), key_less);
  std::vector<ChainSegment> chain;
  for (const ChainSegment& s : raw) {
    if (!chain.empty() && *chain.back().a == *s.a && *chain.back().b == *s.b) {
      chain.back().weight += s.weight;
    } else {
      chain.push_back(s);
    }
  }
  std::erase_if(chain, [](const ChainSegment& s) { return s.weight == 0.0; });
  return chain;
}

}  // namespace

unsigned MomentSpec::total_degree() const {
  unsigned d = 0;
  for (unsigned x : degrees) d += x;
  return d;
}

double moment_quadrature(const SampledPath& path, const MomentSpec& spec) {
  check_spec(path, spec);
  const GaussRule& rule = gauss_legendre(nodes_for_degree(spec.total_degree()));
  const std::size_t n = path.dim();
  double total = 0.0;
  for (const ChainSegment& seg : segment_chain(path)) {
    const Point& a = *seg.a;
    const Point& b = *seg.b;
    const double increment = seg.weight * (b[spec.target] - a[spec.target]);
    if (increment == 0.0) continue;
    double inner = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double s = rule.nodes[k];
      double value = rule.weights[k];
      for (std::size_t j = 0; j < n; ++j) {
        if (spec.degrees[j] == 0) continue;
        value *= std::pow(a[j] + s * (b[j] - a[j]), static_cast<int>(spec.degrees[j]));
      }
      inner += value;
    }
    total += increment * inner;
  }
  return total;
}

MomentEvaluator::MomentEvaluator(const SampledPath& path, unsigned max_degree, unsigned max_exponent)
    : dim_(path.dim()),
      max_degree_(max_degree),
      max_exponent_(max_exponent == 0 ? max_degree : std::min(max_exponent, max_degree)),
      nodes_per_segment_(nodes_for_degree(max_degree)) {
  const GaussRule& rule = gauss_legendre(nodes_per_segment_);
  const auto chain = segment_chain(path);
  const std::size_t segments = chain.size();
  const std::size_t stride = max_exponent_ + 1;
  weights_ = rule.weights;
  increments_.resize(segments * dim_);
  powers_.resize(segments * nodes_per_segment_ * dim_ * stride);
  for (std::size_t seg = 0; seg < segments; ++seg) {
    const Point& a = *chain[seg].a;
    const Point& b = *chain[seg].b;
    for (std::size_t j = 0; j < dim_; ++j) increments_[seg * dim_ + j] = chain[seg].weight * (b[j] - a[j]);
    for (std::size_t k = 0; k < nodes_per_segment_; ++k) {
      const double s = rule.nodes[k];
      double* base = &powers_[((seg * nodes_per_segment_ + k) * dim_) * stride];
      for (std::size_t j = 0; j < dim_; ++j) {
        const double x = a[j] + s * (b[j] - a[j]);
        double* p = base + j * stride;
        p[0] = 1.0;
        for (std::size_t e = 1; e < stride; ++e) p[e] = p[e - 1] * x;
      }
    }
  }
}

double MomentEvaluator::operator()(const MomentSpec& spec) const {
  if (spec.degrees.size() != dim_) throw Error(ErrorKind::LengthMismatch, "moment multi-index length mismatch");
  if (spec.target >= dim_) throw Error(ErrorKind::InvalidInput, "moment target index out of range");
  if (spec.total_degree() > max_degree_) {
    throw Error(ErrorKind::DegreeTooLarge, "moment degree exceeds the evaluator's table");
  }
  for (unsigned d : spec.degrees) {
    if (d > max_exponent_) throw Error(ErrorKind::DegreeTooLarge, "moment exponent exceeds the evaluator's table");
  }
  const std::size_t stride = max_exponent_ + 1;
  const std::size_t segments = increments_.size() / dim_;
  double total = 0.0;
  for (std::size_t seg = 0; seg < segments; ++seg) {
    const double increment = increments_[seg * dim_ + spec.target];
    if (increment == 0.0) continue;
    double inner = 0.0;
    for (std::size_t k = 0; k < nodes_per_segment_; ++k) {
      const double* base = &powers_[((seg * nodes_per_segment_ + k) * dim_) * stride];
      double value = weights_[k];
      for (std::size_t j = 0; j < dim_; ++j) value *= base[j * stride + spec.degrees[j]];
      inner += value;
    }
    total += increment * inner;
  }
  return total;
}

PlanarMomentTable planar_moment_table(const SampledPath& path, unsigned max_total, std::size_t target) {
  if (path.dim() != 2) throw Error(ErrorKind::InvalidInput, "planar moment table needs a planar path");
  if (target > 1) throw Error(ErrorKind::InvalidInput, "moment target index out of range");
  PlanarMomentTable table;
  table.max_total = max_total;
  const std::size_t stride = max_total + 1;
  table.values.assign(stride * stride, 0.0);
  const GaussRule& rule = gauss_legendre(nodes_for_degree(max_total));
  std::vector<double> xp(stride), yp(stride);
  for (const ChainSegment& seg : segment_chain(path)) {
    const Point& a = *seg.a;
    const Point& b = *seg.b;
    const double increment = seg.weight * (b[target] - a[target]);
    if (increment == 0.0) continue;
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const double s = rule.nodes[k];
      const double x = a[0] + s * (b[0] - a[0]);
      const double y = a[1] + s * (b[1] - a[1]);
      xp[0] = yp[0] = 1.0;
      for (std::size_t e = 1; e < stride; ++e) {
        xp[e] = xp[e - 1] * x;
        yp[e] = yp[e - 1] * y;
      }
      const double w = rule.weights[k] * increment;
      for (std::size_t i = 0; i < stride; ++i) {
        const double wx = w * xp[i];
        double* row = &table.values[i * stride];
        for (std::size_t j = 0; i + j < stride; ++j) row[j] += wx * yp[j];
      }
    }
  }
  return table;
}

double iterated_integral(const SampledPath& path, std::span<const std::size_t> indices) {
  if (indices.empty()) throw Error(ErrorKind::InvalidInput, "iterated integral needs at least one index");
  for (std::size_t i : indices) {
    if (i >= path.dim()) throw Error(ErrorKind::InvalidInput, "iterated integral index out of range");
  }
  const std::size_t k = indices.size();
  // start[j] = I_j at the start of the current segment; I_0 = 1.
  std::vector<double> start(k + 1, 0.0);
  start[0] = 1.0;
  std::vector<std::vector<double>> poly(k + 1);
  for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
    const Point& a = path.point(seg);
    const Point& b = path.point(seg + 1);
    poly[0] = {1.0};
    for (std::size_t j = 1; j <= k; ++j) {
      const double increment = b[indices[j - 1]] - a[indices[j - 1]];
      const auto& prev = poly[j - 1];
      auto& cur = poly[j];
      cur.assign(prev.size() + 1, 0.0);
      cur[0] = start[j];
      for (std::size_t p = 0; p < prev.size(); ++p) cur[p + 1] = increment * prev[p] / (p + 1.0);
    }
    for (std::size_t j = 1; j <= k; ++j) {
      double end = 0.0;
      for (double c : poly[j]) end += c;
      start[j] = end;
    }
  }
  return start[k];
}

double monomial_face_integral(const Face& face, unsigned a, unsigned b) {
  const auto C = binomials(a + 1 + b);
  double total = ring_integral(face.outer, a, b, C);
  for (const Ring& hole : face.holes) {
    const double h = ring_integral(hole, a, b, C);
    total -= signed_area(hole) >= 0.0 ? h : -h;
  }
  return total;
}

double moment_via_homology(const FaceSet& faces, std::span<const long long> coeffs, const MomentSpec& spec) {
  if (coeffs.size() != faces.size()) {
    throw Error(ErrorKind::LengthMismatch, "face coefficient vector has length " + std::to_string(coeffs.size()) +
                                               ", face count is " + std::to_string(faces.size()));
  }
  if (spec.degrees.size() != 2) throw Error(ErrorKind::LengthMismatch, "homology pipeline needs a planar spec");
  if (spec.target > 1) throw Error(ErrorKind::InvalidInput, "moment target index out of range");
  const std::size_t i = spec.target;
  const std::size_t k = 1 - i;
  const unsigned dk = spec.degrees[k];
  if (dk == 0) return 0.0;
  const double sign = i == 1 ? 1.0 : -1.0;
  const unsigned a = k == 0 ? dk - 1 : spec.degrees[i];
  const unsigned b = k == 0 ? spec.degrees[i] : dk - 1;
  double total = 0.0;
  for (std::size_t j = 0; j < faces.size(); ++j) {
    if (coeffs[j] == 0) continue;
    total += static_cast<double>(coeffs[j]) * monomial_face_integral(faces.faces[j], a, b);
  }
  return sign * dk * total;
}

std::vector<long long> face_coefficients(const SampledPath& path, const FaceSet& faces) {
  std::vector<long long> out;
  out.reserve(faces.size());
  for (const Face& face : faces.faces) {
    const double q = 0.25 * face.inscribed_side;
    const Vec2 c = face.representative;
    const Vec2 candidates[] = {c, {c.x + q, c.y}, {c.x - q, c.y}, {c.x, c.y + q}, {c.x, c.y - q}};
    std::optional<long long> w;
    for (std::size_t t = 0; t < std::size(candidates) && !w; ++t) {
      try {
        w = winding_number(path, candidates[t]);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::PointOnCurve || t + 1 == std::size(candidates)) throw;
      }
    }
    out.push_back(*w);
  }
  return out;
}

double vanishing_gate(const SampledPath& path, unsigned degree, double tol) {
  const double R = path.max_abs_coordinate();
  return tol * std::max(1.0, path.l1_length() * std::pow(R, static_cast<double>(degree)));
}

std::vector<MomentSpec> scan_family(std::size_t dim, unsigned bound) {
  std::vector<MomentSpec> family;
  if (dim == 2) {
    for (unsigned d1 = 0; d1 <= bound + 1; ++d1) {
      for (unsigned d2 = 0; d2 <= bound; ++d2) family.push_back({{d1, d2}, 1});
    }
    return family;
  }
  std::vector<unsigned> alpha(dim, 0);
  for (;;) {
    for (std::size_t i = 0; i < dim; ++i) family.push_back({alpha, i});
    std::size_t pos = dim;
    while (pos > 0 && alpha[pos - 1] == bound) alpha[--pos] = 0;
    if (pos == 0) break;
    ++alpha[pos - 1];
  }
  return family;
}

namespace {

std::uint64_t family_size(std::size_t dim, unsigned bound) {
  if (dim == 2) return static_cast<std::uint64_t>(bound + 2) * (bound + 1);
  double count = static_cast<double>(dim);
  for (std::size_t j = 0; j < dim; ++j) count *= bound + 1.0;
  return count > 1e18 ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(count);
}

// Smallest degree d <= max_degree at which the restricted moment of
// g1^d g2' fails to vanish for some seeded projection, if any.
std::optional<unsigned> restricted_screen(const SampledPath& unit_path, unsigned max_degree, double tol,
                                          std::size_t* evaluated) {
  constexpr std::uint64_t kSeeds = 4;
  std::optional<unsigned> first;
  const GaussRule& rule = gauss_legendre(nodes_for_degree(max_degree));
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    const SampledPath pv = project(unit_path, sample_direction(seed, unit_path.dim()));
    double s1 = 0.0, s2 = 0.0;
    for (const Sample& s : pv.samples()) {
      s1 = std::max(s1, std::abs(s.x[0]));
      s2 = std::max(s2, std::abs(s.x[1]));
    }
    if (s2 == 0.0) continue;
    if (s1 == 0.0) s1 = 1.0;
    std::vector<double> acc(max_degree + 1, 0.0);
    double length = 0.0;
    for (std::size_t seg = 0; seg + 1 < pv.size(); ++seg) {
      const double g1a = pv.point(seg)[0] / s1, g1b = pv.point(seg + 1)[0] / s1;
      const double dg2 = (pv.point(seg + 1)[1] - pv.point(seg)[1]) / s2;
      length += std::abs(g1b - g1a) + std::abs(dg2);
      if (dg2 == 0.0) continue;
      for (std::size_t k = 0; k < rule.size(); ++k) {
        const double g = g1a + rule.nodes[k] * (g1b - g1a);
        double w = rule.weights[k] * dg2;
        for (unsigned d = 0; d <= max_degree; ++d) {
          acc[d] += w;
          w *= g;
        }
      }
    }
    *evaluated += max_degree + 1;
    const double gate = tol * std::max(1.0, length);
    for (unsigned d = 0; d <= max_degree; ++d) {
      if (std::abs(acc[d]) > gate) {
        if (!first || d < *first) first = d;
        break;
      }
    }
  }
  return first;
}

}  // namespace

ScanResult vanishing_scan(const SampledPath& path, unsigned bound, double tol, std::size_t max_direct) {
  ScanResult result;
  result.bound = bound;
  result.tol = tol;
  const std::size_t n = path.dim();
  result.family = n == 2 ? "planar_i2" : "all_targets";
  const double R = path.max_abs_coordinate();
  const double L = path.l1_length();
  if (R == 0.0 || L == 0.0) return result;
  const SampledPath unit = scaled(path, 1.0 / R);

  auto report = [&](const MomentSpec& spec, double value_n) {
    const unsigned d = spec.total_degree();
    result.all_zero = false;
    result.witness = spec;
    result.witness_value = value_n * std::pow(R, d + 1.0);
    result.witness_gate = vanishing_gate(path, d, tol);
  };

  if (n == 2) {
    const PlanarMomentTable table = planar_moment_table(unit, 2 * bound + 1, 1);
    for (unsigned d1 = 0; d1 <= bound + 1; ++d1) {
      for (unsigned d2 = 0; d2 <= bound; ++d2) {
        ++result.evaluated;
        const double v = table.at(d1, d2);
        if (exceeds(v, d1 + d2, R, L, tol)) {
          report({{d1, d2}, 1}, v);
          return result;
        }
      }
    }
    return result;
  }

  if (n >= 3 && family_size(n, bound) > max_direct) {
    result.family = "restricted_projection";
    const unsigned max_degree = static_cast<unsigned>(n) * bound;
    const auto degree = restricted_screen(unit, max_degree, tol, &result.evaluated);
    if (!degree) return result;
    result.all_zero = false;
    // Locate an n-dimensional moment of that total degree inside the family.
    std::vector<MomentSpec> candidates;
    std::vector<unsigned> alpha(n, 0);
    alpha[n - 1] = *degree;
    for (;;) {
      if (*std::max_element(alpha.begin(), alpha.end()) <= bound) {
        for (std::size_t i = 0; i < n; ++i) candidates.push_back({alpha, i});
      }
      if (candidates.size() > max_direct) break;
      std::size_t k = n - 1;
      while (k > 0 && alpha[k] == 0) --k;
      if (k == 0) break;
      const unsigned tail = alpha[k];
      alpha[k] = 0;
      ++alpha[k - 1];
      alpha[n - 1] = tail - 1;
    }
    std::sort(candidates.begin(), candidates.end());
    const MomentEvaluator eval(unit, *degree, std::min(*degree, bound));
    for (const MomentSpec& spec : candidates) {
      ++result.evaluated;
      const double v = eval(spec);
      if (exceeds(v, spec.total_degree(), R, L, tol)) {
        report(spec, v);
        break;
      }
    }
    return result;
  }

  const std::vector<MomentSpec> family = scan_family(n, bound);
  const MomentEvaluator eval(unit, static_cast<unsigned>(n) * bound, bound);
  std::vector<double> values(family.size());
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (family.size() + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(family.size(), (c + 1) * kChunk);
    for (std::size_t s = c * kChunk; s < end; ++s) values[s] = eval(family[s]);
  });
  result.evaluated = family.size();
  for (std::size_t s = 0; s < family.size(); ++s) {
    if (exceeds(values[s], family[s].total_degree(), R, L, tol)) {
      report(family[s], values[s]);
      break;
    }
  }
  return result;
}

}  // namespace moment_atlas
