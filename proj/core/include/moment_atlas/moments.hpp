#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moment_atlas/curve_model.hpp"
#include "moment_atlas/planar_geometry.hpp"

namespace moment_atlas {

/// Multi-index (d_1..d_n) and 0-based target coordinate i of the moment
/// integral of f_1^d_1 ... f_n^d_n f_i' dt.
struct MomentSpec {
  std::vector<unsigned> degrees;
  std::size_t target = 0;

  unsigned total_degree() const;
  auto operator<=>(const MomentSpec&) const = default;
};

struct MomentReport {
  MomentSpec spec;
  double value_quadrature = 0.0;
  std::optional<double> value_homology;
  std::optional<double> agreement;

  bool operator==(const MomentReport&) const = default;
};

/// Exact for PL paths up to rounding: Gauss-Legendre with
/// ceil((d+2)/2) nodes per segment.
double moment_quadrature(const SampledPath& path, const MomentSpec& spec);

/// Evaluates many moments of one path; node powers are tabulated once.
/// Specs may have total degree up to max_degree and single exponents up to
/// max_exponent (0 selects max_degree).
class MomentEvaluator {
 public:
  MomentEvaluator(const SampledPath& path, unsigned max_degree, unsigned max_exponent = 0);
  double operator()(const MomentSpec& spec) const;
  unsigned max_degree() const noexcept { return max_degree_; }

 private:
  std::size_t dim_;
  unsigned max_degree_;
  unsigned max_exponent_;
  std::size_t nodes_per_segment_;
  std::vector<double> weights_;    // per node
  std::vector<double> increments_;  // per segment, per coordinate
  std::vector<double> powers_;     // per node, per coordinate, per exponent
};

/// All planar moments of x^a y^b dx_target with a + b <= max_total.
struct PlanarMomentTable {
  unsigned max_total = 0;
  std::vector<double> values;  // a * (max_total + 1) + b

  double at(unsigned a, unsigned b) const { return values[a * (max_total + 1) + b]; }
};
PlanarMomentTable planar_moment_table(const SampledPath& path, unsigned max_total, std::size_t target);

/// Iterated integral over a <= t_1 <= ... <= t_k <= b of
/// f'_{i_k}(t_k) ... f'_{i_1}(t_1) (indices 0-based, innermost first).
double iterated_integral(const SampledPath& path, std::span<const std::size_t> indices);

/// Double integral of x^a y^b over a face via the boundary integral of
/// x^(a+1) y^b / (a+1) dy, in closed form per edge.
double monomial_face_integral(const Face& face, unsigned a, unsigned b);

/// Sum over faces of coeffs[j] times the area integral of the Green
/// integrand (-1)^i d_k x_k^(d_k-1) x_i^(d_i), k the other index.
/// Throws LengthMismatch if coeffs and faces differ in length.
double moment_via_homology(const FaceSet& faces, std::span<const long long> coeffs,
                           const MomentSpec& spec);

/// Winding numbers of a closed planar path around each face's
/// representative point.
std::vector<long long> face_coefficients(const SampledPath& path, const FaceSet& faces);

/// Threshold used to call a moment of total degree d nonzero:
/// tol * max(1, l1-length * R^d), R the largest absolute coordinate.
double vanishing_gate(const SampledPath& path, unsigned degree, double tol);

struct ScanResult {
  bool all_zero = true;
  std::optional<MomentSpec> witness;
  double witness_value = 0.0;
  double witness_gate = 0.0;
  std::size_t evaluated = 0;
  unsigned bound = 0;
  double tol = 0.0;
  /// "planar_i2", "all_targets" or "restricted_projection".
  std::string family;
};

/// Index family for a bound: planar uses target 2 with
/// max(d_1 - 1, d_2) <= bound; higher dimensions use every target with
/// max d_j <= bound. Specs are returned in lexicographic order.
std::vector<MomentSpec> scan_family(std::size_t dim, unsigned bound);

/// Evaluates the family and reports the lexicographically smallest spec
/// whose value exceeds the gate. Families above `max_direct` specs in
/// dimension >= 3 are screened through restricted moments of seeded planar
/// projections instead.
ScanResult vanishing_scan(const SampledPath& path, unsigned bound, double tol = 1e-9,
                          std::size_t max_direct = 200000);

}  // namespace moment_atlas
