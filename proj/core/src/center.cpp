#include "moment_atlas/center.hpp"

#include <algorithm>
#include <cmath>

#include "moment_atlas/errors.hpp"
#include "moment_atlas/parallel.hpp"
#include "moment_atlas/planar_geometry.hpp"

namespace moment_atlas {

OdeSystem OdeSystem::create(SampledPath coefficients) {
  if (!coefficients.closed()) throw Error(ErrorKind::NotClosed, "coefficient path must be closed");
  const double scale = std::max(1.0, coefficients.bbox_diameter());
  for (double x : coefficients.point(0)) {
    if (std::abs(x) > 1e-12 * scale) {
      throw Error(ErrorKind::InvalidInput, "coefficient path must start at the origin");
    }
  }
  return OdeSystem(std::move(coefficients));
}

double integrate_abel(const SampledPath& coefficients, double v0, std::size_t steps_per_unit) {
  const std::size_t n = coefficients.dim();
  const double guard = 1e6 * std::max(1.0, std::abs(v0));
  std::vector<double> c(n);
  auto rhs = [&](double v) {
    double acc = 0.0;
    for (std::size_t j = n; j-- > 0;) acc = acc * v + c[j];
    return acc * v * v;
  };
  double v = v0;
  for (std::size_t seg = 0; seg + 1 < coefficients.size(); ++seg) {
    const double dt = coefficients.t(seg + 1) - coefficients.t(seg);
    for (std::size_t j = 0; j < n; ++j) {
      c[j] = (coefficients.point(seg + 1)[j] - coefficients.point(seg)[j]) / dt;
    }
    const auto steps = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(dt * static_cast<double>(steps_per_unit))));
    const double h = dt / static_cast<double>(steps);
    for (std::size_t s = 0; s < steps; ++s) {
      const double k1 = rhs(v);
      const double k2 = rhs(v + 0.5 * h * k1);
      const double k3 = rhs(v + 0.5 * h * k2);
      const double k4 = rhs(v + h * k3);
      v += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (!std::isfinite(v) || std::abs(v) > guard) throw Blowup(v0);
    }
  }
  return v;
}

double first_return_map(const OdeSystem& sys, double v0, std::size_t steps_per_unit) {
  return integrate_abel(sys.path(), v0, steps_per_unit);
}

std::vector<ReturnResidual> return_residuals(const OdeSystem& sys, const std::vector<double>& v0s,
                                             std::size_t steps_per_unit) {
  std::vector<ReturnResidual> out(v0s.size());
  parallel_for(v0s.size(), [&](std::size_t i) {
    double v0 = v0s[i];
    for (int attempt = 0;; ++attempt) {
      try {
        out[i] = {v0, std::abs(first_return_map(sys, v0, steps_per_unit) - v0)};
        return;
      } catch (const Blowup&) {
        if (attempt == 20) throw;
        v0 *= 0.5;
      }
    }
  });
  return out;
}

double fourth_coefficient(const SampledPath& planar) {
  if (planar.dim() != 2) throw Error(ErrorKind::InvalidInput, "fourth coefficient needs a planar path");
  const double m1 = moment_quadrature(planar, {{1, 0}, 1});
  const double m2 = moment_quadrature(planar, {{0, 1}, 0});
  return 3.0 * m1 + 2.0 * m2;
}

ConditionFlags classify_conditions(const EdgeWord& word, const CycleBasis& basis, const EdgeWord& trail,
                                   bool cyclic_trail) {
  ConditionFlags f;
  f.contractible_by_reduction = reduce_word(word, basis).empty();
  const auto n = homology_coefficients(word, basis);
  f.homologically_trivial = std::all_of(n.begin(), n.end(), [](long long x) { return x == 0; });
  f.covers = covers_trail(word, trail, cyclic_trail);
  f.contractible = f.contractible_by_reduction || (f.covers && f.homologically_trivial);
  f.consistent = !(f.covers && f.homologically_trivial) || f.contractible_by_reduction;
  return f;
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::UniversalCenter: return "universal_center";
    case Decision::NotCenter: return "not_center";
    case Decision::Undecided: return "undecided";
  }
  return "unknown";
}

CenterVerdict decide(const OdeSystem& sys, const CurveComplex& complex, const DecideOptions& options) {
  const SampledPath& path = sys.path();
  if (path.dim() != complex.dim()) {
    throw Error(ErrorKind::InvalidInput, "coefficient path and complex differ in dimension");
  }
  CenterVerdict v;
  v.word = trace_path(path, complex);
  v.betti_complex = betti1(complex);
  if (!v.word.empty()) {
    std::vector<std::size_t> used;
    for (const Letter& l : v.word.letters) used.push_back(l.edge);
    v.betti_image = betti1(subcomplex(complex, used).complex);
  }

  const CycleBasis basis = cycle_basis(complex, options.seed);
  v.flags.contractible_by_reduction = reduce_word(v.word, basis).empty();
  const auto n = homology_coefficients(v.word, basis);
  v.flags.homologically_trivial = std::all_of(n.begin(), n.end(), [](long long x) { return x == 0; });
  v.flags.covers = covers_eulerian_trail(complex, v.word, options.trail_limit);
  v.flags.contractible =
      v.flags.contractible_by_reduction || (v.flags.covers && v.flags.homologically_trivial);
  v.flags.consistent = !(v.flags.covers && v.flags.homologically_trivial) || v.flags.contractible_by_reduction;

  bool vanishing = false;
  if (v.betti_image == 0) {
    v.rule = "acyclic_image";
    v.decision = Decision::UniversalCenter;
    v.reason = "the image of the path contains no cycle";
  } else {
    if (complex.dim() == 2) {
      const FaceSet faces = extract_faces(complex, options.face_eps);
      if (options.assume_q_independent) {
        v.class_a = true;
      } else {
        std::vector<double> areas;
        for (const Face& f : faces.faces) areas.push_back(f.area);
        v.area_relation = q_independence_check(areas);
        v.class_a = !v.area_relation->found;
      }
      if (v.class_a) {
        v.rule = "class_a_single_moment";
        const MomentSpec spec{{1, 0}, 1};
        const double value = moment_quadrature(path, spec);
        vanishing = std::abs(value) <= vanishing_gate(path, 1, options.tol);
        if (!vanishing) {
          v.witness = spec;
          v.witness_value = value;
        }
      } else {
        v.rule = "planar_bound";
        v.bound = n_bound_2d(faces);
      }
    } else {
      v.rule = "cube_bound";
      v.bound = n_bound_nd(complex, options.cubes).bound;
    }
    if (v.rule != "class_a_single_moment") {
      v.scan = vanishing_scan(path, static_cast<unsigned>(v.bound), options.tol);
      vanishing = v.scan->all_zero;
      if (v.scan->witness) {
        v.witness = v.scan->witness;
        v.witness_value = v.scan->witness_value;
      }
    }

    if (vanishing) {
      if (v.flags.covers || v.flags.contractible_by_reduction) {
        v.decision = Decision::UniversalCenter;
        v.reason = v.flags.covers ? "moments vanish and the path covers an Eulerian trail of its image"
                                  : "moments vanish and the path reduces to the identity";
      } else {
        v.decision = Decision::Undecided;
        v.reason = "homologically trivial; the path covers no Eulerian trail, so contractibility is undecided";
      }
    } else if (v.witness && v.flags.covers) {
      v.decision = Decision::NotCenter;
      v.reason = "nonzero moment and the path covers an Eulerian trail of its image";
    } else {
      v.decision = Decision::Undecided;
      v.reason = v.witness ? "nonzero moment but the path covers no Eulerian trail of its image"
                           : "a projected moment is nonzero but no witness was located in the family";
    }
  }

  if (options.residuals) v.residuals = return_residuals(sys, options.residual_v0, options.steps_per_unit);
  return v;
}

}  // namespace moment_atlas
