#pragma once

// Small dense-vector helpers shared by the geometry translation units.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace moment_atlas::detail {

using Vec = std::vector<double>;

inline Vec sub(std::span<const double> a, std::span<const double> b) {
  Vec r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] - b[k];
  return r;
}

inline Vec lerp(std::span<const double> a, std::span<const double> b, double s) {
  Vec r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + s * (b[k] - a[k]);
  return r;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline double norm2(std::span<const double> a) { return dot(a, a); }
inline double norm(std::span<const double> a) { return std::sqrt(norm2(a)); }

inline double dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

inline double dist_inf(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

struct PointSegment {
  double distance;
  double s;  // parameter of the closest point, in [0, 1]
};

inline PointSegment point_segment(std::span<const double> p,
                                  std::span<const double> a,
                                  std::span<const double> b) {
  const Vec u = sub(b, a);
  const double uu = norm2(u);
  double s = 0.0;
  if (uu > 0.0) {
    const Vec w = sub(p, a);
    s = std::clamp(dot(w, u) / uu, 0.0, 1.0);
  }
  const Vec c = lerp(a, b, s);
  return {dist(p, c), s};
}

struct SegmentSegment {
  double distance;
  double s;
  double t;
};

// Closest points between segments a0a1 and b0b1 in R^n.
inline SegmentSegment segment_segment(std::span<const double> a0,
                                      std::span<const double> a1,
                                      std::span<const double> b0,
                                      std::span<const double> b1) {
  const Vec d1 = sub(a1, a0);
  const Vec d2 = sub(b1, b0);
  const Vec r = sub(a0, b0);
  const double a = norm2(d1);
  const double e = norm2(d2);
  const double f = dot(d2, r);
  double s = 0.0;
  double t = 0.0;
  if (a <= 0.0 && e <= 0.0) {
    s = t = 0.0;
  } else if (a <= 0.0) {
    s = 0.0;
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = dot(d1, r);
    if (e <= 0.0) {
      t = 0.0;
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = dot(d1, d2);
      const double denom = a * e - b * b;
      if (denom > 1e-14 * a * e) {
        s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
      } else {
        s = 0.0;
      }
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  const Vec pa = lerp(a0, a1, s);
  const Vec pb = lerp(b0, b1, t);
  return {dist(pa, pb), s, t};
}

// l_inf distance from p to the segment ab. The objective
// max_k |p_k - a_k - s u_k| is convex and piecewise linear in s, so its
// minimum over [0, 1] sits at an endpoint, a coordinate zero, or a crossing
// of two coordinate terms.
inline double point_segment_inf(std::span<const double> p,
                                std::span<const double> a,
                                std::span<const double> b) {
  const std::size_t n = p.size();
  const Vec w = sub(p, a);
  const Vec u = sub(b, a);
  auto objective = [&](double s) {
    double m = 0.0;
    for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::abs(w[k] - s * u[k]));
    return m;
  };
  double best = std::min(objective(0.0), objective(1.0));
  auto consider = [&](double s) {
    if (s > 0.0 && s < 1.0) best = std::min(best, objective(s));
  };
  for (std::size_t k = 0; k < n; ++k) {
    if (u[k] != 0.0) consider(w[k] / u[k]);
    for (std::size_t l = k + 1; l < n; ++l) {
      // w_k - s u_k = +-(w_l - s u_l)
      const double dm = u[k] - u[l];
      if (dm != 0.0) consider((w[k] - w[l]) / dm);
      const double dp = u[k] + u[l];
      if (dp != 0.0) consider((w[k] + w[l]) / dp);
    }
  }
  return best;
}

}  // namespace moment_atlas::detail
