#pragma once

#include <cmath>
#include <concepts>
#include <string>

#include "polyiso/errors.hpp"
#include "polyiso/geometry.hpp"

namespace polyiso::analysis {

// Open domain (0, (n-2)pi/n) of the hyperbolic interior angle.
struct AnalysisDomain {
  int n;
  double lo;
  double hi;

  bool contains(double x) const noexcept { return lo < x && x < hi; }
};

inline AnalysisDomain domain(int n) {
  check_sides(n);
  return {n, 0.0, euclidean_angle(n)};
}

namespace detail {

inline void require_inside(const AnalysisDomain& dom, double x, const char* what) {
  if (!dom.contains(x))
    throw DomainError(std::string(what) + ": x=" + polyiso::detail::fmt_real(x) +
                      " is outside (0, " + polyiso::detail::fmt_real(dom.hi) + ") for n=" +
                      std::to_string(dom.n));
}

} // namespace detail

// Half side of the regular hyperbolic n-gon with interior angle x, so that the
// perimeter is 2n g(n, x).
inline double g(int n, double x) {
  detail::require_inside(domain(n), x, "g");
  return polyiso::detail::hyperbolic_half_side(n, x);
}

inline double g1(int n, double x) {
  detail::require_inside(domain(n), x, "g1");
  const double q = std::cos(pi / n);
  const double gap = polyiso::detail::angle_gap(n, x);
  const double cot_half = 1.0 / std::tan(0.5 * x);
  return -(q / std::numbers::sqrt2) * cot_half / std::sqrt(gap);
}

inline double g2(int n, double x) {
  detail::require_inside(domain(n), x, "g2");
  const double q = std::cos(pi / n);
  const double gap = polyiso::detail::angle_gap(n, x);
  const double s = std::sin(0.5 * x);
  const double csc2 = 1.0 / (s * s);
  const double cot_half = 1.0 / std::tan(0.5 * x);
  const double root = std::sqrt(gap);
  return q / (2.0 * std::numbers::sqrt2) *
         (csc2 / root - std::sin(x) * cot_half / (gap * root));
}

inline double g3(int n, double x) {
  detail::require_inside(domain(n), x, "g3");
  const double q = std::cos(pi / n);
  const double c2 = std::cos(2.0 * pi / n);
  const double gap = polyiso::detail::angle_gap(n, x);
  const double s = std::sin(0.5 * x);
  const double csc2 = 1.0 / (s * s);
  const double cot_half = 1.0 / std::tan(0.5 * x);
  const double cx = std::cos(x);
  const double root = std::sqrt(gap);
  const double gap32 = gap * root;
  const double gap52 = gap32 * gap;
  return q / (4.0 * std::numbers::sqrt2) *
         (-cot_half * csc2 * (2.0 * c2 + 3.0 * cx - 1.0) / gap32 -
          std::sin(x) * (cx + 3.0 - 2.0 * c2) / gap52);
}

// Closed angle domain [(n-2)pi/n, pi] of a regular spherical n-gon, including
// the degenerate endpoint.
inline void require_spherical_angle(int n, double x, const char* what) {
  check_sides(n);
  const double lo = euclidean_angle(n);
  if (!(x >= lo && x <= pi))
    throw DomainError(std::string(what) + ": x=" + polyiso::detail::fmt_real(x) +
                      " is outside [" + polyiso::detail::fmt_real(lo) + ", pi]");
}

// Spherical half side arccos(cos(pi/n) / sin(x/2)).
inline double f_spherical(int n, double x) {
  require_spherical_angle(n, x, "f_spherical");
  return polyiso::detail::spherical_half_side(n, x);
}

// Second derivative of f_spherical. Every term is negative inside the domain;
// the value diverges to -infinity at the degenerate endpoint.
inline double f2_spherical(int n, double x) {
  require_spherical_angle(n, x, "f2_spherical");
  const double q = std::cos(pi / n);
  const double s = std::sin(0.5 * x);
  const double csc = 1.0 / s;
  const double cot = std::cos(0.5 * x) / s;
  // 1 - q^2 csc^2, from the product form to avoid cancellation.
  const double w = std::max(-polyiso::detail::angle_gap(n, x), 0.0) * 0.5 * csc * csc;
  const double rw = std::sqrt(w);
  return -q * csc * csc * csc / (4.0 * rw) - q * cot * cot * csc / (4.0 * rw) -
         q * q * q * cot * cot * csc * csc * csc / (4.0 * w * rw);
}

// Conserved angle sum c = theta1 + theta2 of a two-polygon split.
struct SplitFunctionParams {
  int n;
  double c;

  // The split of a single hyperbolic polygon with interior angle theta.
  static SplitFunctionParams for_angle(int n, double theta) {
    return make(n, theta + euclidean_angle(n));
  }

  static SplitFunctionParams make(int n, double c) {
    check_sides(n);
    const double flat = euclidean_angle(n);
    if (!(c > flat && c < 2.0 * flat))
      throw DomainError("angle sum c=" + polyiso::detail::fmt_real(c) + " is outside (" +
                        polyiso::detail::fmt_real(flat) + ", " +
                        polyiso::detail::fmt_real(2.0 * flat) + ")");
    return {n, c};
  }

  // Admissible theta1, so that both theta1 and c - theta1 are valid angles.
  Interval interval() const {
    const double flat = euclidean_angle(n);
    return {c - flat, flat};
  }
};

// Two-split objective g(x) + g(c - x).
inline double h(const SplitFunctionParams& params, double x) {
  const Interval dom = params.interval();
  if (!dom.contains(x))
    throw DomainError("h: x=" + polyiso::detail::fmt_real(x) + " is outside (" +
                      polyiso::detail::fmt_real(dom.lo) + ", " +
                      polyiso::detail::fmt_real(dom.hi) + ")");
  return polyiso::detail::hyperbolic_half_side(params.n, x) +
         polyiso::detail::hyperbolic_half_side(params.n, params.c - x);
}

// Interior angle of each half of the equal split of a polygon with angle x.
inline double equal_split_angle(int n, double x) { return 0.5 * x + 0.5 * pi - pi / n; }

// Equal-split margin 2 g(equal_split_angle(x)) - g(x). Negative exactly when
// splitting the polygon in half shortens the total perimeter.
inline double phi(int n, double x) {
  detail::require_inside(domain(n), x, "phi");
  return 2.0 * polyiso::detail::hyperbolic_half_side(n, equal_split_angle(n, x)) -
         polyiso::detail::hyperbolic_half_side(n, x);
}

// For f strictly concave on [a, b] and c + d = a + b with c, d inside, the
// chord bound gives f(c) + f(d) > f(a) + f(b). Concavity is the caller's
// responsibility.
template <std::invocable<double> F>
bool check_concave_split(F&& f, double a, double b, double c, double d) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs((a + b) - (c + d)) > 1e-12 * scale)
    throw ArgumentError("check_concave_split: a + b and c + d differ");
  return f(c) + f(d) > f(a) + f(b);
}

} // namespace polyiso::analysis
