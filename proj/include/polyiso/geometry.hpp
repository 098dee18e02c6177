#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>

#include "polyiso/errors.hpp"

namespace polyiso {

inline constexpr double pi = std::numbers::pi;

// Largest side count accepted; beyond it cos(pi/n) and tan(pi/n) lose too
// many digits for the closed forms below.
inline constexpr int max_sides = 1'000'000;

// arccos/arccosh arguments this close outside their domain are treated as
// roundoff and clamped; anything further out is a logic error upstream.
inline constexpr double clamp_tolerance = 1e-12;

enum class GeometryKind { euclidean, spherical, hyperbolic };

// Ambient plane of constant curvature K = 0, +1 or -1.
class Geometry {
public:
  constexpr Geometry(GeometryKind kind) noexcept : kind_(kind) {}

  static constexpr Geometry euclidean() noexcept { return {GeometryKind::euclidean}; }
  static constexpr Geometry spherical() noexcept { return {GeometryKind::spherical}; }
  static constexpr Geometry hyperbolic() noexcept { return {GeometryKind::hyperbolic}; }

  static constexpr Geometry from_curvature(int k) {
    switch (k) {
      case 0: return euclidean();
      case 1: return spherical();
      case -1: return hyperbolic();
    }
    throw DomainError("curvature must be one of 0, +1, -1");
  }

  static Geometry parse(std::string_view name) {
    if (name == "euclidean") return euclidean();
    if (name == "spherical") return spherical();
    if (name == "hyperbolic") return hyperbolic();
    throw DomainError("unknown geometry '" + std::string(name) +
                      "' (expected euclidean, spherical or hyperbolic)");
  }

  constexpr GeometryKind kind() const noexcept { return kind_; }

  constexpr int curvature() const noexcept {
    switch (kind_) {
      case GeometryKind::euclidean: return 0;
      case GeometryKind::spherical: return 1;
      case GeometryKind::hyperbolic: return -1;
    }
    return 0;
  }

  constexpr std::string_view name() const noexcept {
    switch (kind_) {
      case GeometryKind::euclidean: return "euclidean";
      case GeometryKind::spherical: return "spherical";
      case GeometryKind::hyperbolic: return "hyperbolic";
    }
    return "";
  }

  constexpr bool is_euclidean() const noexcept { return kind_ == GeometryKind::euclidean; }
  constexpr bool is_spherical() const noexcept { return kind_ == GeometryKind::spherical; }
  constexpr bool is_hyperbolic() const noexcept { return kind_ == GeometryKind::hyperbolic; }

  friend constexpr bool operator==(Geometry, Geometry) noexcept = default;

private:
  GeometryKind kind_;
};

// Open interval (lo, hi).
struct Interval {
  double lo;
  double hi;

  constexpr bool contains(double x) const noexcept { return lo < x && x < hi; }
  constexpr double width() const noexcept { return hi - lo; }
  constexpr double midpoint() const noexcept { return 0.5 * (lo + hi); }
};

inline void check_sides(int n) {
  if (n < 3) throw DomainError("side count n=" + std::to_string(n) + " is below the minimum 3");
  if (n > max_sides)
    throw DomainError("side count n=" + std::to_string(n) + " exceeds the maximum " +
                      std::to_string(max_sides));
}

// Interior angle of the regular Euclidean n-gon, (n-2)pi/n.
inline double euclidean_angle(int n) { return (n - 2) * pi / n; }

inline Interval area_interval(Geometry geometry, int n) {
  check_sides(n);
  switch (geometry.kind()) {
    case GeometryKind::euclidean: return {0.0, std::numeric_limits<double>::infinity()};
    case GeometryKind::spherical: return {0.0, 2.0 * pi};
    case GeometryKind::hyperbolic: return {0.0, (n - 2) * pi};
  }
  return {0.0, 0.0};
}

// Admissible interior angles. Euclidean polygons have a single angle, so the
// interval is empty there.
inline Interval angle_interval(Geometry geometry, int n) {
  check_sides(n);
  const double flat = euclidean_angle(n);
  switch (geometry.kind()) {
    case GeometryKind::euclidean: return {flat, flat};
    case GeometryKind::spherical: return {flat, pi};
    case GeometryKind::hyperbolic: return {0.0, flat};
  }
  return {flat, flat};
}

namespace detail {

inline std::string fmt_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void check_area(Geometry geometry, int n, double area) {
  const Interval dom = area_interval(geometry, n);
  if (!std::isfinite(area) || !(area > dom.lo))
    throw DomainError("area " + fmt_real(area) + " must be > 0");
  if (!(area < dom.hi))
    throw DomainError("area " + fmt_real(area) + " must be < " + fmt_real(dom.hi) + " for a " +
                      std::string(geometry.name()) + " " + std::to_string(n) + "-gon");
}

inline void check_angle(Geometry geometry, int n, double angle) {
  if (geometry.is_euclidean())
    throw DomainError("the interior angle of a euclidean polygon does not determine its area");
  const Interval dom = angle_interval(geometry, n);
  if (!(angle > dom.lo))
    throw DomainError("angle " + fmt_real(angle) + " must be > " + fmt_real(dom.lo));
  if (!(angle < dom.hi))
    throw DomainError("angle " + fmt_real(angle) + " must be < " + fmt_real(dom.hi));
}

// cos(2pi/n) + cos(x) written as a product so that it keeps full relative
// precision near its zero at x = (n-2)pi/n.
inline double angle_gap(int n, double x) {
  return 2.0 * std::cos(pi / n + 0.5 * x) * std::cos(pi / n - 0.5 * x);
}

// Half side length of a regular hyperbolic n-gon with interior angle x:
// arccosh(cos(pi/n) / sin(x/2)), evaluated as asinh of sqrt(ratio^2 - 1).
inline double hyperbolic_half_side(int n, double x) {
  const double half = std::sin(0.5 * x);
  const double ratio = std::cos(pi / n) / half;
  if (!(ratio >= 1.0 - clamp_tolerance))
    throw DomainError("arccosh argument " + fmt_real(ratio) + " is below 1");
  const double gap = std::max(angle_gap(n, x), 0.0);
  return std::asinh(std::sqrt(0.5 * gap) / half);
}

// Half side length of a regular spherical n-gon with interior angle x:
// arccos(cos(pi/n) / sin(x/2)), evaluated through atan2.
inline double spherical_half_side(int n, double x) {
  const double half = std::sin(0.5 * x);
  const double ratio = std::cos(pi / n) / half;
  if (!(ratio <= 1.0 + clamp_tolerance && ratio >= -1.0 - clamp_tolerance))
    throw DomainError("arccos argument " + fmt_real(ratio) + " is outside [-1, 1]");
  const double gap = std::max(-angle_gap(n, x), 0.0);
  return std::atan2(std::sqrt(0.5 * gap), std::cos(pi / n));
}

} // namespace detail

// Interior angle from area via Gauss-Bonnet. Euclidean angles do not depend
// on the area, which is still validated.
inline double angle_from_area(Geometry geometry, int n, double area) {
  detail::check_area(geometry, n, area);
  switch (geometry.kind()) {
    case GeometryKind::euclidean: return euclidean_angle(n);
    case GeometryKind::spherical: return (area + (n - 2) * pi) / n;
    case GeometryKind::hyperbolic: return ((n - 2) * pi - area) / n;
  }
  return 0.0;
}

inline double area_from_angle(Geometry geometry, int n, double angle) {
  check_sides(n);
  detail::check_angle(geometry, n, angle);
  const double area = geometry.is_spherical() ? n * angle - (n - 2) * pi : (n - 2) * pi - n * angle;
  // Angles within an ulp of the boundary can round to a degenerate area.
  detail::check_area(geometry, n, area);
  return area;
}

// A regular n-gon, parameterized by area. Angle, side and perimeter are
// derived on demand.
class RegularPolygon {
public:
  RegularPolygon(Geometry geometry, int n, double area) : geometry_(geometry), n_(n), area_(area) {
    detail::check_area(geometry, n, area);
  }

  static RegularPolygon from_angle(Geometry geometry, int n, double angle) {
    return {geometry, n, area_from_angle(geometry, n, angle)};
  }

  Geometry geometry() const noexcept { return geometry_; }
  int sides() const noexcept { return n_; }
  double area() const noexcept { return area_; }

  double angle() const { return angle_from_area(geometry_, n_, area_); }

  double side_length() const {
    switch (geometry_.kind()) {
      case GeometryKind::euclidean: return std::sqrt(4.0 * std::tan(pi / n_) * area_ / n_);
      case GeometryKind::spherical: return 2.0 * detail::spherical_half_side(n_, angle());
      case GeometryKind::hyperbolic: return 2.0 * detail::hyperbolic_half_side(n_, angle());
    }
    return 0.0;
  }

  double perimeter() const {
    if (geometry_.is_euclidean()) return std::sqrt(4.0 * n_ * std::tan(pi / n_) * area_);
    return n_ * side_length();
  }

private:
  Geometry geometry_;
  int n_;
  double area_;
};

inline double side_length(const RegularPolygon& polygon) { return polygon.side_length(); }
inline double perimeter(const RegularPolygon& polygon) { return polygon.perimeter(); }

// Perimeter of the regular n-gon of the given area.
inline double perimeter(Geometry geometry, int n, double area) {
  return RegularPolygon(geometry, n, area).perimeter();
}

} // namespace polyiso
