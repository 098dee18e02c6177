#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polyiso/analysis.hpp"
#include "polyiso/errors.hpp"
#include "polyiso/geometry.hpp"
#include "polyiso/threshold.hpp"

namespace polyiso {

// Perimeter differences within this band count as equality.
inline constexpr double tie_tolerance = 1e-9;

// A finite collection of disjoint regular n-gons, tracked by area only.
class Configuration {
public:
  Configuration(Geometry geometry, int n, std::vector<double> areas)
      : geometry_(geometry), n_(n), areas_(std::move(areas)) {
    check_sides(n);
    if (areas_.empty()) throw DomainError("a configuration needs at least one polygon");
    for (double a : areas_) detail::check_area(geometry_, n_, a);
  }

  Geometry geometry() const noexcept { return geometry_; }
  int sides() const noexcept { return n_; }
  std::size_t size() const noexcept { return areas_.size(); }
  std::span<const double> areas() const noexcept { return areas_; }

  RegularPolygon polygon(std::size_t i) const { return {geometry_, n_, areas_.at(i)}; }

  // Left-to-right sums.
  double total_area() const noexcept {
    double sum = 0.0;
    for (double a : areas_) sum += a;
    return sum;
  }

  double total_perimeter() const {
    double sum = 0.0;
    for (double a : areas_) sum += RegularPolygon(geometry_, n_, a).perimeter();
    return sum;
  }

private:
  Geometry geometry_;
  int n_;
  std::vector<double> areas_;
};

inline double total_area(const Configuration& config) { return config.total_area(); }
inline double total_perimeter(const Configuration& config) { return config.total_perimeter(); }

enum class Verdict { single_optimal_strict, tie, split_beats_single };

inline constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::single_optimal_strict: return "single_optimal_strict";
    case Verdict::tie: return "tie";
    case Verdict::split_beats_single: return "split_beats_single";
  }
  return "";
}

inline Verdict compare_perimeters(double config_perimeter, double single_perimeter) {
  const double diff = config_perimeter - single_perimeter;
  if (diff > tie_tolerance) return Verdict::single_optimal_strict;
  if (diff < -tie_tolerance) return Verdict::split_beats_single;
  return Verdict::tie;
}

// One pairwise comparison of the prefix-merge sequence: the polygons of area
// `prefix_area` and `part_area` against their merged polygon.
struct MergeStep {
  double prefix_area;
  double part_area;
  double merged_area;
  double pair_perimeter;
  double merged_perimeter;
  Verdict verdict;
};

// Outcome of comparing a configuration with the single regular polygon of the
// same total area. `witness` holds a strictly shorter configuration whenever
// the equal two-split beats the single polygon.
struct SplitAssessment {
  std::vector<double> areas;
  double single_perimeter = 0.0;
  double config_perimeter = 0.0;
  Verdict verdict = Verdict::tie;
  std::optional<Configuration> witness;
  double theta = 0.0;                  // interior angle of the single polygon
  std::optional<double> theta_big;     // hyperbolic only
  std::vector<MergeStep> merge_steps;  // filled by merge_chain
};

namespace detail {

inline void check_single_area(Geometry geometry, int n, double total) {
  try {
    check_area(geometry, n, total);
  } catch (const DomainError& e) {
    throw DomainError(std::string("total area: ") + e.what());
  }
}

// Equal two-split of a hyperbolic polygon with the given total area, when it
// is strictly shorter than the single polygon.
inline std::optional<Configuration> equal_split_witness(int n, double total, double single_perimeter) {
  const double half = 0.5 * total;
  Configuration split(Geometry::hyperbolic(), n, {half, half});
  if (split.total_perimeter() < single_perimeter - tie_tolerance) return split;
  return std::nullopt;
}

inline SplitAssessment assess(const Configuration& config, double total) {
  const Geometry geometry = config.geometry();
  const int n = config.sides();
  check_single_area(geometry, n, total);

  SplitAssessment out;
  out.areas.assign(config.areas().begin(), config.areas().end());
  out.single_perimeter = perimeter(geometry, n, total);
  out.config_perimeter = config.total_perimeter();
  out.verdict = compare_perimeters(out.config_perimeter, out.single_perimeter);
  out.theta = angle_from_area(geometry, n, total);
  if (geometry.is_hyperbolic()) {
    out.theta_big = threshold::theta(n).theta_big;
    out.witness = equal_split_witness(n, total, out.single_perimeter);
  }
  return out;
}

} // namespace detail

// Compares an arbitrary configuration with the single polygon of equal total
// area.
inline SplitAssessment assess_configuration(const Configuration& config) {
  return detail::assess(config, config.total_area());
}

struct PythagorasTriple {
  double p1;
  double p2;
  double p; // merged polygon; p^2 = p1^2 + p2^2
};

// Euclidean perimeters are proportional to sqrt(area), so the two parts and
// the merged polygon form a right triangle.
inline PythagorasTriple euclidean_pythagoras_check(double a1, double a2, int n) {
  const Geometry e = Geometry::euclidean();
  return {perimeter(e, n, a1), perimeter(e, n, a2), perimeter(e, n, a1 + a2)};
}

// Two-polygon split of the polygon with the given total area. `theta1` is the
// interior angle of the first part (spherical or hyperbolic only); it
// defaults to the equal split.
inline SplitAssessment assess_two_split(Geometry geometry, int n, double total_area,
                                        std::optional<double> theta1 = std::nullopt) {
  detail::check_single_area(geometry, n, total_area);
  if (geometry.is_euclidean()) {
    if (theta1) throw DomainError("theta1 does not parameterize a euclidean split");
    return detail::assess(Configuration(geometry, n, {0.5 * total_area, 0.5 * total_area}), total_area);
  }

  const double theta = angle_from_area(geometry, n, total_area);
  const double c = theta + euclidean_angle(n);
  const double first_angle = theta1.value_or(0.5 * c);

  double first_area = 0.0;
  try {
    first_area = area_from_angle(geometry, n, first_angle);
  } catch (const DomainError& e) {
    throw DomainError(std::string("theta1: ") + e.what());
  }
  if (!(first_area < total_area))
    throw DomainError("theta1=" + detail::fmt_real(first_angle) +
                      " leaves no area for the second polygon");
  const double second_area = total_area - first_area;

  SplitAssessment out =
      detail::assess(Configuration(geometry, n, {first_area, second_area}), total_area);
  if (geometry.is_hyperbolic()) {
    // Compare in angle form: 2n h(theta1) against 2n g(theta).
    const auto params = analysis::SplitFunctionParams::make(n, c);
    out.config_perimeter = 2.0 * n * analysis::h(params, first_angle);
    out.single_perimeter = 2.0 * n * analysis::g(n, theta);
    out.verdict = compare_perimeters(out.config_perimeter, out.single_perimeter);
  }
  return out;
}

// Merges a hyperbolic configuration prefix by prefix, P'_i = P_1 + ... + P_i,
// recording the comparison perim(P'_{i-1}) + perim(P_i) vs perim(P'_i) at
// each step. The overall verdict compares the configuration with the single
// polygon of the total area.
inline SplitAssessment merge_chain(const Configuration& config) {
  if (!config.geometry().is_hyperbolic()) throw DomainError("merge_chain: hyperbolic configurations only");
  const int n = config.sides();
  const Geometry h = Geometry::hyperbolic();
  const auto areas = config.areas();

  std::vector<MergeStep> steps;
  double prefix = areas[0];
  for (std::size_t i = 1; i < areas.size(); ++i) {
    const double merged = prefix + areas[i];
    detail::check_single_area(h, n, merged);
    MergeStep step{prefix, areas[i], merged, perimeter(h, n, prefix) + perimeter(h, n, areas[i]),
                   perimeter(h, n, merged), Verdict::tie};
    step.verdict = compare_perimeters(step.pair_perimeter, step.merged_perimeter);
    steps.push_back(step);
    prefix = merged;
  }

  SplitAssessment out = detail::assess(config, prefix);
  out.merge_steps = std::move(steps);
  return out;
}

struct CounterexampleResult {
  Configuration config;   // {T1, T2}, areas pi/2 and pi/2 - 3 eps
  RegularPolygon single;  // T_eps, interior angle eps
  double split_perimeter;
  double single_perimeter;
  double margin;          // single - split; positive when the split wins
  double pair_bound;      // 6 arccosh(3 + 2 sqrt 3)
};

// Two regular hyperbolic triangles against the triangle with interior angle
// eps of the same total area.
inline CounterexampleResult counterexample_triangles(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < pi / 6.0))
    throw DomainError("epsilon=" + detail::fmt_real(epsilon) + " must lie in (0, pi/6)");
  const Geometry h = Geometry::hyperbolic();
  Configuration config(h, 3, {0.5 * pi, 0.5 * pi - 3.0 * epsilon});
  RegularPolygon single = RegularPolygon::from_angle(h, 3, epsilon);

  const double split = config.total_perimeter();
  const double whole = single.perimeter();
  const double bound = 6.0 * std::acosh(3.0 + 2.0 * std::sqrt(3.0));
  if (split > bound + tie_tolerance)
    throw std::logic_error("counterexample: triangle pair exceeds its perimeter bound");
  return {std::move(config), single, split, whole, whole - split, bound};
}

inline constexpr int brute_force_max_parts = 4;
inline constexpr int brute_force_max_resolution = 2000;
inline constexpr std::uint64_t brute_force_max_evaluations = 100'000'000;

struct BruteForceResult {
  Configuration best;
  double perimeter;
  std::uint64_t evaluations;
};

namespace detail {

// Number of compositions of `total` into `parts` positive integers.
inline std::uint64_t compositions(int total, int parts) {
  // C(total - 1, parts - 1)
  const std::uint64_t top = static_cast<std::uint64_t>(total - 1);
  const std::uint64_t k = static_cast<std::uint64_t>(parts - 1);
  if (k > top) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (top - k + i) / i;
  return r;
}

struct GridSearch {
  std::span<const double> table; // table[j - 1] = perimeter of a part of j grid steps
  int resolution;
  std::vector<int> current;
  std::vector<int> best;
  double best_perimeter;
  std::uint64_t evaluations = 0;

  void run(int parts) {
    current.assign(static_cast<std::size_t>(parts), 0);
    fill(0, resolution);
  }

  void fill(std::size_t pos, int remaining) {
    if (pos + 1 == current.size()) {
      current[pos] = remaining;
      double sum = 0.0;
      for (int j : current) sum += table[static_cast<std::size_t>(j - 1)];
      ++evaluations;
      // Enumeration runs by k, then lexicographically, so strict improvement
      // keeps the smallest k and smallest area vector among ties.
      if (sum < best_perimeter) {
        best_perimeter = sum;
        best = current;
      }
      return;
    }
    const int reserve = static_cast<int>(current.size() - pos - 1);
    for (int j = 1; j <= remaining - reserve; ++j) {
      current[pos] = j;
      fill(pos + 1, remaining - j);
    }
  }
};

} // namespace detail

// Exhaustive search over splits of total_area into k = 1..k_max parts whose
// areas are multiples of total_area / resolution.
inline BruteForceResult brute_force_min(Geometry geometry, int n, double total_area, int k_max,
                                        int resolution) {
  detail::check_single_area(geometry, n, total_area);
  if (k_max < 1 || resolution < 1) throw ArgumentError("brute_force_min: k_max and resolution must be positive");
  if (k_max > brute_force_max_parts)
    throw ResourceError("brute_force_min: k_max=" + std::to_string(k_max) + " exceeds " +
                        std::to_string(brute_force_max_parts));
  if (resolution > brute_force_max_resolution)
    throw ResourceError("brute_force_min: resolution=" + std::to_string(resolution) + " exceeds " +
                        std::to_string(brute_force_max_resolution));
  std::uint64_t budget = 0;
  for (int k = 1; k <= k_max; ++k) budget += detail::compositions(resolution, k);
  if (budget > brute_force_max_evaluations)
    throw ResourceError("brute_force_min: " + std::to_string(budget) + " evaluations exceed the budget");

  const double step = total_area / resolution;
  std::vector<double> table(static_cast<std::size_t>(resolution));
  for (int j = 1; j <= resolution; ++j) {
    const double a = j == resolution ? total_area : j * step;
    table[static_cast<std::size_t>(j - 1)] = perimeter(geometry, n, a);
  }

  detail::GridSearch search{table, resolution, {}, {}, std::numeric_limits<double>::infinity()};
  for (int k = 1; k <= k_max && k <= resolution; ++k) search.run(k);

  std::vector<double> areas;
  for (int j : search.best) areas.push_back(j == resolution ? total_area : j * step);
  return {Configuration(geometry, n, std::move(areas)), search.best_perimeter, search.evaluations};
}

} // namespace polyiso
