#pragma once

#include <cmath>
#include <concepts>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "polyiso/analysis.hpp"
#include "polyiso/errors.hpp"
#include "polyiso/geometry.hpp"

namespace polyiso::threshold {

inline constexpr double residual_tolerance = 1e-10;
inline constexpr double width_tolerance = 1e-15;
inline constexpr int max_bisection_iterations = 200;

struct BisectionResult {
  double x;
  int iterations;
  double residual; // |f(x)|
};

// Bisection on a sign-changing bracket. Stops once |f(mid)| <= tol, the
// bracket is narrower than width_tolerance, or the midpoint stops moving.
template <std::invocable<double> F>
BisectionResult bisect(F&& f, double lo, double hi, double tol) {
  if (!(lo < hi)) throw ArgumentError("bisect: lo must be below hi");
  if (!(tol > 0.0)) throw ArgumentError("bisect: tolerance must be positive");
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return {lo, 0, 0.0};
  if (f_hi == 0.0) return {hi, 0, 0.0};
  if ((f_lo < 0.0) == (f_hi < 0.0))
    throw BracketError("bisect: f has the same sign at " + polyiso::detail::fmt_real(lo) +
                       " and " + polyiso::detail::fmt_real(hi));

  for (int it = 1; it <= max_bisection_iterations; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    const double f_mid = f(mid);
    if (std::abs(f_mid) <= tol || hi - lo <= width_tolerance || mid == lo || mid == hi)
      return {mid, it, std::abs(f_mid)};
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  throw ConvergenceError("bisect: no convergence after " +
                         std::to_string(max_bisection_iterations) + " iterations");
}

template <std::invocable<double> F>
double find_root_bisect(F&& f, double lo, double hi, double tol) {
  return bisect(std::forward<F>(f), lo, hi, tol).x;
}

struct ThresholdResult {
  int n;
  double theta_big; // critical interior angle
  double x0;        // inflection point of g
  double max_area;  // (n-2)pi - n * theta_big
  int iterations;
  double residual; // |phi(theta_big)|
};

namespace detail {

inline BisectionResult solve_inflection(int n) {
  const analysis::AnalysisDomain dom = analysis::domain(n);
  auto g2 = [n](double x) { return analysis::g2(n, x); };

  // g'' is positive near 0 and negative near the upper end.
  double lo = 0.5 * dom.hi;
  while (!(g2(lo) > 0.0)) {
    lo *= 0.5;
    if (lo < 1e-15) throw BracketError("x0: g'' never positive near 0 for n=" + std::to_string(n));
  }
  double standoff = 0.5 * (dom.hi - lo);
  double hi = dom.hi - standoff;
  while (!(g2(hi) < 0.0)) {
    standoff *= 0.5;
    hi = dom.hi - standoff;
    if (standoff < 1e-15)
      throw BracketError("x0: g'' never negative near the upper end for n=" + std::to_string(n));
  }
  return bisect(g2, lo, hi, residual_tolerance);
}

inline ThresholdResult solve_threshold(int n) {
  const double x0 = solve_inflection(n).x;
  auto phi = [n](double x) { return analysis::phi(n, x); };
  if (!(phi(x0) > 0.0)) throw BracketError("theta: phi(x0) is not positive for n=" + std::to_string(n));

  double lo = 0.5 * x0;
  while (!(phi(lo) < 0.0)) {
    lo *= 0.5;
    if (lo < 1e-15)
      throw BracketError("theta: phi has no sign change below x0 for n=" + std::to_string(n));
  }
  const BisectionResult root = bisect(phi, lo, x0, residual_tolerance);
  return {n, root.x, x0, (n - 2) * pi - n * root.x, root.iterations, root.residual};
}

class Memo {
public:
  ThresholdResult get(int n) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = table_.find(n); it != table_.end()) return it->second;
    }
    const ThresholdResult result = solve_threshold(n);
    std::unique_lock lock(mutex_);
    return table_.try_emplace(n, result).first->second;
  }

private:
  std::shared_mutex mutex_;
  std::map<int, ThresholdResult> table_;
};

inline Memo& memo() {
  static Memo instance;
  return instance;
}

} // namespace detail

// Unique root of g'' on (0, (n-2)pi/n).
inline double x0(int n) {
  check_sides(n);
  return detail::memo().get(n).x0;
}

// Critical angle: a single regular hyperbolic n-gon with interior angle
// theta >= theta_big has minimal total perimeter among all configurations of
// the same total area. Memoized per n.
inline ThresholdResult theta(int n) {
  check_sides(n);
  return detail::memo().get(n);
}

} // namespace polyiso::threshold
