#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "oracle/reference.hpp"
#include "polyiso/analysis.hpp"

using namespace polyiso;
using namespace polyiso::analysis;
using Catch::Approx;

namespace {

double hp_eval(int n, double x) { return static_cast<double>(oracle::hp_g(n, oracle::hp_float(x))); }

// Samples strictly inside (lo, hi) on a uniform grid of `points` interior nodes.
std::vector<double> interior_grid(double lo, double hi, int points) {
  std::vector<double> xs;
  for (int i = 1; i <= points; ++i) xs.push_back(lo + (hi - lo) * i / (points + 1));
  return xs;
}

bool agree(double exact, double approx, double rel) {
  return std::abs(exact - approx) <= rel * std::max(std::abs(exact), std::abs(approx));
}

} // namespace

TEST_CASE("g reference values") {
  // 50-digit evaluation of arccosh(0.5 / sin(pi/12)).
  CHECK(g(3, pi / 6) == Approx(1.2766868683803454).epsilon(1e-15));
  CHECK(g(3, pi / 6) == Approx(hp_eval(3, pi / 6)).epsilon(1e-15));
  CHECK(g(4, pi / 4) == Approx(1.2242262238390379).epsilon(1e-15));
  CHECK(g(4, pi / 4) == Approx(hp_eval(4, pi / 4)).epsilon(1e-15));
  // perimeter(hyperbolic, 3, pi/2) = 6 g(3, pi/6)
  CHECK(6 * g(3, pi / 6) == Approx(3 * std::acosh(3 + 2 * std::sqrt(3.0))).epsilon(1e-14));

  SECTION("against the 50-digit oracle across the domain") {
    std::mt19937_64 rng(11);
    for (int n : {3, 4, 5, 7, 12, 50}) {
      const double hi = euclidean_angle(n);
      std::uniform_real_distribution<double> u(1e-4, hi - 1e-4);
      for (int i = 0; i < 100; ++i) {
        const double x = u(rng);
        CHECK(agree(hp_eval(n, x), g(n, x), 1e-12));
      }
    }
  }
}

TEST_CASE("g is positive, decreasing, with the stated limits") {
  for (int n = 3; n <= 12; ++n) {
    const auto dom = domain(n);
    double prev = std::numeric_limits<double>::infinity();
    for (double x : interior_grid(dom.lo, dom.hi, 1000)) {
      const double v = g(n, x);
      CHECK(v > 0.0);
      CHECK(v < prev);
      prev = v;
    }
    CHECK(g(n, 1e-9) > 10.0);
    CHECK(g(n, dom.hi - 1e-12) < 1e-5);
  }
  CHECK_THROWS_AS(g(3, 0.0), DomainError);
  CHECK_THROWS_AS(g(3, pi / 3), DomainError);
  CHECK_THROWS_AS(g(3, -0.1), DomainError);
  CHECK_THROWS_AS(g(2, 0.1), DomainError);
}

TEST_CASE("closed-form derivatives match central differences") {
  constexpr double h = 1e-6;
  constexpr double rel = 1e-5;
  std::mt19937_64 rng(5);
  for (int n : {3, 4, 5, 7, 12}) {
    const double hi = euclidean_angle(n);
    std::uniform_real_distribution<double> u(1e-3, hi - 1e-3);
    for (int i = 0; i < 200; ++i) {
      const double x = u(rng);
      INFO("n=" << n << " x=" << x);
      CHECK(agree(g1(n, x), oracle::central_difference([n](double t) { return g(n, t); }, x, h), rel));
      CHECK(agree(g2(n, x), oracle::central_difference([n](double t) { return g1(n, t); }, x, h), rel));
      CHECK(agree(g3(n, x), oracle::central_difference([n](double t) { return g2(n, t); }, x, h), rel));
    }
  }
  // Spot check at x = 0.5 with the double-precision reference g.
  CHECK(agree(g1(3, 0.5), oracle::central_difference([](double t) { return oracle::g(3, t); }, 0.5, 1e-6), 1e-6));
}

TEST_CASE("derivative sign structure") {
  for (int n = 3; n <= 12; ++n) {
    const auto dom = domain(n);
    const auto xs = interior_grid(dom.lo, dom.hi, 1000);
    int g2_changes = 0;
    bool prev_positive = g2(n, xs.front()) > 0;
    CHECK(prev_positive);
    for (double x : xs) {
      CHECK(g1(n, x) < 0.0);
      CHECK(g3(n, x) < 0.0);
      const bool positive = g2(n, x) > 0;
      if (positive != prev_positive) ++g2_changes;
      prev_positive = positive;
    }
    CHECK(g2_changes == 1);
    CHECK_FALSE(prev_positive);
    // g' diverges to -infinity at both ends.
    CHECK(g1(n, 1e-9) < -1e6);
    CHECK(g1(n, dom.hi - 1e-9) < -1e2);
    CHECK(g1(n, dom.hi - 1e-12) < g1(n, dom.hi - 1e-9));
  }
}

TEST_CASE("spherical f and f''") {
  CHECK(f_spherical(3, pi) == Approx(pi / 3).epsilon(1e-15));
  for (int n = 3; n <= 12; ++n) CHECK(f_spherical(n, euclidean_angle(n)) == Approx(0.0).margin(1e-7));
  CHECK(f2_spherical(3, 2.5) < 0.0);
  CHECK(f2_spherical(3, pi) < 0.0);
  CHECK_THROWS_AS(f_spherical(3, 1.0), DomainError);
  CHECK_THROWS_AS(f_spherical(3, pi + 1e-9), DomainError);
  CHECK_THROWS_AS(f2_spherical(4, 1.0), DomainError);

  for (int n = 3; n <= 12; ++n) {
    const double lo = euclidean_angle(n);
    for (double x : interior_grid(lo, pi, 500)) {
      CHECK(f_spherical(n, x) >= 0.0);
      CHECK(f2_spherical(n, x) < 0.0);
      CHECK(f_spherical(n, x) == Approx(oracle::f_spherical(n, x)).epsilon(1e-10));
    }
    // Second difference of f, away from the singular endpoint.
    for (double x : interior_grid(lo + 0.02, pi - 1e-3, 50)) {
      const double step = 1e-4;
      const double fd =
          (f_spherical(n, x + step) - 2 * f_spherical(n, x) + f_spherical(n, x - step)) / (step * step);
      INFO("n=" << n << " x=" << x);
      CHECK(agree(f2_spherical(n, x), fd, 1e-5));
    }
  }
}

TEST_CASE("split objective h") {
  const auto params = SplitFunctionParams::make(3, pi / 3 + pi / 6);
  CHECK(h(params, params.c / 2) == Approx(2 * g(3, params.c / 2)).epsilon(1e-15));

  SECTION("symmetric about c/2") {
    std::mt19937_64 rng(3);
    for (int n : {3, 4, 6, 9}) {
      const double flat = euclidean_angle(n);
      std::uniform_real_distribution<double> uc(flat + 1e-3, 2 * flat - 1e-3);
      const auto p = SplitFunctionParams::make(n, uc(rng));
      const Interval dom = p.interval();
      std::uniform_real_distribution<double> ux(dom.lo + 1e-6, dom.hi - 1e-6);
      for (int i = 0; i < 100; ++i) {
        const double x = ux(rng);
        CHECK(std::abs(h(p, x) - h(p, p.c - x)) <= 1e-12 * h(p, x));
      }
    }
  }

  SECTION("limit at the upper end") {
    for (int n : {3, 5, 8}) {
      const double flat = euclidean_angle(n);
      const auto p = SplitFunctionParams::make(n, flat + 0.3 * flat);
      const double boundary = g(n, p.c - flat);
      CHECK(h(p, flat - 1e-9) == Approx(boundary).margin(1e-4));
      CHECK(h(p, flat - 1e-9) > boundary);
    }
  }

  SECTION("interior grid minima only at c/2") {
    for (int n : {3, 4, 7}) {
      const double flat = euclidean_angle(n);
      for (double frac : {0.02, 0.1, 0.3, 0.5, 0.7, 0.95}) {
        const auto p = SplitFunctionParams::make(n, flat * (1 + frac));
        const Interval dom = p.interval();
        const auto xs = interior_grid(dom.lo, dom.hi, 10000);
        const double spacing = xs[1] - xs[0];
        std::vector<double> vals;
        for (double x : xs) vals.push_back(h(p, x));
        for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
          if (vals[i] < vals[i - 1] && vals[i] < vals[i + 1]) {
            INFO("n=" << n << " c=" << p.c << " local min at " << xs[i]);
            CHECK(std::abs(xs[i] - p.c / 2) <= spacing);
          }
        }
      }
    }
  }

  CHECK_THROWS_AS(SplitFunctionParams::make(3, pi / 3), DomainError);
  CHECK_THROWS_AS(SplitFunctionParams::make(3, 2 * pi / 3), DomainError);
  CHECK_THROWS_AS(h(params, params.c - pi / 3), DomainError);
  CHECK_THROWS_AS(h(params, pi / 3), DomainError);
}

TEST_CASE("equal-split margin phi") {
  CHECK(phi(3, 0.2) < 0.0);
  CHECK(phi(3, 0.3) > 0.0);
  CHECK(phi(3, 0.26) < 0.0);
  CHECK(phi(3, 0.261) > 0.0);
  CHECK(phi(3, 0.2) == Approx(oracle::phi(3, 0.2)).epsilon(1e-12));
  CHECK_THROWS_AS(phi(3, 0.0), DomainError);

  for (int n = 3; n <= 12; ++n) {
    const auto dom = domain(n);
    // phi vanishes like sqrt of the standoff: about 4e-4 at 1e-6.
    CHECK(phi(n, dom.hi - 1e-6) == Approx(0.0).margin(1e-3));
    CHECK(phi(n, dom.hi - 1e-9) == Approx(0.0).margin(1e-4));
    const double ratio_a = phi(n, dom.hi - 1e-6) / std::sqrt(1e-6);
    const double ratio_b = phi(n, dom.hi - 1e-8) / std::sqrt(1e-8);
    CHECK(ratio_b == Approx(ratio_a).epsilon(1e-2));
    CHECK(phi(n, 1e-12) < -5.0);

    // Inflection of g located independently from the g'' sign scan.
    const auto g2_cells = oracle::sign_changes([n](double x) { return g2(n, x); }, 1e-6, dom.hi - 1e-6, 10000);
    REQUIRE(g2_cells.size() == 1);
    const double step = (dom.hi - 2e-6) / 9999;
    const double inflection = 1e-6 + (g2_cells[0] + 1) * step;

    const auto phi_cells = oracle::sign_changes([n](double x) { return phi(n, x); }, 1e-6, dom.hi - 1e-6, 10000);
    REQUIRE(phi_cells.size() == 1);
    CHECK(1e-6 + phi_cells[0] * step < inflection);
    for (double x : interior_grid(inflection, dom.hi, 200)) CHECK(phi(n, x) > 0.0);
  }
}

TEST_CASE("concave split inequality") {
  const double a = pi / 3, b = pi;
  const auto f = [](double x) { return f_spherical(3, x); };
  CHECK(check_concave_split(f, a, b, (a + b) / 2, (a + b) / 2));
  CHECK_FALSE(check_concave_split(f, a, b, a, b));
  CHECK(check_concave_split([](double x) { return -x * x; }, -1, 1, 0, 0));
  CHECK_THROWS_AS(check_concave_split(f, a, b, a, a), ArgumentError);

  SECTION("random interior pairs for f_spherical") {
    std::mt19937_64 rng(99);
    for (int n : {3, 4, 6, 10}) {
      const double lo = euclidean_angle(n);
      std::uniform_real_distribution<double> u(lo, pi);
      auto fn = [n](double x) { return f_spherical(n, x); };
      for (int i = 0; i < 200; ++i) {
        double c = u(rng);
        if (c == lo) continue;
        const double d = lo + pi - c;
        CHECK(check_concave_split(fn, lo, pi, c, d));
      }
    }
  }
}
