#include <cmath>

#include <doctest.h>

#include "cheby/calculus.hpp"
#include "cheby/expr.hpp"

using cheby::Expr;
using cheby::Interval;
using cheby::kInf;

namespace {
const Interval kUnit(0.0, 1.0);
const Expr kX = Expr::variable();
}  // namespace

TEST_CASE("integrate: polynomial and step oracles") {
  auto r1 = cheby::integrate(kX, kUnit, 1e-10);
  CHECK(r1.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r1.err_estimate >= 0.0);

  auto r2 = cheby::integrate(kX * kX, kUnit, 1e-10);
  CHECK(r2.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  // signed step times x^2/2: antiderivative per piece gives 7/48 - 1/48
  const Expr step = cheby::parse("piecewise{[0,0.5]:-1;[0.5,1]:1}");
  auto r3 = cheby::integrate(step * (kX * kX / 2.0), kUnit, 1e-10);
  CHECK(r3.value == doctest::Approx(0.125).epsilon(1e-11));
}

TEST_CASE("integrate: kinks are split, oscillation converges") {
  auto kink = cheby::integrate(cheby::parse("abs(x-0.5)"), kUnit, 1e-12);
  CHECK(kink.value == doctest::Approx(0.25).epsilon(1e-13));

  auto osc = cheby::integrate(cheby::parse("sin(40*x)"), Interval(0.0, M_PI), 1e-10);
  CHECK(osc.value == doctest::Approx((1.0 - std::cos(40.0 * M_PI)) / 40.0).epsilon(1e-9));
}

TEST_CASE("integrate: unreachable tolerance carries best estimate") {
  // integrable but singular at 0; absurd tolerance exhausts the budget
  const Expr f = cheby::parse("x^-0.9");
  try {
    cheby::integrate(f, Interval(0.0, 1.0), 1e-14);
    FAIL("expected QuadratureError");
  } catch (const cheby::QuadratureError& e) {
    CHECK(e.best.value > 0.0);
    CHECK(e.best.subdivisions > 0);
  }
}

TEST_CASE("chebyshev_T: known values") {
  CHECK(cheby::chebyshev_T(kX, kX, kUnit) == doctest::Approx(1.0 / 12.0).epsilon(1e-11));
  const Expr f = cheby::parse("x^2/6");
  CHECK(cheby::chebyshev_T(f, kX, kUnit) == doctest::Approx(1.0 / 72.0).epsilon(1e-11));
  CHECK(cheby::chebyshev_T(Expr::constant(3.5), kX * kX, kUnit) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("chebyshev_T: symmetry and shift invariance") {
  const Expr f = cheby::parse("exp(x)-x^2");
  const Expr g = cheby::parse("sin(2*x)+x");
  const Interval iv(-0.5, 1.5);
  const double tfg = cheby::chebyshev_T(f, g, iv);
  const double tgf = cheby::chebyshev_T(g, f, iv);
  CHECK(tfg == doctest::Approx(tgf).epsilon(1e-10));
  const double shifted = cheby::chebyshev_T(f + 17.0, g, iv);
  CHECK(shifted == doctest::Approx(tfg).epsilon(1e-9));
}

TEST_CASE("chebyshev_T_by_parts cross-checks the direct route") {
  const Expr f = cheby::parse("x^3 - x");
  const Expr g = cheby::parse("exp(x/2)");
  const Interval iv(0.0, 2.0);
  CHECK(cheby::chebyshev_T_by_parts(f, g, iv) ==
        doctest::Approx(cheby::chebyshev_T(f, g, iv)).epsilon(1e-8));

  CHECK(cheby::chebyshev_T_by_parts(kX, kX, kUnit) ==
        doctest::Approx(1.0 / 12.0).epsilon(1e-9));
}

TEST_CASE("mean_difference") {
  CHECK(cheby::mean_difference(kX, kUnit, Interval(0.0, 0.5)) ==
        doctest::Approx(0.25).epsilon(1e-11));
  CHECK(cheby::mean_difference(Expr::constant(2.0), kUnit, Interval(0.2, 0.7)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cheby::mean_difference(kX * kX, kUnit, Interval(0.25, 0.75)) ==
        doctest::Approx(1.0 / 3.0 - 13.0 / 48.0).epsilon(1e-11));

  CHECK_THROWS_AS(cheby::mean_difference(kX, kUnit, Interval(0.5, 1.5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(cheby::mean_difference(kX, kUnit, Interval(0.0, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("lp_norm") {
  CHECK(cheby::lp_norm(Expr::constant(1.0), kUnit, kInf) == doctest::Approx(1.0));
  CHECK(cheby::lp_norm(kX, kUnit, 2.0) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-11));
  CHECK(cheby::lp_norm(2.0 * kX / 3.0, kUnit, kInf) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK_THROWS_AS(cheby::lp_norm(kX, kUnit, 0.5), std::invalid_argument);

  // sup of an interior peak is found by the mesh + golden refinement
  const Expr peak = cheby::parse("x*(1-x)");
  CHECK(cheby::lp_norm(peak, kUnit, kInf) == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("lp_norm is monotone in p under the probability measure") {
  const double ps[] = {1.0, 2.0, 4.0, 8.0, kInf};
  for (const Expr& f : {cheby::parse("x"), cheby::parse("abs(x-0.3)"),
                        cheby::parse("exp(x)-1")}) {
    double prev = -1.0;
    for (double p : ps) {
      // on [0,1] the probability scaling is the identity
      const double v = cheby::lp_norm(f, kUnit, p);
      CHECK(v >= prev - 1e-9);
      prev = v;
    }
  }
}

TEST_CASE("total_variation") {
  const Expr step = cheby::parse("piecewise{[0,0.5]:-1;[0.5,1]:1}");
  CHECK(cheby::total_variation(step, kUnit) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(cheby::total_variation(kX, kUnit) == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(cheby::total_variation(cheby::parse("abs(x-0.5)"), kUnit) ==
        doctest::Approx(1.0).epsilon(1e-11));
  // sign node inside a product still gets its jump counted
  CHECK(cheby::total_variation(kX * cheby::sgn(kX - 0.5), kUnit) ==
        doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("total_variation dominates the endpoint difference") {
  for (const Expr& f : {cheby::parse("sin(3*x)"), cheby::parse("x^2-x"),
                        cheby::parse("piecewise{[0,0.3]:2;[0.3,1]:-1}")}) {
    const double tv = cheby::total_variation(f, kUnit);
    CHECK(tv >= std::fabs(f.eval(1.0) - f.eval(0.0)) - 1e-10);
  }
}

TEST_CASE("jump_points finds steps and ignores kinks") {
  const Expr step = cheby::parse("piecewise{[0,0.5]:-1;[0.5,1]:1}");
  auto jumps = cheby::jump_points(step, kUnit);
  REQUIRE(jumps.size() == 1);
  CHECK(jumps[0].first == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(jumps[0].second == doctest::Approx(2.0).epsilon(1e-9));

  CHECK(cheby::jump_points(cheby::parse("abs(x-0.5)"), kUnit).empty());
}

TEST_CASE("midpoint_convex") {
  CHECK(cheby::midpoint_convex(kX * kX, kUnit));
  CHECK(cheby::midpoint_convex(cheby::parse("abs(x-0.5)"), kUnit));
  CHECK_FALSE(cheby::midpoint_convex(-(kX * kX), kUnit));
  CHECK(cheby::midpoint_convex(kX, kUnit));  // linear is (weakly) convex
}

TEST_CASE("monotonicity") {
  CHECK(cheby::monotonicity(kX, kUnit) == cheby::Monotonicity::Increasing);
  CHECK(cheby::monotonicity(-kX, kUnit) == cheby::Monotonicity::Decreasing);
  CHECK(cheby::monotonicity(cheby::parse("abs(x-0.5)"), kUnit) ==
        cheby::Monotonicity::No);
  // steps use value differences
  CHECK(cheby::monotonicity(cheby::parse("piecewise{[0,0.5]:-1;[0.5,1]:1}"), kUnit) ==
        cheby::Monotonicity::Increasing);
  CHECK(cheby::monotonicity(cheby::parse("piecewise{[0,0.5]:1;[0.5,1]:-1}"), kUnit) ==
        cheby::Monotonicity::Decreasing);
}

TEST_CASE("profile: smooth quadratic") {
  const auto pr = cheby::profile(cheby::parse("x^2/6"), kUnit);
  REQUIRE(pr.endpoint_deriv_a.has_value());
  CHECK(*pr.endpoint_deriv_a == doctest::Approx(0.0));
  CHECK(*pr.endpoint_deriv_b == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(*pr.deriv_abs_convex);
  CHECK(*pr.sup_norm_deriv == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(*pr.sup_norm_deriv >=
        std::max(std::fabs(*pr.endpoint_deriv_a), std::fabs(*pr.endpoint_deriv_b)) - 1e-12);
}

TEST_CASE("profile: linear") {
  const auto pr = cheby::profile(kX, kUnit);
  CHECK(*pr.lipschitz == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(*pr.total_variation == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(*pr.monotone == cheby::Monotonicity::Increasing);
  CHECK(*pr.lp_norm_deriv(2.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("profile: endpoint derivatives of x^2/2") {
  const auto pr = cheby::profile(cheby::parse("x^2/2"), kUnit);
  CHECK(*pr.endpoint_deriv_a == doctest::Approx(0.0));
  CHECK(*pr.endpoint_deriv_b == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("profile: step function has no derivative data but keeps variation") {
  const auto pr = cheby::profile(cheby::parse("piecewise{[0,0.5]:-1;[0.5,1]:1}"), kUnit);
  CHECK_FALSE(pr.endpoint_deriv_a.has_value());
  CHECK_FALSE(pr.sup_norm_deriv.has_value());
  CHECK_FALSE(pr.lipschitz.has_value());
  CHECK_FALSE(pr.deriv_abs_convex.has_value());
  REQUIRE(pr.total_variation.has_value());
  CHECK(*pr.total_variation == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(*pr.monotone == cheby::Monotonicity::Increasing);
}

TEST_CASE("beta function") {
  CHECK(cheby::beta_function(2.0, 2.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(cheby::beta_function(3.0, 3.0) == doctest::Approx(1.0 / 30.0).epsilon(1e-13));
  CHECK(cheby::beta_function(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cheby::beta_function(0.5, 0.5) == doctest::Approx(M_PI).epsilon(1e-13));
  CHECK_THROWS_AS(cheby::beta_function(-1.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(cheby::beta_function(0.0, 2.0), std::invalid_argument);

  for (double x : {0.5, 1.0, 2.5, 10.0}) {
    CHECK(cheby::beta_function(x, 1.0) == doctest::Approx(1.0 / x).epsilon(1e-12));
    for (double y : {0.7, 3.0, 41.5}) {
      CHECK(cheby::beta_function(x, y) ==
            doctest::Approx(cheby::beta_function(y, x)).epsilon(1e-13));
    }
  }
}

TEST_CASE("log_gamma matches the standard library") {
  for (double z = 0.1; z <= 201.0; z += 0.7) {
    CHECK(cheby::log_gamma(z) == doctest::Approx(std::lgamma(z)).epsilon(1e-13));
  }
}
