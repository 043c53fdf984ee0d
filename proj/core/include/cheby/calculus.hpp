#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cheby/expr.hpp"

namespace cheby {

/// Default absolute quadrature tolerance.
inline constexpr double kDefaultTol = 1e-10;

/// Slack used by every bound comparison; three decades above the quadrature
/// tolerance so inequality checks never trip on integration error.
inline constexpr double kSlack = 1e-7;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;  // absolute
  int subdivisions = 0;
};

/// Requested tolerance was unreachable within the subdivision budget.
/// Carries the best estimate obtained.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadResult best_)
      : std::runtime_error(what), best(best_) {}
  QuadResult best;
};

/// Adaptive Gauss-Kronrod (7-15 pair) integration with panel bisection.
/// Panels are pre-split at the supplied breakpoints so kinks and jumps never
/// straddle a panel.
QuadResult integrate(const std::function<double(double)>& f, const Interval& iv,
                     double tol, std::span<const double> breakpoints = {});

/// Expr overload; splits at the expression's own breakpoints.
QuadResult integrate(const Expr& f, const Interval& iv,
                     double tol = kDefaultTol);

/// Mean of the product minus the product of the means over `iv`.
/// Each of the three integrals runs at tol/4.
double chebyshev_T(const Expr& f, const Expr& g, const Interval& iv,
                   double tol = kDefaultTol);

/// Same functional through the integration-by-parts route
///   (b-a)^-2 * Int [ (t-a) Int g  -  (b-a) Int_a^t g ] f'(t) dt,
/// an independent cross-check of the direct evaluation.  Requires f
/// differentiable.
double chebyshev_T_by_parts(const Expr& f, const Expr& g, const Interval& iv,
                            double tol = kDefaultTol);

/// Difference of the integral means of f over `outer` and `inner`.
/// `inner` must be contained in and strictly shorter than `outer`.
double mean_difference(const Expr& f, const Interval& outer,
                       const Interval& inner, double tol = kDefaultTol);

/// (Int |f|^p)^(1/p) for finite p >= 1; for p = infinity, the sup of |f| over
/// the interval, estimated from a 1025-point mesh refined by golden-section
/// around the best samples plus exact checks at breakpoints and endpoints.
double lp_norm(const Expr& f, const Interval& iv, double p,
               double tol = kDefaultTol);

/// Total variation of a piecewise-C1 function with finitely many jumps:
/// the integral of |f'| over smooth pieces plus the sum of jump heights.
double total_variation(const Expr& f, const Interval& iv,
                       double tol = kDefaultTol);

/// Interior discontinuities of f detected at its breakpoints, as
/// (location, signed jump height) pairs.  Heights below 1e-7 are treated as
/// continuity and dropped.
std::vector<std::pair<double, double>> jump_points(const Expr& f,
                                                   const Interval& iv);

/// Midpoint-convexity verdict on a 65-point mesh (plus the expression's own
/// breakpoints), with additive slack.  Continuous midpoint-convex functions
/// are convex; the mesh test is a falsifiable numeric proxy for that.
bool midpoint_convex(const Expr& h, const Interval& iv, double slack = 1e-9);

enum class Monotonicity { Increasing, Decreasing, No };

/// Monotonicity verdict: sign-constancy of f' on a 1025-point mesh plus
/// breakpoint neighbourhoods; falls back to sign-constancy of successive
/// value differences when f has jumps or a non-differentiable node.
/// Constant functions report Increasing (weakly).
Monotonicity monotonicity(const Expr& f, const Interval& iv);

/// Derived scalar data of a function on an interval.  Derivative-dependent
/// fields are left empty when the function has interior jumps or a
/// non-differentiable node.
struct FuncProfile {
  std::optional<double> endpoint_deriv_a;  // f'(a)
  std::optional<double> endpoint_deriv_b;  // f'(b)
  std::optional<double> sup_norm_deriv;    // ess sup |f'|
  std::optional<double> total_variation;
  std::optional<double> lipschitz;         // = sup |f'| for C1 pieces
  std::optional<bool> deriv_abs_convex;
  std::optional<Monotonicity> monotone;
  std::optional<Expr> deriv;

  Interval domain{0.0, 1.0};
  double tol = kDefaultTol;

  /// ||f'||_p on the profiled interval, computed on demand.
  std::optional<double> lp_norm_deriv(double p) const;
};

FuncProfile profile(const Expr& f, const Interval& iv,
                    double tol = kDefaultTol);

/// Natural log of the Gamma function for z > 0 (Lanczos approximation).
double log_gamma(double z);

/// Euler Beta function B(x,y) = Gamma(x)Gamma(y)/Gamma(x+y), computed as
/// exp(lnG(x) + lnG(y) - lnG(x+y)).  Arguments must be positive.
double beta_function(double x, double y);

}  // namespace cheby
