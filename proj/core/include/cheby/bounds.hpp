#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cheby/calculus.hpp"
#include "cheby/expr.hpp"

namespace cheby::bounds {

enum class TheoremId {
  ChebSup,          // |T| <= (b-a)^2/12 ||f'||oo ||g'||oo
  MonotoneSign,     // sign of T for monotone pairs
  Barnett,          // mean-difference bound from ||f'||oo
  CeroneBV,         // mean-difference bound from total variation
  CeroneLip,        // mean-difference bound from a Lipschitz constant
  Hwang,            // mean-difference bound for convex |f'| (kernel form)
  ConvexPairDeriv,  // |f'|,|g'| convex: endpoint-derivative products
  LipConvex,        // f Lipschitz, |g'| convex
  BvConvex,         // f of bounded variation, |g'| convex
  LpConvex,         // f' in L_alpha, |g'| convex (Beta-function constant)
  ConvexSup,        // |f'| convex, g' bounded
  Atkinson,         // T >= 0 for convex pair with centered g
  Lupas,            // lower bound from first moments, convex pair
  ConvexUpper,      // signed upper bound for convex pairs
  ConcaveLower,     // signed lower bound for concave pairs
};

std::string_view to_string(TheoremId id);
std::optional<TheoremId> theorem_from_string(std::string_view name);

/// List of every theorem id, in catalog order.
const std::vector<TheoremId>& all_theorems();

/// Comparison direction a bound asserts against the measured quantity.
enum class Direction { AbsLeq, Leq, Geq };

struct Hypothesis {
  std::string name;
  bool ok;
};

/// One bound evaluation: the value (and the coarser chained value when the
/// theorem has two levels), the hypothesis checklist, and whether all
/// hypotheses passed.  Bounds stay computable with applicable=false whenever
/// the required data exists, so callers can show what a bound would be.
struct BoundResult {
  TheoremId theorem;
  Direction direction = Direction::AbsLeq;
  double value = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> secondary_value;
  std::vector<Hypothesis> hypotheses;
  bool applicable = false;

  bool hypothesis_ok(std::string_view name) const;
};

enum class CaseStatus { Holds, Violated, HypothesesNotMet };

/// Outcome of checking one bound against the measured functional value.
/// `measured` is T(f,g) for functional bounds and the integral-mean
/// difference for the mean-difference family.
struct Verdict {
  std::string case_id;
  double measured = 0.0;
  double bound = std::numeric_limits<double>::quiet_NaN();
  Direction direction = Direction::AbsLeq;
  double slack = 0.0;
  CaseStatus status = CaseStatus::HypothesesNotMet;
};

/// Directed comparison with kSlack tolerance.
Verdict make_verdict(std::string case_id, double measured, double bound,
                     Direction direction, bool applicable);

/// Verdict for a bound result's first-level value.
Verdict check_bound(std::string case_id, double measured,
                    const BoundResult& br);

// --- classical estimates ----------------------------------------------------

/// |T(f,g)| <= (b-a)^2/12 ||f'||oo ||g'||oo.
BoundResult cheb_derivative_bound(const FuncProfile& fp, const FuncProfile& gp,
                                  const Interval& iv);

/// Monotone pairs: same sense forces T >= 0, opposite sense T <= 0.
Verdict monotone_sign_check(const FuncProfile& fp, const FuncProfile& gp,
                            double T);

/// Two-level bound on |mean over [a,b] - mean over [c,d]| via ||f'||oo.
BoundResult barnett_mean_bound(const FuncProfile& fp, const Interval& outer,
                               const Interval& inner);

/// Mean-difference bounds via total variation and via a Lipschitz constant;
/// one entry per branch, in that order.
std::vector<BoundResult> cerone_dragomir_mean_bound(const FuncProfile& fp,
                                                    const Interval& outer,
                                                    const Interval& inner);

/// Interior weights of the convex-|f'| mean-difference bound.
struct HwangKernels {
  double weight_x;
  double weight_y;
};

/// Kernel weights for the subinterval [x,y] of [a,b].  Requires
/// a <= x < y <= b with (b-a)-(y-x) > 0.
HwangKernels hwang_kernels(const Interval& iv, double x, double y);

/// |mean over [a,b] - mean over [x,y]| bound for convex |f'|:
///   (1/6) [ (x-a)^2/(b-a) |f'(a)| + I |f'(x)| + J |f'(y)| + (b-y)^2/(b-a) |f'(b)| ].
BoundResult hwang_dragomir_bound(const Expr& f, const Interval& iv, double x,
                                 double y, double tol = kDefaultTol);

/// Endpoint derivative products: same-endpoint and crossed sums.
struct EndpointProducts {
  double same;     // |f'(a)||g'(a)| + |f'(b)||g'(b)|
  double crossed;  // |f'(b)||g'(a)| + |f'(a)||g'(b)|
};

/// Throws std::invalid_argument when an endpoint derivative is unavailable.
EndpointProducts endpoint_products(const FuncProfile& fp,
                                   const FuncProfile& gp);

// --- convex-derivative catalog ----------------------------------------------

/// Both |f'| and |g'| convex:
///   |T| <= (b-a)^2/48 [M + N + |M-N|]  <=  (b-a)^2/12 max|g'| max|f'|
/// with M, N the endpoint products and the maxima over the endpoints.
BoundResult convex_pair_deriv_bound(const Expr& f, const Expr& g,
                                    const Interval& iv,
                                    double tol = kDefaultTol);

/// f Lipschitz with constant L = sup|f'|, |g'| convex:
///   |T| <= L (b-a)^2/24 [|g'(a)|+|g'(b)|]  <=  L (b-a)^2/12 max|g'|.
BoundResult lipschitz_convex_bound(const Expr& f, const Expr& g,
                                   const Interval& iv,
                                   double tol = kDefaultTol);

/// f of bounded variation, |g'| convex:
///   |T| <= (b-a)/16 [|g'(a)|+|g'(b)|] V  <=  (b-a)/8 max|g'| V.
BoundResult variation_convex_bound(const Expr& f, const Expr& g,
                                   const Interval& iv,
                                   double tol = kDefaultTol);

/// Sharp constant h(beta) = (1/2) B(beta+1, beta+1)^(1/beta) of the
/// Hoelder-conjugate bound.  Requires beta > 0.
double holder_sharp_constant(double beta);

/// f' in L_alpha, |g'| convex.  For alpha in (1, inf) with conjugate beta:
///   |T| <= (b-a)^(1+1/beta) h(beta) max|g'| ||f'||_alpha;
/// alpha = 1 and alpha = inf route to the closed forms with constants
/// (b-a)/8 and (b-a)^2/12.
BoundResult lp_convex_bound(const Expr& f, const Expr& g, const Interval& iv,
                            double alpha, double tol = kDefaultTol);

/// |f'| convex, g' bounded: |T| <= (b-a)^2/12 ||g'||oo max|f'|.
BoundResult convex_sup_bound(const Expr& f, const Expr& g, const Interval& iv,
                             double tol = kDefaultTol);

// --- convex / concave pairs ---------------------------------------------------

/// Convex f, g:  T <= (1/12)(f(b)-f(a))(g(b)-g(a))  (signed).
BoundResult convex_pair_upper(const Expr& f, const Expr& g, const Interval& iv,
                              double tol = kDefaultTol);

/// Concave f, g:  T >= (1/12)(f(b)-f(a))(g(b)-g(a))  (signed).
BoundResult concave_pair_lower(const Expr& f, const Expr& g,
                               const Interval& iv, double tol = kDefaultTol);

/// Convex f, g:  T >= 12/(b-a)^3 * m1(f) * m1(g) with the centered first
/// moments m1(u) = Int (t - (a+b)/2) u(t) dt.  Equality when either factor
/// is linear.
BoundResult lupas_lower(const Expr& f, const Expr& g, const Interval& iv,
                        double tol = kDefaultTol);

/// Convex f, g with centered g (m1(g) = 0): asserts T >= 0.
Verdict atkinson_check(const Expr& f, const Expr& g, const Interval& iv,
                       double tol = kDefaultTol);

}  // namespace cheby::bounds
