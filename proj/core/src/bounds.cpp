#include "cheby/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace cheby::bounds {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct IdName {
  TheoremId id;
  std::string_view name;
};

constexpr IdName kIdNames[] = {
    {TheoremId::ChebSup, "cheb-sup"},
    {TheoremId::MonotoneSign, "monotone-sign"},
    {TheoremId::Barnett, "barnett"},
    {TheoremId::CeroneBV, "cerone-bv"},
    {TheoremId::CeroneLip, "cerone-lip"},
    {TheoremId::Hwang, "hwang"},
    {TheoremId::ConvexPairDeriv, "convex-pair-deriv"},
    {TheoremId::LipConvex, "lip-convex"},
    {TheoremId::BvConvex, "bv-convex"},
    {TheoremId::LpConvex, "lp-convex"},
    {TheoremId::ConvexSup, "convex-sup"},
    {TheoremId::Atkinson, "atkinson"},
    {TheoremId::Lupas, "lupas"},
    {TheoremId::ConvexUpper, "convex-upper"},
    {TheoremId::ConcaveLower, "concave-lower"},
};

// Derivative usable a.e. for norms/variation; empty when f has interior jumps
// (then it is neither Lipschitz nor absolutely continuous).
std::optional<Expr> continuous_derivative(const Expr& f, const Interval& iv) {
  if (!jump_points(f, iv).empty()) return std::nullopt;
  return f.derivative_ae();
}

}  // namespace

std::string_view to_string(TheoremId id) {
  for (const auto& [i, n] : kIdNames) {
    if (i == id) return n;
  }
  return "?";
}

std::optional<TheoremId> theorem_from_string(std::string_view name) {
  for (const auto& [i, n] : kIdNames) {
    if (n == name) return i;
  }
  return std::nullopt;
}

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> v;
    for (const auto& [i, n] : kIdNames) v.push_back(i);
    return v;
  }();
  return ids;
}

bool BoundResult::hypothesis_ok(std::string_view name) const {
  for (const auto& h : hypotheses) {
    if (h.name == name) return h.ok;
  }
  return false;
}

Verdict make_verdict(std::string case_id, double measured, double bound,
                     Direction direction, bool applicable) {
  Verdict v;
  v.case_id = std::move(case_id);
  v.measured = measured;
  v.bound = bound;
  v.direction = direction;
  if (!applicable || std::isnan(bound)) {
    v.slack = 0.0;
    v.status = CaseStatus::HypothesesNotMet;
    return v;
  }
  switch (direction) {
    case Direction::AbsLeq:
      v.slack = bound - std::fabs(measured);
      break;
    case Direction::Leq:
      v.slack = bound - measured;
      break;
    case Direction::Geq:
      v.slack = measured - bound;
      break;
  }
  v.status = (v.slack >= -kSlack) ? CaseStatus::Holds : CaseStatus::Violated;
  return v;
}

Verdict check_bound(std::string case_id, double measured,
                    const BoundResult& br) {
  return make_verdict(std::move(case_id), measured, br.value, br.direction,
                      br.applicable);
}

// ---------------------------------------------------------------------------

BoundResult cheb_derivative_bound(const FuncProfile& fp, const FuncProfile& gp,
                                  const Interval& iv) {
  BoundResult br;
  br.theorem = TheoremId::ChebSup;
  br.direction = Direction::AbsLeq;
  const bool have_f = fp.sup_norm_deriv.has_value();
  const bool have_g = gp.sup_norm_deriv.has_value();
  br.hypotheses = {{"||f'||oo available", have_f},
                   {"||g'||oo available", have_g}};
  br.applicable = have_f && have_g;
  if (br.applicable) {
    const double len = iv.length();
    br.value = len * len / 12.0 * (*fp.sup_norm_deriv) * (*gp.sup_norm_deriv);
  }
  return br;
}

Verdict monotone_sign_check(const FuncProfile& fp, const FuncProfile& gp,
                            double T) {
  const bool have = fp.monotone.has_value() && gp.monotone.has_value();
  if (!have || *fp.monotone == Monotonicity::No ||
      *gp.monotone == Monotonicity::No) {
    return make_verdict("", T, kNaN, Direction::Geq, false);
  }
  const bool same = *fp.monotone == *gp.monotone;
  return make_verdict("", T, 0.0, same ? Direction::Geq : Direction::Leq, true);
}

BoundResult barnett_mean_bound(const FuncProfile& fp, const Interval& outer,
                               const Interval& inner) {
  if (!outer.contains(inner) || !(inner.length() < outer.length())) {
    throw std::invalid_argument(
        "barnett_mean_bound: inner must be strictly shorter and contained");
  }
  BoundResult br;
  br.theorem = TheoremId::Barnett;
  br.direction = Direction::AbsLeq;
  const bool have = fp.sup_norm_deriv.has_value();
  br.hypotheses = {{"||f'||oo available", have}};
  br.applicable = have;
  if (have) {
    const double gap = outer.length() - inner.length();
    const double offset = (outer.midpoint() - inner.midpoint()) / gap;
    br.value = (0.25 + offset * offset) * gap * (*fp.sup_norm_deriv);
    br.secondary_value = 0.5 * gap * (*fp.sup_norm_deriv);
  }
  return br;
}

std::vector<BoundResult> cerone_dragomir_mean_bound(const FuncProfile& fp,
                                                    const Interval& outer,
                                                    const Interval& inner) {
  if (!outer.contains(inner) || !(inner.length() < outer.length())) {
    throw std::invalid_argument(
        "cerone_dragomir_mean_bound: inner must be strictly shorter and contained");
  }
  const double gap = outer.length() - inner.length();
  const double mid_offset = std::fabs(inner.midpoint() - outer.midpoint());

  BoundResult bv;
  bv.theorem = TheoremId::CeroneBV;
  bv.direction = Direction::AbsLeq;
  bv.hypotheses = {{"f of bounded variation", fp.total_variation.has_value()}};
  bv.applicable = fp.total_variation.has_value();
  if (bv.applicable) {
    bv.value = (0.5 * gap + mid_offset) * (*fp.total_variation) / outer.length();
  }

  BoundResult lip;
  lip.theorem = TheoremId::CeroneLip;
  lip.direction = Direction::AbsLeq;
  lip.hypotheses = {{"f Lipschitz", fp.lipschitz.has_value()}};
  lip.applicable = fp.lipschitz.has_value();
  if (lip.applicable) {
    const double ca = inner.a - outer.a;
    const double bd = outer.b - inner.b;
    lip.value = (*fp.lipschitz) * (ca * ca + bd * bd) / (2.0 * gap);
  }
  return {bv, lip};
}

HwangKernels hwang_kernels(const Interval& iv, double x, double y) {
  if (!(iv.a <= x && x < y && y <= iv.b)) {
    throw std::invalid_argument("hwang_kernels: requires a <= x < y <= b");
  }
  const double len = iv.length();
  const double slack_len = len - (y - x);
  if (!(slack_len > 0.0)) {
    throw std::invalid_argument("hwang_kernels: requires (b-a)-(y-x) > 0");
  }
  const double p = (x - iv.a) * (y - x) / slack_len;
  const double q = (y - x) * (iv.b - y) / slack_len;
  const double c = slack_len / (len * (y - x) * (y - x));
  const double xa = x - iv.a;
  const double by = iv.b - y;
  HwangKernels k;
  k.weight_x = 2.0 * xa * xa / len + c * (3.0 * q * p * p + 2.0 * p * p * p + q * q * q);
  k.weight_y = 2.0 * by * by / len + c * (p * p * p + 3.0 * p * q * q + 2.0 * q * q * q);
  return k;
}

BoundResult hwang_dragomir_bound(const Expr& f, const Interval& iv, double x,
                                 double y, double tol) {
  BoundResult br;
  br.theorem = TheoremId::Hwang;
  br.direction = Direction::AbsLeq;

  std::optional<Expr> d;
  try {
    d = f.derivative();
  } catch (const NonDifferentiableError&) {
  }
  const bool smooth = d.has_value() && jump_points(f, iv).empty();
  const bool convex = smooth && midpoint_convex(abs(*d), iv);
  br.hypotheses = {{"f absolutely continuous", smooth},
                   {"|f'| convex", convex}};
  br.applicable = convex;
  if (!smooth) return br;

  const HwangKernels k = hwang_kernels(iv, x, y);
  const double len = iv.length();
  const double xa = x - iv.a;
  const double by = iv.b - y;
  br.value = (xa * xa / len * std::fabs(d->eval(iv.a)) +
              k.weight_x * std::fabs(d->eval(x)) +
              k.weight_y * std::fabs(d->eval(y)) +
              by * by / len * std::fabs(d->eval(iv.b))) /
             6.0;
  (void)tol;
  return br;
}

EndpointProducts endpoint_products(const FuncProfile& fp,
                                   const FuncProfile& gp) {
  if (!fp.endpoint_deriv_a || !fp.endpoint_deriv_b || !gp.endpoint_deriv_a ||
      !gp.endpoint_deriv_b) {
    throw std::invalid_argument(
        "endpoint_products: endpoint derivative unavailable");
  }
  const double fa = std::fabs(*fp.endpoint_deriv_a);
  const double fb = std::fabs(*fp.endpoint_deriv_b);
  const double ga = std::fabs(*gp.endpoint_deriv_a);
  const double gb = std::fabs(*gp.endpoint_deriv_b);
  return {fa * ga + fb * gb, fb * ga + fa * gb};
}

// ---------------------------------------------------------------------------

namespace {

struct DerivData {
  bool smooth = false;   // differentiable with no interior jumps
  bool abs_convex = false;
  double at_a = kNaN;
  double at_b = kNaN;
  std::optional<Expr> d;
};

DerivData deriv_data(const Expr& f, const Interval& iv) {
  DerivData out;
  std::optional<Expr> d;
  try {
    d = f.derivative();
  } catch (const NonDifferentiableError&) {
    return out;
  }
  if (!jump_points(f, iv).empty()) return out;
  out.smooth = true;
  out.d = d;
  out.abs_convex = midpoint_convex(abs(*d), iv);
  try {
    out.at_a = d->eval(iv.a);
    out.at_b = d->eval(iv.b);
  } catch (const DomainError&) {
    out.smooth = false;
  }
  return out;
}

double max_abs_endpoint(const DerivData& dd) {
  return std::max(std::fabs(dd.at_a), std::fabs(dd.at_b));
}

}  // namespace

BoundResult convex_pair_deriv_bound(const Expr& f, const Expr& g,
                                    const Interval& iv, double tol) {
  (void)tol;
  BoundResult br;
  br.theorem = TheoremId::ConvexPairDeriv;
  br.direction = Direction::AbsLeq;
  const DerivData df = deriv_data(f, iv);
  const DerivData dg = deriv_data(g, iv);
  br.hypotheses = {{"f absolutely continuous", df.smooth},
                   {"g absolutely continuous", dg.smooth},
                   {"|f'| convex", df.abs_convex},
                   {"|g'| convex", dg.abs_convex}};
  br.applicable = df.abs_convex && dg.abs_convex;
  if (df.smooth && dg.smooth) {
    const double fa = std::fabs(df.at_a), fb = std::fabs(df.at_b);
    const double ga = std::fabs(dg.at_a), gb = std::fabs(dg.at_b);
    const double same = fa * ga + fb * gb;
    const double crossed = fb * ga + fa * gb;
    const double len2 = iv.length() * iv.length();
    br.value = len2 / 48.0 * (same + crossed + std::fabs(same - crossed));
    br.secondary_value =
        len2 / 12.0 * std::max(ga, gb) * std::max(fa, fb);
  }
  return br;
}

BoundResult lipschitz_convex_bound(const Expr& f, const Expr& g,
                                   const Interval& iv, double tol) {
  BoundResult br;
  br.theorem = TheoremId::LipConvex;
  br.direction = Direction::AbsLeq;

  const std::optional<Expr> fd = continuous_derivative(f, iv);
  const DerivData dg = deriv_data(g, iv);
  br.hypotheses = {{"f Lipschitz", fd.has_value()},
                   {"|g'| convex", dg.abs_convex}};
  br.applicable = fd.has_value() && dg.abs_convex;
  if (fd && dg.smooth) {
    const double lip = lp_norm(*fd, iv, kInf, tol);
    const double len2 = iv.length() * iv.length();
    const double ga = std::fabs(dg.at_a), gb = std::fabs(dg.at_b);
    br.value = lip * len2 / 24.0 * (ga + gb);
    br.secondary_value = lip * len2 / 12.0 * std::max(ga, gb);
  }
  return br;
}

BoundResult variation_convex_bound(const Expr& f, const Expr& g,
                                   const Interval& iv, double tol) {
  BoundResult br;
  br.theorem = TheoremId::BvConvex;
  br.direction = Direction::AbsLeq;

  std::optional<double> tv;
  try {
    tv = total_variation(f, iv, tol);
  } catch (const std::exception&) {
  }
  const DerivData dg = deriv_data(g, iv);
  br.hypotheses = {{"f of bounded variation", tv.has_value()},
                   {"|g'| convex", dg.abs_convex}};
  br.applicable = tv.has_value() && dg.abs_convex;
  if (tv && dg.smooth) {
    const double len = iv.length();
    const double ga = std::fabs(dg.at_a), gb = std::fabs(dg.at_b);
    br.value = len / 16.0 * (ga + gb) * (*tv);
    br.secondary_value = len / 8.0 * std::max(ga, gb) * (*tv);
  }
  return br;
}

double holder_sharp_constant(double beta) {
  if (!(beta > 0.0)) {
    throw std::invalid_argument("holder_sharp_constant: requires beta > 0");
  }
  return 0.5 * std::pow(beta_function(beta + 1.0, beta + 1.0), 1.0 / beta);
}

BoundResult lp_convex_bound(const Expr& f, const Expr& g, const Interval& iv,
                            double alpha, double tol) {
  if (!(alpha >= 1.0)) {
    throw std::invalid_argument("lp_convex_bound: requires alpha >= 1");
  }
  BoundResult br;
  br.theorem = TheoremId::LpConvex;
  br.direction = Direction::AbsLeq;

  const std::optional<Expr> fd = continuous_derivative(f, iv);
  const DerivData dg = deriv_data(g, iv);
  br.hypotheses = {{"f' in L_alpha", fd.has_value()},
                   {"|g'| convex", dg.abs_convex}};
  br.applicable = fd.has_value() && dg.abs_convex;
  if (fd && dg.smooth) {
    const double len = iv.length();
    const double maxg = std::max(std::fabs(dg.at_a), std::fabs(dg.at_b));
    const double norm = lp_norm(*fd, iv, alpha, tol);
    if (alpha == 1.0) {
      br.value = len / 8.0 * maxg * norm;
    } else if (alpha == kInf) {
      br.value = len * len / 12.0 * maxg * norm;
    } else {
      const double beta = alpha / (alpha - 1.0);
      br.value = std::pow(len, 1.0 + 1.0 / beta) *
                 holder_sharp_constant(beta) * maxg * norm;
    }
  }
  return br;
}

BoundResult convex_sup_bound(const Expr& f, const Expr& g, const Interval& iv,
                             double tol) {
  BoundResult br;
  br.theorem = TheoremId::ConvexSup;
  br.direction = Direction::AbsLeq;

  const DerivData df = deriv_data(f, iv);
  const std::optional<Expr> gd = continuous_derivative(g, iv);
  br.hypotheses = {{"|f'| convex", df.abs_convex},
                   {"||g'||oo available", gd.has_value()}};
  br.applicable = df.abs_convex && gd.has_value();
  if (df.smooth && gd) {
    const double len = iv.length();
    br.value = len * len / 12.0 * lp_norm(*gd, iv, kInf, tol) *
               max_abs_endpoint(df);
  }
  return br;
}

// ---------------------------------------------------------------------------

BoundResult convex_pair_upper(const Expr& f, const Expr& g, const Interval& iv,
                              double tol) {
  (void)tol;
  BoundResult br;
  br.theorem = TheoremId::ConvexUpper;
  br.direction = Direction::Leq;
  const bool fc = midpoint_convex(f, iv);
  const bool gc = midpoint_convex(g, iv);
  br.hypotheses = {{"f convex", fc}, {"g convex", gc}};
  br.applicable = fc && gc;
  br.value = (f.eval(iv.b) - f.eval(iv.a)) * (g.eval(iv.b) - g.eval(iv.a)) / 12.0;
  return br;
}

BoundResult concave_pair_lower(const Expr& f, const Expr& g,
                               const Interval& iv, double tol) {
  (void)tol;
  BoundResult br;
  br.theorem = TheoremId::ConcaveLower;
  br.direction = Direction::Geq;
  const bool fc = midpoint_convex(-f, iv);
  const bool gc = midpoint_convex(-g, iv);
  br.hypotheses = {{"f concave", fc}, {"g concave", gc}};
  br.applicable = fc && gc;
  br.value = (f.eval(iv.b) - f.eval(iv.a)) * (g.eval(iv.b) - g.eval(iv.a)) / 12.0;
  return br;
}

namespace {

double centered_first_moment(const Expr& u, const Interval& iv, double tol) {
  const Expr weight = Expr::variable() - Expr::constant(iv.midpoint());
  return integrate(weight * u, iv, tol).value;
}

}  // namespace

BoundResult lupas_lower(const Expr& f, const Expr& g, const Interval& iv,
                        double tol) {
  BoundResult br;
  br.theorem = TheoremId::Lupas;
  br.direction = Direction::Geq;
  const bool fc = midpoint_convex(f, iv);
  const bool gc = midpoint_convex(g, iv);
  br.hypotheses = {{"f convex", fc}, {"g convex", gc}};
  br.applicable = fc && gc;
  // the moment product scales as len^4 under dilation while the functional is
  // invariant, and equality for a linear factor pins the prefactor
  const double len = iv.length();
  br.value = 12.0 / (len * len * len * len) *
             centered_first_moment(f, iv, tol) *
             centered_first_moment(g, iv, tol);
  return br;
}

Verdict atkinson_check(const Expr& f, const Expr& g, const Interval& iv,
                       double tol) {
  const bool fc = midpoint_convex(f, iv);
  const bool gc = midpoint_convex(g, iv);
  if (!fc || !gc) {
    return make_verdict("", kNaN, kNaN, Direction::Geq, false);
  }
  const double m = centered_first_moment(g, iv, tol);
  if (std::fabs(m) > 1e-8) {
    return make_verdict("", kNaN, kNaN, Direction::Geq, false);
  }
  const double T = chebyshev_T(f, g, iv, tol);
  return make_verdict("", T, 0.0, Direction::Geq, true);
}

}  // namespace cheby::bounds
