#include "cheby/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace cheby {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1,1].
// Even indices of x_gk carry the added Kronrod abscissae; odd indices (and
// the centre) are the Gauss-7 nodes, paired with w_g.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  double value;
  double err;
  double floor;  // roundoff floor, 50 eps * Int |f| over the segment
};

struct SegmentWorse {
  bool operator()(const Segment& l, const Segment& r) const {
    return l.err < r.err;
  }
};

// One Gauss-Kronrod 7-15 panel with the classic QUADPACK error estimate.
Segment gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  const double fc = f(c);
  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  double resabs = kWgk[7] * std::fabs(fc);

  double fv[7][2];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    fv[j][0] = f(c - dx);
    fv[j][1] = f(c + dx);
    const double fsum = fv[j][0] + fv[j][1];
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::fabs(fv[j][0]) + std::fabs(fv[j][1]));
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }

  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc +=
        kWgk[j] * (std::fabs(fv[j][0] - reskh) + std::fabs(fv[j][1] - reskh));
  }
  resasc *= std::fabs(h);

  double err = std::fabs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double floor = 50.0 * eps * resabs * std::fabs(h);
  err = std::max(err, floor);

  return {a, b, resk * h, err, floor};
}

std::vector<double> clean_breaks(const Interval& iv,
                                 std::span<const double> raw) {
  std::vector<double> pts(raw.begin(), raw.end());
  std::sort(pts.begin(), pts.end());
  const double eps = 1e-12 * iv.length();
  std::vector<double> out;
  for (double t : pts) {
    if (t <= iv.a + eps || t >= iv.b - eps) continue;
    if (!out.empty() && t - out.back() <= eps) continue;
    out.push_back(t);
  }
  return out;
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, const Interval& iv,
                     double tol, std::span<const double> breakpoints) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: tol must be > 0");

  std::priority_queue<Segment, std::vector<Segment>, SegmentWorse> queue;
  double total_value = 0.0;
  double total_err = 0.0;
  double total_floor = 0.0;

  const std::vector<double> pts = clean_breaks(iv, breakpoints);
  double lo = iv.a;
  for (std::size_t i = 0; i <= pts.size(); ++i) {
    const double hi = (i == pts.size()) ? iv.b : pts[i];
    Segment s = gk15(f, lo, hi);
    total_value += s.value;
    total_err += s.err;
    total_floor += s.floor;
    queue.push(s);
    lo = hi;
  }

  constexpr int kMaxSubdivisions = 4000;
  int splits = 0;
  const double min_width = 1e-15 * iv.length();

  // refine until the requested tolerance or the roundoff floor of the
  // integrand's magnitude, whichever is larger
  while (total_err > tol && total_err > 1.05 * total_floor) {
    if (splits >= kMaxSubdivisions || queue.top().b - queue.top().a < min_width) {
      throw QuadratureError("integrate: tolerance unreachable within budget",
                            {total_value, total_err, splits});
    }
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = gk15(f, worst.a, mid);
    Segment right = gk15(f, mid, worst.b);
    total_value += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    total_floor += left.floor + right.floor - worst.floor;
    queue.push(left);
    queue.push(right);
    ++splits;
  }

  return {total_value, total_err, splits};
}

QuadResult integrate(const Expr& f, const Interval& iv, double tol) {
  const std::vector<double> pts = f.breakpoints(iv);
  return integrate([&f](double t) { return f.eval(t); }, iv, tol, pts);
}

double chebyshev_T(const Expr& f, const Expr& g, const Interval& iv,
                   double tol) {
  const double len = iv.length();
  const double ifg = integrate(f * g, iv, tol / 4).value;
  const double iff = integrate(f, iv, tol / 4).value;
  const double ig = integrate(g, iv, tol / 4).value;
  return ifg / len - (iff / len) * (ig / len);
}

double chebyshev_T_by_parts(const Expr& f, const Expr& g, const Interval& iv,
                            double tol) {
  const double len = iv.length();
  const Expr fd = f.derivative();
  const double g_total = integrate(g, iv, tol / 10).value;

  const std::vector<double> g_breaks = g.breakpoints(iv);
  auto inner = [&](double t) {
    if (t <= iv.a) return 0.0;
    return integrate([&g](double s) { return g.eval(s); }, Interval(iv.a, t),
                     tol / 10, g_breaks)
        .value;
  };

  auto w = [&](double t) {
    return ((t - iv.a) * g_total - len * inner(t)) * fd.eval(t);
  };

  std::vector<double> breaks = fd.breakpoints(iv);
  breaks.insert(breaks.end(), g_breaks.begin(), g_breaks.end());
  const double outer = integrate(w, iv, tol, breaks).value;
  return outer / (len * len);
}

double mean_difference(const Expr& f, const Interval& outer,
                       const Interval& inner, double tol) {
  if (!outer.contains(inner)) {
    throw std::invalid_argument("mean_difference: inner not inside outer");
  }
  if (!(inner.length() < outer.length())) {
    throw std::invalid_argument(
        "mean_difference: inner must be strictly shorter than outer");
  }
  const double mo = integrate(f, outer, tol / 4).value / outer.length();
  const double mi = integrate(f, inner, tol / 4).value / inner.length();
  return mo - mi;
}

namespace {

// Golden-section maximization of |f| on [lo,hi].
double golden_max_abs(const Expr& f, double lo, double hi) {
  constexpr double kGolden = 0.6180339887498949;
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  auto val = [&](double t) {
    try {
      return std::fabs(f.eval(t));
    } catch (const DomainError&) {
      return 0.0;
    }
  };
  double f1 = val(x1), f2 = val(x2);
  for (int k = 0; k < 80 && hi - lo > 1e-13 * (1.0 + std::fabs(lo)); ++k) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = val(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = val(x1);
    }
  }
  return std::max(f1, f2);
}

double sup_abs(const Expr& f, const Interval& iv) {
  constexpr int kMesh = 1024;  // 1025 sample points
  const double h = iv.length() / kMesh;

  std::vector<std::pair<double, int>> best;  // (|f|, index)
  double result = 0.0;
  std::vector<double> vals(kMesh + 1, -1.0);
  for (int i = 0; i <= kMesh; ++i) {
    const double t = (i == kMesh) ? iv.b : iv.a + i * h;
    try {
      vals[i] = std::fabs(f.eval(t));
    } catch (const DomainError&) {
      continue;
    }
    result = std::max(result, vals[i]);
  }

  // top five mesh points, refined
  std::vector<int> idx;
  for (int i = 0; i <= kMesh; ++i) idx.push_back(i);
  std::partial_sort(idx.begin(), idx.begin() + 5, idx.end(),
                    [&](int a, int b) { return vals[a] > vals[b]; });
  for (int k = 0; k < 5; ++k) {
    const int i = idx[k];
    const double lo = iv.a + std::max(0, i - 1) * h;
    const double hi = std::min(iv.b, iv.a + (i + 1) * h);
    if (lo < hi) result = std::max(result, golden_max_abs(f, lo, hi));
  }

  // breakpoints, their one-sided neighbourhoods, and the endpoints
  const double delta = 1e-9 * iv.length();
  auto probe = [&](double t) {
    if (t < iv.a || t > iv.b) return;
    try {
      result = std::max(result, std::fabs(f.eval(t)));
    } catch (const DomainError&) {
    }
  };
  for (double t : f.breakpoints(iv)) {
    probe(t);
    probe(t - delta);
    probe(t + delta);
  }
  probe(iv.a);
  probe(iv.b);
  return result;
}

}  // namespace

double lp_norm(const Expr& f, const Interval& iv, double p, double tol) {
  if (p == kInf) return sup_abs(f, iv);
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: requires p >= 1");
  const Expr integrand = (p == 1.0) ? abs(f) : pow(abs(f), p);
  const double total = integrate(integrand, iv, tol).value;
  return std::pow(total, 1.0 / p);
}

std::vector<std::pair<double, double>> jump_points(const Expr& f,
                                                   const Interval& iv) {
  const double delta = 1e-9 * iv.length();
  std::vector<std::pair<double, double>> jumps;
  for (double t : f.breakpoints(iv)) {
    if (t - 2 * delta <= iv.a || t + 2 * delta >= iv.b) continue;
    double fl2, fl, fr, fr2;
    try {
      fl2 = f.eval(t - 2 * delta);
      fl = f.eval(t - delta);
      fr = f.eval(t + delta);
      fr2 = f.eval(t + 2 * delta);
    } catch (const DomainError&) {
      continue;
    }
    // a continuous function moves about slope*2delta across the straddle;
    // discount that so steep-but-continuous points are not taken for jumps
    const double slope_scale = std::fabs(fl - fl2) + std::fabs(fr2 - fr);
    const double height = fr - fl;
    if (std::fabs(height) > 1e-7 + 4.0 * slope_scale) {
      jumps.emplace_back(t, height);
    }
  }
  return jumps;
}

double total_variation(const Expr& f, const Interval& iv, double tol) {
  const Expr dae = f.derivative_ae();
  double tv = integrate(abs(dae), iv, tol).value;
  for (const auto& [t, height] : jump_points(f, iv)) {
    tv += std::fabs(height);
  }
  return tv;
}

bool midpoint_convex(const Expr& h, const Interval& iv, double slack) {
  constexpr int kMesh = 64;  // 65 uniform points
  std::vector<double> pts;
  for (int i = 0; i <= kMesh; ++i) {
    pts.push_back(i == kMesh ? iv.b : iv.a + iv.length() * i / kMesh);
  }
  for (double t : h.breakpoints(iv)) pts.push_back(t);
  std::sort(pts.begin(), pts.end());

  std::vector<double> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    try {
      vals[i] = h.eval(pts[i]);
    } catch (const DomainError&) {
      return false;
    }
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double mid_val;
      try {
        mid_val = h.eval(0.5 * (pts[i] + pts[j]));
      } catch (const DomainError&) {
        return false;
      }
      if (mid_val > 0.5 * (vals[i] + vals[j]) + slack) return false;
    }
  }
  return true;
}

namespace {

Monotonicity monotone_from_signs(bool any_pos, bool any_neg) {
  if (any_pos && any_neg) return Monotonicity::No;
  if (any_neg) return Monotonicity::Decreasing;
  return Monotonicity::Increasing;
}

Monotonicity monotone_of(const Expr& f, const std::optional<Expr>& deriv,
                         const Interval& iv) {
  constexpr int kMesh = 1024;
  constexpr double kTol = 1e-11;
  const double h = iv.length() / kMesh;
  bool any_pos = false, any_neg = false;

  if (deriv) {
    std::vector<double> pts;
    for (int i = 0; i <= kMesh; ++i) {
      pts.push_back(i == kMesh ? iv.b : iv.a + i * h);
    }
    const double delta = 1e-9 * iv.length();
    for (double t : deriv->breakpoints(iv)) {
      pts.push_back(t - delta);
      pts.push_back(t + delta);
    }
    for (double t : pts) {
      if (t < iv.a || t > iv.b) continue;
      double v;
      try {
        v = deriv->eval(t);
      } catch (const DomainError&) {
        continue;
      }
      if (v > kTol) any_pos = true;
      if (v < -kTol) any_neg = true;
    }
    return monotone_from_signs(any_pos, any_neg);
  }

  // no derivative available: sign-constancy of successive differences
  double prev = 0.0;
  bool have_prev = false;
  for (int i = 0; i <= kMesh; ++i) {
    double v;
    try {
      v = f.eval(i == kMesh ? iv.b : iv.a + i * h);
    } catch (const DomainError&) {
      have_prev = false;
      continue;
    }
    if (have_prev) {
      if (v - prev > kTol) any_pos = true;
      if (v - prev < -kTol) any_neg = true;
    }
    prev = v;
    have_prev = true;
  }
  return monotone_from_signs(any_pos, any_neg);
}

}  // namespace

Monotonicity monotonicity(const Expr& f, const Interval& iv) {
  std::optional<Expr> deriv;
  if (jump_points(f, iv).empty()) {
    deriv = f.derivative_ae();
  }
  return monotone_of(f, deriv, iv);
}

std::optional<double> FuncProfile::lp_norm_deriv(double p) const {
  if (!deriv) return std::nullopt;
  if (p == kInf) return sup_norm_deriv;
  return lp_norm(*deriv, domain, p, tol);
}

FuncProfile profile(const Expr& f, const Interval& iv, double tol) {
  FuncProfile pr;
  pr.domain = iv;
  pr.tol = tol;

  std::optional<Expr> deriv;
  try {
    deriv = f.derivative();
  } catch (const NonDifferentiableError&) {
  }
  const bool has_jumps = !jump_points(f, iv).empty();

  try {
    pr.total_variation = total_variation(f, iv, tol);
  } catch (const std::exception&) {
  }

  if (deriv && !has_jumps) {
    pr.deriv = deriv;
    try {
      pr.endpoint_deriv_a = deriv->eval(iv.a);
      pr.endpoint_deriv_b = deriv->eval(iv.b);
    } catch (const DomainError&) {
      pr.endpoint_deriv_a.reset();
      pr.endpoint_deriv_b.reset();
    }
    pr.sup_norm_deriv = lp_norm(*deriv, iv, kInf, tol);
    pr.lipschitz = pr.sup_norm_deriv;
    pr.deriv_abs_convex = midpoint_convex(abs(*deriv), iv);
  }
  pr.monotone = monotone_of(f, (deriv && !has_jumps) ? deriv : std::nullopt, iv);
  return pr;
}

// ---------------------------------------------------------------------------
// Gamma / Beta
// ---------------------------------------------------------------------------

double log_gamma(double z) {
  if (!(z > 0.0)) throw std::invalid_argument("log_gamma: requires z > 0");

  static constexpr double kCoeff[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double kG = 7.0;
  constexpr double kHalfLogTwoPi = 0.91893853320467274178;

  if (z < 0.5) {
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(M_PI / std::sin(M_PI * z)) - log_gamma(1.0 - z);
  }

  const double zm = z - 1.0;
  double x = kCoeff[0];
  for (int i = 1; i < 9; ++i) x += kCoeff[i] / (zm + i);
  const double t = zm + kG + 0.5;
  return kHalfLogTwoPi + (zm + 0.5) * std::log(t) - t + std::log(x);
}

double beta_function(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw std::invalid_argument("beta_function: requires positive arguments");
  }
  return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

}  // namespace cheby
