// Command-line front end: evaluate the functional and its bound catalog for
// parsed functions, run the randomized verification suites, the sharpness
// witnesses, the tightness search, and emit the sharp-constant curve.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cheby/bounds.hpp"
#include "cheby/calculus.hpp"
#include "cheby/expr.hpp"
#include "cheby/report.hpp"
#include "cheby/verify.hpp"

namespace {

using cheby::Expr;
using cheby::Interval;
using cheby::bounds::BoundResult;
using cheby::bounds::CaseStatus;
using cheby::bounds::TheoremId;
using cheby::bounds::Verdict;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

double effective_tol() {
  if (const char* env = std::getenv("CHEBY_TOL")) {
    const double v = std::strtod(env, nullptr);
    if (v > 0.0) return v;
  }
  return cheby::kDefaultTol;
}

double parse_alpha(const std::string& s) {
  if (s == "inf" || s == "oo") return cheby::kInf;
  const double v = std::strtod(s.c_str(), nullptr);
  if (!(v >= 1.0)) {
    throw CLI::ValidationError("--alpha", "alpha must be >= 1 or 'inf'");
  }
  return v;
}

// Theorems evaluated by `bound` (the functional catalog; the mean-difference
// family needs a subinterval and runs under `verify`/`falsify` instead).
const std::vector<TheoremId> kFunctionalCatalog = {
    TheoremId::ChebSup,       TheoremId::ConvexPairDeriv,
    TheoremId::LipConvex,     TheoremId::BvConvex,
    TheoremId::LpConvex,      TheoremId::ConvexSup,
    TheoremId::MonotoneSign,  TheoremId::Atkinson,
    TheoremId::Lupas,         TheoremId::ConvexUpper,
    TheoremId::ConcaveLower,
};

std::string fmt(double v) { return cheby::report::format_number(v); }

int cmd_bound(const std::string& f_text, const std::string& g_text, double a,
              double b, const std::vector<std::string>& theorem_names,
              double alpha, bool as_json) {
  const double tol = effective_tol();
  const Expr f = cheby::parse(f_text);
  const Expr g = cheby::parse(g_text);
  const Interval iv(a, b);

  std::vector<TheoremId> wanted;
  if (theorem_names.empty()) {
    wanted = kFunctionalCatalog;
  } else {
    for (const auto& name : theorem_names) {
      const auto id = cheby::bounds::theorem_from_string(name);
      if (!id) throw CLI::ValidationError("--theorems", "unknown theorem id: " + name);
      const bool functional =
          std::find(kFunctionalCatalog.begin(), kFunctionalCatalog.end(), *id) !=
          kFunctionalCatalog.end();
      if (!functional) {
        throw CLI::ValidationError(
            "--theorems",
            "theorem needs a subinterval; use `verify` for it: " + name);
      }
      wanted.push_back(*id);
    }
  }

  const double T = cheby::chebyshev_T(f, g, iv, tol);
  const cheby::FuncProfile fp = cheby::profile(f, iv, tol);
  const cheby::FuncProfile gp = cheby::profile(g, iv, tol);

  json rep = cheby::report::make_report("bound", 0);
  json id_list = json::array();
  for (TheoremId id : wanted) id_list.push_back(std::string(cheby::bounds::to_string(id)));
  rep["inputs"] = {{"f", f_text}, {"g", g_text}, {"a", a}, {"b", b},
                   {"alpha", alpha == cheby::kInf ? json("inf") : json(alpha)},
                   {"theorems", id_list}};
  rep["T"] = T;
  json jbounds = json::array();

  std::printf("T(f,g) on [%s, %s] = %s\n", fmt(a).c_str(), fmt(b).c_str(),
              cheby::report::pretty_value(T).c_str());
  std::printf("%-18s %-10s %-24s %-24s %-24s %-24s %s\n", "theorem", "status",
              "bound", "secondary", "|T|", "slack", "notes");

  for (TheoremId id : wanted) {
    BoundResult br;
    std::string note;
    switch (id) {
      case TheoremId::ChebSup:
        br = cheby::bounds::cheb_derivative_bound(fp, gp, iv);
        break;
      case TheoremId::ConvexPairDeriv:
        br = cheby::bounds::convex_pair_deriv_bound(f, g, iv, tol);
        break;
      case TheoremId::LipConvex:
        br = cheby::bounds::lipschitz_convex_bound(f, g, iv, tol);
        break;
      case TheoremId::BvConvex:
        br = cheby::bounds::variation_convex_bound(f, g, iv, tol);
        break;
      case TheoremId::LpConvex:
        br = cheby::bounds::lp_convex_bound(f, g, iv, alpha, tol);
        note = "alpha=" + (alpha == cheby::kInf ? std::string("inf") : fmt(alpha));
        break;
      case TheoremId::ConvexSup:
        br = cheby::bounds::convex_sup_bound(f, g, iv, tol);
        break;
      case TheoremId::MonotoneSign: {
        const Verdict v = cheby::bounds::monotone_sign_check(fp, gp, T);
        br.theorem = id;
        br.direction = v.direction;
        br.value = v.bound;
        br.applicable = v.status != CaseStatus::HypothesesNotMet;
        br.hypotheses = {{"both monotone", br.applicable}};
        break;
      }
      case TheoremId::Atkinson: {
        const Verdict v = cheby::bounds::atkinson_check(f, g, iv, tol);
        br.theorem = id;
        br.direction = v.direction;
        br.value = v.bound;
        br.applicable = v.status != CaseStatus::HypothesesNotMet;
        br.hypotheses = {{"convex pair, centered g", br.applicable}};
        break;
      }
      case TheoremId::Lupas:
        br = cheby::bounds::lupas_lower(f, g, iv, tol);
        break;
      case TheoremId::ConvexUpper:
        br = cheby::bounds::convex_pair_upper(f, g, iv, tol);
        break;
      case TheoremId::ConcaveLower:
        br = cheby::bounds::concave_pair_lower(f, g, iv, tol);
        break;
      default:
        continue;  // mean-difference ids are filtered out above
    }

    json jb = cheby::report::to_json(br, T);
    if (!note.empty()) jb["note"] = note;
    jbounds.push_back(jb);

    std::string status(jb["status"].get<std::string>());
    if (jb["equality"].get<bool>()) note += (note.empty() ? "" : "; ") + std::string("equality");
    for (const auto& h : br.hypotheses) {
      if (!h.ok) note += (note.empty() ? "" : "; ") + h.name + ": fails";
    }
    const cheby::bounds::Verdict row = cheby::bounds::check_bound("", T, br);
    std::printf("%-18s %-10s %-24s %-24s %-24s %-24s %s\n",
                std::string(cheby::bounds::to_string(id)).c_str(),
                status.c_str(),
                std::isnan(br.value) ? "-" : fmt(br.value).c_str(),
                br.secondary_value ? fmt(*br.secondary_value).c_str() : "-",
                fmt(std::fabs(T)).c_str(),
                br.applicable && !std::isnan(br.value) ? fmt(row.slack).c_str()
                                                       : "-",
                note.c_str());
  }
  rep["bounds"] = jbounds;
  if (as_json) std::printf("%s\n", rep.dump(2).c_str());
  return kExitOk;
}

int cmd_verify(const std::string& theorem, int cases, std::uint64_t seed,
               double alpha, bool as_json) {
  const auto id = cheby::bounds::theorem_from_string(theorem);
  if (!id) throw CLI::ValidationError("--theorem", "unknown theorem id: " + theorem);
  const cheby::verify::SuiteResult sr =
      cheby::verify::run_suite(*id, cases, seed, alpha, effective_tol());

  json rep = cheby::report::make_report("verify", seed);
  rep["suite"] = cheby::report::to_json(sr);
  if (as_json) {
    std::printf("%s\n", rep.dump(2).c_str());
  } else {
    std::printf("%s: %d cases, %d hold, %d violated, %d hypotheses-not-met, %d chain violations\n",
                theorem.c_str(), static_cast<int>(sr.verdicts.size()), sr.holds,
                sr.violated, sr.not_met, sr.chain_violations);
    int shown = 0;
    for (const auto& v : sr.verdicts) {
      if (v.status == CaseStatus::Violated && shown < 10) {
        std::printf("  violated %s: T=%s bound=%s slack=%s\n", v.case_id.c_str(),
                    fmt(v.measured).c_str(), fmt(v.bound).c_str(),
                    fmt(v.slack).c_str());
        ++shown;
      }
    }
    if (sr.violated > 0 && !sr.hard_fail) {
      std::printf("  (violations recorded, not failed for this estimate)\n");
    }
  }
  return sr.hard_fail ? kExitViolation : kExitOk;
}

int cmd_sharpness(bool as_json) {
  const auto verdicts = cheby::verify::sharpness_suite(effective_tol());
  bool all_equal = true;
  json rep = cheby::report::make_report("sharpness", 0);
  json jv = json::array();
  for (const auto& v : verdicts) {
    jv.push_back(cheby::report::to_json(v));
    const bool ok = v.status == CaseStatus::Holds;
    all_equal = all_equal && ok;
    if (!as_json) {
      std::printf("%-42s T=%-22s bound=%-22s |diff|=%s %s\n", v.case_id.c_str(),
                  fmt(v.measured).c_str(), fmt(v.bound).c_str(),
                  fmt(std::fabs(std::fabs(v.measured) - v.bound)).c_str(),
                  ok ? "equal" : "NOT EQUAL");
    }
  }
  rep["verdicts"] = jv;
  if (as_json) std::printf("%s\n", rep.dump(2).c_str());
  return all_equal ? kExitOk : kExitViolation;
}

int cmd_hcurve(double from, double to, int steps, const std::string& out_path) {
  if (steps < 1) throw CLI::ValidationError("--steps", "need at least one step");
  std::vector<double> grid;
  for (int i = 0; i < steps; ++i) {
    grid.push_back(steps == 1 ? from : from + (to - from) * i / (steps - 1));
  }
  const auto rows = cheby::verify::h_curve(grid);
  const std::string csv = cheby::report::hcurve_csv(rows);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "error: cannot open %s\n", out_path.c_str());
    return kExitUsage;
  }
  out << csv;
  std::printf("wrote %zu rows to %s\n", rows.size(), out_path.c_str());
  return kExitOk;
}

int cmd_falsify(const std::string& theorem, int iterations, std::uint64_t seed,
                double alpha, bool as_json) {
  const auto id = cheby::bounds::theorem_from_string(theorem);
  if (!id) throw CLI::ValidationError("--theorem", "unknown theorem id: " + theorem);
  cheby::verify::FamilySpec fam;
  fam.family = cheby::verify::Family::ConvexPositiveDeriv;
  fam.segments = 3;
  const auto tr = cheby::verify::tightness_search(*id, fam, iterations, seed,
                                                  alpha, effective_tol());
  json rep = cheby::report::make_report("falsify", seed);
  rep["report"] = cheby::report::to_json(tr);
  if (as_json) {
    std::printf("%s\n", rep.dump(2).c_str());
  } else if (tr.empty) {
    std::printf("%s: no usable cases over %d iterations\n", theorem.c_str(),
                tr.iterations);
  } else {
    std::printf("%s: best ratio %s over %d iterations (%d evaluated)\n",
                theorem.c_str(), fmt(tr.best_ratio).c_str(), tr.iterations,
                tr.evaluated);
    std::printf("  best case genome: %s\n", tr.best_case.c_str());
  }
  const bool falsified = !tr.empty && tr.best_ratio > 1.0 + 1e-6;
  return falsified ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical bounds for the covariance-style integral functional"};
  app.require_subcommand(1);

  // bound
  auto* bound = app.add_subcommand("bound", "evaluate T(f,g) and the bound catalog");
  std::string f_text, g_text;
  double a = 0.0, b = 1.0;
  std::vector<std::string> theorems;
  std::string alpha_text = "2";
  bool bound_json = false;
  bound->add_option("--f", f_text, "f as a function of x")->required();
  bound->add_option("--g", g_text, "g as a function of x")->required();
  bound->add_option("--a", a, "interval lower end")->required();
  bound->add_option("--b", b, "interval upper end")->required();
  bound->add_option("--theorems", theorems, "comma-separated theorem ids")
      ->delimiter(',');
  bound->add_option("--alpha", alpha_text, "alpha for the L_alpha bound (or 'inf')");
  bound->add_flag("--json", bound_json, "emit the JSON report");

  // verify
  auto* verify = app.add_subcommand("verify", "randomized hypothesis-satisfying suite");
  std::string v_theorem;
  int v_cases = 1000;
  std::uint64_t v_seed = 1;
  std::string v_alpha_text = "2";
  bool v_json = false;
  verify->add_option("--theorem", v_theorem, "theorem id")->required();
  verify->add_option("--cases", v_cases, "number of cases");
  verify->add_option("--seed", v_seed, "random seed");
  verify->add_option("--alpha", v_alpha_text, "alpha for the L_alpha bound");
  verify->add_flag("--json", v_json, "emit the JSON report");

  // sharpness
  auto* sharp = app.add_subcommand("sharpness", "equality witnesses");
  bool s_json = false;
  sharp->add_flag("--json", s_json, "emit the JSON report");

  // hcurve
  auto* hcurve = app.add_subcommand("hcurve", "sharp-constant curve CSV");
  double h_from = 1.0, h_to = 100.0;
  int h_steps = 100;
  std::string h_out = "hcurve.csv";
  hcurve->add_option("--from", h_from, "beta range start")->required();
  hcurve->add_option("--to", h_to, "beta range end")->required();
  hcurve->add_option("--steps", h_steps, "number of grid points")->required();
  hcurve->add_option("--out", h_out, "output CSV path")->required();

  // falsify
  auto* falsify = app.add_subcommand("falsify", "tightness search for one bound");
  std::string fz_theorem;
  int fz_iter = 10000;
  std::uint64_t fz_seed = 1;
  std::string fz_alpha_text = "2";
  bool fz_json = false;
  falsify->add_option("--theorem", fz_theorem, "theorem id")->required();
  falsify->add_option("--iterations", fz_iter, "hill-climb iterations");
  falsify->add_option("--seed", fz_seed, "random seed");
  falsify->add_option("--alpha", fz_alpha_text, "alpha for the L_alpha bound");
  falsify->add_flag("--json", fz_json, "emit the JSON report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bound->parsed()) {
      return cmd_bound(f_text, g_text, a, b, theorems, parse_alpha(alpha_text),
                       bound_json);
    }
    if (verify->parsed()) {
      return cmd_verify(v_theorem, v_cases, v_seed, parse_alpha(v_alpha_text),
                        v_json);
    }
    if (sharp->parsed()) return cmd_sharpness(s_json);
    if (hcurve->parsed()) return cmd_hcurve(h_from, h_to, h_steps, h_out);
    if (falsify->parsed()) {
      return cmd_falsify(fz_theorem, fz_iter, fz_seed,
                         parse_alpha(fz_alpha_text), fz_json);
    }
  } catch (const cheby::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
