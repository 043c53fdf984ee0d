#include "cheby/report.hpp"

#include <cmath>
#include <cstdio>

namespace cheby::report {

using nlohmann::json;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::optional<std::pair<long, long>> as_rational(double v) {
  if (!std::isfinite(v)) return std::nullopt;
  for (long q = 1; q <= 120; ++q) {
    const double scaled = v * static_cast<double>(q);
    const long p = static_cast<long>(std::llround(scaled));
    if (std::fabs(v - static_cast<double>(p) / static_cast<double>(q)) <= 1e-9) {
      return std::make_pair(p, q);
    }
  }
  return std::nullopt;
}

std::string pretty_value(double v) {
  std::string out = format_number(v);
  if (const auto r = as_rational(v)) {
    const auto [p, q] = *r;
    if (q > 1 && p != 0) {
      out += " (~ " + std::to_string(p) + "/" + std::to_string(q) + ")";
    } else if (q == 1 && out.find('.') != std::string::npos) {
      out += " (~ " + std::to_string(p) + ")";
    }
  }
  return out;
}

std::string_view to_string(bounds::Direction d) {
  switch (d) {
    case bounds::Direction::AbsLeq: return "abs_leq";
    case bounds::Direction::Leq: return "leq";
    case bounds::Direction::Geq: return "geq";
  }
  return "?";
}

std::string_view to_string(bounds::CaseStatus s) {
  switch (s) {
    case bounds::CaseStatus::Holds: return "holds";
    case bounds::CaseStatus::Violated: return "violated";
    case bounds::CaseStatus::HypothesesNotMet: return "hypotheses-not-met";
  }
  return "?";
}

namespace {

json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

json to_json(const bounds::Verdict& v) {
  return json{{"case_id", v.case_id},
              {"T", number_or_null(v.measured)},
              {"bound", number_or_null(v.bound)},
              {"direction", to_string(v.direction)},
              {"slack", number_or_null(v.slack)},
              {"status", to_string(v.status)}};
}

json to_json(const bounds::BoundResult& br, double measured) {
  json hyps = json::array();
  for (const auto& h : br.hypotheses) {
    hyps.push_back({{"name", h.name}, {"ok", h.ok}});
  }
  const bounds::Verdict v = bounds::check_bound("", measured, br);
  json out{{"theorem", std::string(bounds::to_string(br.theorem))},
           {"direction", to_string(br.direction)},
           {"value", number_or_null(br.value)},
           {"secondary_value",
            br.secondary_value ? number_or_null(*br.secondary_value) : json{}},
           {"hypotheses", hyps},
           {"applicable", br.applicable},
           {"T", number_or_null(measured)},
           {"slack", number_or_null(v.slack)},
           {"status", to_string(v.status)}};
  out["equality"] = br.applicable && !std::isnan(br.value) &&
                    std::fabs(std::fabs(measured) - br.value) <= kSlack;
  return out;
}

json to_json(const verify::SuiteResult& sr) {
  json verdicts = json::array();
  for (const auto& v : sr.verdicts) verdicts.push_back(to_json(v));
  json out{{"theorem", std::string(bounds::to_string(sr.theorem))},
           {"cases", static_cast<int>(sr.verdicts.size())},
           {"holds", sr.holds},
           {"violated", sr.violated},
           {"hypotheses_not_met", sr.not_met},
           {"chain_violations", sr.chain_violations},
           {"hard_fail", sr.hard_fail},
           {"verdicts", verdicts}};
  if (!std::isnan(sr.alpha)) {
    out["alpha"] = sr.alpha == kInf ? json("inf") : json(sr.alpha);
  }
  return out;
}

json to_json(const verify::TightnessReport& tr) {
  json out{{"theorem", std::string(bounds::to_string(tr.theorem))},
           {"iterations", tr.iterations},
           {"evaluated", tr.evaluated},
           {"empty", tr.empty},
           {"best_ratio", tr.empty ? json{} : json(tr.best_ratio)},
           {"best_case", tr.best_case}};
  if (!std::isnan(tr.alpha)) {
    out["alpha"] = tr.alpha == kInf ? json("inf") : json(tr.alpha);
  }
  return out;
}

json make_report(const std::string& command, std::uint64_t seed) {
  return json{{"schema", kSchema},
              {"tool_version", kToolVersion},
              {"command", command},
              {"seed", seed}};
}

std::string hcurve_csv(const std::vector<verify::HCurveRow>& rows) {
  std::string out = "beta,h,dh\n";
  for (const auto& r : rows) {
    out += format_number(r.beta);
    out += ',';
    out += format_number(r.h);
    out += ',';
    out += format_number(r.dh);
    out += '\n';
  }
  return out;
}

}  // namespace cheby::report
