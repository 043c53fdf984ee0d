#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cheby/bounds.hpp"
#include "cheby/verify.hpp"

namespace cheby::report {

inline constexpr const char* kSchema = "cheby-report/1";
inline constexpr const char* kToolVersion = "0.1.0";

/// Shortest representation that round-trips a double.
std::string format_number(double v);

/// p/q with q <= 120 within 1e-9 of v, when one exists.  Used to annotate
/// output against the catalog's rational constants.
std::optional<std::pair<long, long>> as_rational(double v);

/// "0.0833333... (~ 1/12)" when a small rational is nearby.
std::string pretty_value(double v);

std::string_view to_string(bounds::Direction d);
std::string_view to_string(bounds::CaseStatus s);

nlohmann::json to_json(const bounds::Verdict& v);
nlohmann::json to_json(const bounds::BoundResult& br, double measured);
nlohmann::json to_json(const verify::SuiteResult& sr);
nlohmann::json to_json(const verify::TightnessReport& tr);

/// Report skeleton: schema tag, tool version, command name, seed.
nlohmann::json make_report(const std::string& command, std::uint64_t seed);

/// CSV with header "beta,h,dh", one row per grid point, LF line endings.
std::string hcurve_csv(const std::vector<verify::HCurveRow>& rows);

}  // namespace cheby::report
