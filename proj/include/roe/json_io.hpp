#pragma once

/// JSON and CSV wire formats.
///
/// Digits serialize as arrays of decimal strings (they outgrow 64-bit
/// integers quickly), rationals as "p/q" strings with a decimal rendering
/// alongside where a human will read them. Object keys are emitted in
/// sorted order, so serializing the same report twice gives identical
/// bytes.

#include <string>
#include <vector>

#include <json.hpp>

#include "roe/cylinder.hpp"
#include "roe/experiments.hpp"
#include "roe/sampling.hpp"

namespace roe {

using json = nlohmann::json;

json digits_to_json(const std::vector<Int>& digits);
std::vector<Int> digits_from_json(const json& j);

// {"base": [...], "inf": "p/q", "sup": "p/q", "length": "p/q", ...decimals}
json cylinder_to_json(const Cylinder& c, int precision);

// {"a_poly": [c0, c1, ...], "b_poly": [...], "name": "..."} with integer
// or string coefficients; evaluated at the current denominator.
ROESystem custom_system_from_json(const json& j);
ROESystem load_custom_system(const std::string& path);

// {"iid": true, "pmf": {"type": "geometric", "p": "1/2"}}
// {"iid": true, "pmf": {"type": "table", "values": ["1/2", "1/4", "1/4"]}}
// {"iid": false, "columns": [<pmf>, ...]}  (last column repeats)
// Probabilities parse as rational strings or JSON numbers (exactly).
SymbolDistribution symbol_distribution_from_json(const json& j);
SymbolDistribution load_symbol_distribution(const std::string& path);

json report_to_json(const ExperimentReport& report, int precision);
json diagnose_to_json(const DiagnoseResult& result, int precision);

// Flat per-sample occurrence counts: experiment,measure,sample,count.
std::string report_to_csv(const ExperimentReport& report);
std::string diagnose_to_csv(const DiagnoseResult& result);

}  // namespace roe
