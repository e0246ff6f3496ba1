#include "roe/json_io.hpp"

#include <fstream>
#include <sstream>

namespace roe {

namespace {

Rat rational_from_json(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rat(Int(v.get<long>()));
    if (v.is_number_float()) {
        // Every binary double is a dyadic rational; convert exactly.
        Rat r;
        mpq_set_d(r.get_mpq_t(), v.get<double>());
        return r;
    }
    throw DomainError("expected a rational (string or number), got " + v.dump());
}

Int integer_from_json(const json& v) {
    if (v.is_string()) {
        Int z;
        if (mpz_set_str(z.get_mpz_t(), v.get<std::string>().c_str(), 10) != 0)
            throw DomainError("cannot parse integer '" + v.get<std::string>() + "'");
        return z;
    }
    if (v.is_number_integer()) return Int(v.get<long>());
    throw DomainError("expected an integer (string or number), got " + v.dump());
}

json rat_with_decimal(const Rat& v, int precision) {
    return json{{"ratio", rat_string(v)}, {"decimal", decimal_string(v, precision)}};
}

Poly poly_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw DomainError("polynomial must be a nonempty coefficient array");
    std::vector<Int> coeffs;
    coeffs.reserve(j.size());
    for (const auto& c : j) coeffs.push_back(integer_from_json(c));
    return Poly(std::move(coeffs));
}

Pmf pmf_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type"))
        throw DomainError("pmf must be an object with a \"type\" field");
    std::string type = j.at("type").get<std::string>();
    if (type == "geometric") return Pmf::geometric(rational_from_json(j.at("p")));
    if (type == "table") {
        std::vector<Rat> masses;
        for (const auto& v : j.at("values")) masses.push_back(rational_from_json(v));
        return Pmf::table(std::move(masses));
    }
    throw DomainError("unknown pmf type '" + type + "' (expected geometric or table)");
}

json stats_to_json(const MeasureStats& s, int precision) {
    json hist = json::array();
    for (const auto& [count, freq] : s.histogram) hist.push_back(json::array({count, freq}));
    return json{{"measure", s.measure},
                {"samples_with_hit", s.samples_with_hit},
                {"total_occurrences", s.total_occurrences},
                {"max_count", s.max_count},
                {"hit_fraction", rat_with_decimal(s.hit_fraction, precision)},
                {"mean_count", rat_with_decimal(s.mean_count, precision)},
                {"histogram", hist}};
}

std::string load_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse_text(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw DomainError("invalid JSON in " + what);
    return j;
}

void csv_rows(std::ostringstream& out, const ExperimentReport& report) {
    for (const MeasureStats& s : report.stats)
        for (std::size_t i = 0; i < s.per_sample_counts.size(); ++i)
            out << report.experiment << "," << s.measure << "," << i << ","
                << s.per_sample_counts[i] << "\n";
}

}  // namespace

json digits_to_json(const std::vector<Int>& digits) {
    json arr = json::array();
    for (const Int& d : digits) arr.push_back(d.get_str());
    return arr;
}

std::vector<Int> digits_from_json(const json& j) {
    if (!j.is_array()) throw DomainError("digit sequence must be a JSON array");
    std::vector<Int> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(integer_from_json(v));
    return out;
}

json cylinder_to_json(const Cylinder& c, int precision) {
    return json{{"base", digits_to_json(c.base.digits)},
                {"inf", rat_string(c.inf)},
                {"sup", rat_string(c.sup)},
                {"length", rat_string(c.length)},
                {"inf_decimal", decimal_string(c.inf, precision)},
                {"sup_decimal", decimal_string(c.sup, precision)},
                {"length_decimal", decimal_string(c.length, precision)}};
}

ROESystem custom_system_from_json(const json& j) {
    if (!j.is_object()) throw DomainError("custom system must be a JSON object");
    std::string name = j.value("name", std::string("custom"));
    if (j.contains("rules")) {
        std::vector<CoeffRule> rules;
        for (const auto& r : j.at("rules"))
            rules.push_back(CoeffRule{poly_from_json(r.at("a_poly")),
                                      poly_from_json(r.at("b_poly"))});
        return ROESystem::custom(std::move(name), std::move(rules));
    }
    return ROESystem::custom(std::move(name), poly_from_json(j.at("a_poly")),
                             poly_from_json(j.at("b_poly")));
}

ROESystem load_custom_system(const std::string& path) {
    return custom_system_from_json(parse_text(load_text(path), "system file " + path));
}

SymbolDistribution symbol_distribution_from_json(const json& j) {
    if (!j.is_object()) throw DomainError("distribution config must be a JSON object");
    bool iid = j.value("iid", true);
    SymbolDistribution dist = [&] {
        if (iid) {
            if (!j.contains("pmf"))
                throw DomainError("iid distribution config needs a \"pmf\" field");
            return SymbolDistribution::iid(pmf_from_json(j.at("pmf")));
        }
        if (!j.contains("columns"))
            throw DomainError("non-iid distribution config needs a \"columns\" array");
        std::vector<Pmf> cols;
        for (const auto& c : j.at("columns")) cols.push_back(pmf_from_json(c));
        return SymbolDistribution::per_position(std::move(cols));
    }();
    if (j.contains("support_cap")) dist.set_support_cap(integer_from_json(j.at("support_cap")));
    return dist;
}

SymbolDistribution load_symbol_distribution(const std::string& path) {
    return symbol_distribution_from_json(parse_text(load_text(path), "distribution file " + path));
}

json report_to_json(const ExperimentReport& report, int precision) {
    json terms = json::array();
    for (const Rat& t : report.l_terms) terms.push_back(rat_string(t));

    json stats = json::array();
    for (const MeasureStats& s : report.stats) stats.push_back(stats_to_json(s, precision));

    json out{{"experiment", report.experiment},
             {"system", report.system_name},
             {"i0", report.i0},
             {"window", json::array({report.window_from, report.window_to})},
             {"depth", report.depth},
             {"samples", report.samples},
             {"seed", report.seed},
             {"stats", stats},
             {"l_terms", terms},
             {"l_tail_sum", rat_with_decimal(report.l_tail_sum, precision)},
             {"lambda_upper_bound", rat_with_decimal(report.lambda_upper_bound, precision)},
             {"l_verdict", to_string(report.l_verdict)},
             {"lambda_band", report.lambda_band},
             {"lambda_bound_holds", report.lambda_bound_holds},
             {"verdict", to_string(report.verdict)}};
    if (report.has_mu) {
        out["mu_exact"] = rat_with_decimal(report.mu_exact, precision);
        out["mu_band"] = report.mu_band;
        out["mu_within_band"] = report.mu_within_band;
        out["dist_point_mass"] = report.dist_point_mass;
    }
    if (report.has_bc) {
        out["bc_partial_sum"] = rat_with_decimal(report.bc_partial_sum, precision);
        out["bc_verdict"] = to_string(report.bc_verdict);
    }
    return out;
}

json diagnose_to_json(const DiagnoseResult& result, int precision) {
    return json{{"finiteness", report_to_json(result.finiteness, precision)},
                {"singularity_witness", report_to_json(result.witness, precision)},
                {"verdict", to_string(result.verdict)}};
}

std::string report_to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "experiment,measure,sample,count\n";
    csv_rows(out, report);
    return out.str();
}

std::string diagnose_to_csv(const DiagnoseResult& result) {
    std::ostringstream out;
    out << "experiment,measure,sample,count\n";
    csv_rows(out, result.finiteness);
    csv_rows(out, result.witness);
    return out.str();
}

}  // namespace roe
