// roe: exact arithmetic for restricted Oppenheim-type expansions.
//
// Subcommands: expand, eval, cylinder, transition, bounds, sample,
// diagnose, validate. Exit codes: 0 success, 2 usage or domain error,
// 3 experiment hypothesis not satisfied.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "roe/cylinder.hpp"
#include "roe/errors.hpp"
#include "roe/expansion.hpp"
#include "roe/experiments.hpp"
#include "roe/json_io.hpp"
#include "roe/numeric.hpp"
#include "roe/sampling.hpp"
#include "roe/system.hpp"

namespace {

struct CommonOpts {
    std::string system = "sylvester";
    std::string custom_path;
    std::string format = "text";
    int precision = 30;
    std::uint64_t seed = 0;
    long samples = 10;
    long depth = 8;
    int threads = 0;  // 0 = hardware concurrency
    std::int64_t bit_budget = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--system", opts.system, "builtin system: engel | sylvester | luroth")
        ->check(CLI::IsMember({"engel", "sylvester", "luroth"}));
    cmd->add_option("--custom", opts.custom_path,
                    "path to a custom system JSON ({\"a_poly\": [...], \"b_poly\": [...]})")
        ->excludes("--system");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--precision", opts.precision, "significant digits for decimal renderings")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--bit-budget", opts.bit_budget,
                    "cap on integer bit length (also env ROE_BIT_BUDGET)");
}

roe::ROESystem resolve_system(const CommonOpts& opts) {
    if (!opts.custom_path.empty()) {
        roe::ROESystem sys = roe::load_custom_system(opts.custom_path);
        // Attach finite-range validation so worst-case bounds are available
        // when the custom rule supports them.
        return sys.with_validation(roe::validate(sys, 8, 4096));
    }
    if (opts.system == "engel") return roe::ROESystem::engel();
    if (opts.system == "luroth") return roe::ROESystem::luroth();
    return roe::ROESystem::sylvester();
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<roe::Int> parse_digits(const std::vector<std::string>& words) {
    std::vector<roe::Int> digits;
    digits.reserve(words.size());
    for (const auto& w : words) {
        roe::Int d;
        if (mpz_set_str(d.get_mpz_t(), w.c_str(), 10) != 0)
            throw roe::DomainError("cannot parse digit '" + w + "'");
        digits.push_back(std::move(d));
    }
    return digits;
}

std::string join_digits(const std::vector<roe::Int>& digits) {
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) out += " ";
        out += digits[i].get_str();
    }
    return out;
}

void emit(const roe::json& doc) { std::cout << doc.dump(2) << "\n"; }

std::string rat_line(const roe::Rat& v, int precision) {
    return roe::rat_string(v) + " (" + roe::decimal_string(v, precision) + ")";
}

// ---- subcommand handlers ----

int run_expand(const CommonOpts& opts, const std::string& x_text) {
    roe::ROESystem sys = resolve_system(opts);
    roe::Rat x = roe::parse_rational(x_text);
    roe::DigitSeq digits = roe::expand(sys, x, opts.depth);
    roe::DiffDigitSeq alphas = roe::to_difference(digits);
    auto [inf, sup] = roe::evaluate_interval(digits);
    roe::Rat width = sup - inf;
    width.canonicalize();

    if (opts.format == "json") {
        emit(roe::json{{"system", sys.name()},
                       {"x", roe::rat_string(x)},
                       {"digits", roe::digits_to_json(digits.digits)},
                       {"alphas", roe::digits_to_json(alphas.alphas)},
                       {"inf", roe::rat_string(inf)},
                       {"sup", roe::rat_string(sup)},
                       {"width", roe::rat_string(width)},
                       {"width_decimal", roe::decimal_string(width, opts.precision)}});
    } else {
        std::cout << "system:   " << sys.name() << "\n"
                  << "digits:   " << join_digits(digits.digits) << "\n"
                  << "alphas:   " << join_digits(alphas.alphas) << "\n"
                  << "interval: [" << rat_line(inf, opts.precision) << ", "
                  << rat_line(sup, opts.precision) << "]\n"
                  << "width:    " << rat_line(width, opts.precision) << "\n";
    }
    return 0;
}

int run_eval(const CommonOpts& opts, const std::vector<std::string>& digit_words) {
    roe::ROESystem sys = resolve_system(opts);
    roe::DigitSeq seq{sys, parse_digits(digit_words)};
    roe::Rat value = roe::evaluate(seq);
    auto [inf, sup] = roe::evaluate_interval(seq);

    if (opts.format == "json") {
        emit(roe::json{{"system", sys.name()},
                       {"digits", roe::digits_to_json(seq.digits)},
                       {"value", roe::rat_string(value)},
                       {"value_decimal", roe::decimal_string(value, opts.precision)},
                       {"inf", roe::rat_string(inf)},
                       {"sup", roe::rat_string(sup)}});
    } else {
        std::cout << "value:    " << rat_line(value, opts.precision) << "\n"
                  << "interval: [" << rat_line(inf, opts.precision) << ", "
                  << rat_line(sup, opts.precision) << "]\n";
    }
    return 0;
}

int run_cylinder(const CommonOpts& opts, const std::vector<std::string>& digit_words) {
    roe::ROESystem sys = resolve_system(opts);
    roe::Cylinder cyl = roe::cylinder_of(sys, parse_digits(digit_words));
    if (opts.format == "json") {
        emit(roe::cylinder_to_json(cyl, opts.precision));
    } else {
        std::cout << "base:   " << join_digits(cyl.base.digits) << "\n"
                  << "inf:    " << rat_line(cyl.inf, opts.precision) << "\n"
                  << "sup:    " << rat_line(cyl.sup, opts.precision) << "\n"
                  << "length: " << rat_line(cyl.length, opts.precision) << "\n";
    }
    return 0;
}

int run_transition(const CommonOpts& opts, long pos, const std::string& j_text,
                   const std::string& k_text) {
    roe::ROESystem sys = resolve_system(opts);
    std::vector<roe::Int> jk = parse_digits({j_text, k_text});
    roe::Rat p = roe::transition_prob(sys, pos, jk[0], jk[1]);
    if (opts.format == "json") {
        emit(roe::json{{"system", sys.name()},
                       {"position", pos},
                       {"from", jk[0].get_str()},
                       {"to", jk[1].get_str()},
                       {"probability", roe::rat_string(p)},
                       {"probability_decimal", roe::decimal_string(p, opts.precision)}});
    } else {
        std::cout << "P(d_" << pos << " = " << jk[1] << " | d_" << pos - 1 << " = " << jk[0]
                  << ") = " << rat_line(p, opts.precision) << "\n";
    }
    return 0;
}

int run_bounds(const CommonOpts& opts, long from, long to) {
    roe::ROESystem sys = resolve_system(opts);
    roe::TailSum tail = roe::tail_sum_l(sys, from, to);
    if (opts.format == "json") {
        roe::json terms = roe::json::array();
        for (std::size_t i = 0; i < tail.terms.size(); ++i)
            terms.push_back(roe::json{{"k", from + static_cast<long>(i)},
                                      {"l", roe::rat_string(tail.terms[i])},
                                      {"l_decimal",
                                       roe::decimal_string(tail.terms[i], opts.precision)}});
        emit(roe::json{{"system", sys.name()},
                       {"window", roe::json::array({from, to})},
                       {"terms", terms},
                       {"sum", roe::rat_string(tail.sum)},
                       {"sum_decimal", roe::decimal_string(tail.sum, opts.precision)},
                       {"verdict", roe::to_string(tail.verdict)}});
    } else {
        for (std::size_t i = 0; i < tail.terms.size(); ++i)
            std::cout << "l_" << from + static_cast<long>(i) << " = "
                      << rat_line(tail.terms[i], opts.precision) << "\n";
        std::cout << "sum:     " << rat_line(tail.sum, opts.precision) << "\n"
                  << "verdict: " << roe::to_string(tail.verdict) << "\n";
    }
    return 0;
}

int run_sample(const CommonOpts& opts, const std::string& measure, const std::string& dist_path,
               bool expand_based) {
    roe::ROESystem sys = resolve_system(opts);
    if (opts.samples < 1) throw roe::DomainError("--samples must be >= 1");

    std::optional<roe::SymbolDistribution> dist;
    if (measure == "xi") {
        if (dist_path.empty())
            throw roe::DomainError("--measure xi requires --dist <config.json>");
        dist = roe::load_symbol_distribution(dist_path);
    }

    roe::json arr = roe::json::array();
    for (long i = 0; i < opts.samples; ++i) {
        roe::DigitSeq digits{sys, {}};
        roe::DiffDigitSeq alphas{sys, {}};
        if (measure == "xi") {
            roe::RandomStream rng(opts.seed, roe::RandomStream::compose_stream(
                                                 roe::kStreamXi, static_cast<std::uint64_t>(i)));
            std::tie(alphas, digits) = roe::sample_xi_digits(sys, *dist, opts.depth, rng);
        } else {
            std::uint64_t purpose = expand_based ? roe::kStreamExpand : roe::kStreamLebesgue;
            roe::RandomStream rng(opts.seed, roe::RandomStream::compose_stream(
                                                 purpose, static_cast<std::uint64_t>(i)));
            digits = expand_based ? roe::sample_lebesgue_via_expand(sys, opts.depth, rng)
                                  : roe::sample_lebesgue_digits(sys, opts.depth, rng);
            alphas = roe::to_difference(digits);
        }

        if (opts.format == "json") {
            arr.push_back(roe::json{{"digits", roe::digits_to_json(digits.digits)},
                                    {"alphas", roe::digits_to_json(alphas.alphas)}});
        } else if (opts.format == "csv") {
            const auto& row = measure == "xi" ? alphas.alphas : digits.digits;
            for (std::size_t k = 0; k < row.size(); ++k)
                std::cout << (k ? "," : "") << row[k].get_str();
            std::cout << "\n";
        } else {
            std::cout << join_digits(digits.digits) << " | " << join_digits(alphas.alphas)
                      << "\n";
        }
    }
    if (opts.format == "json") emit(arr);
    return 0;
}

int run_diagnose(const CommonOpts& opts, const std::string& dist_path, long i0, long m, long N) {
    roe::ROESystem sys = resolve_system(opts);
    if (dist_path.empty()) throw roe::DomainError("diagnose requires --dist <config.json>");
    if (opts.samples < 1) throw roe::DomainError("--samples must be >= 1");
    roe::SymbolDistribution dist = roe::load_symbol_distribution(dist_path);

    roe::DiagnoseResult result = roe::diagnose(sys, dist, i0, m, N, opts.samples, opts.seed,
                                               resolve_threads(opts.threads));
    if (opts.format == "csv") {
        std::cout << roe::diagnose_to_csv(result);
    } else if (opts.format == "json") {
        emit(roe::diagnose_to_json(result, opts.precision));
    } else {
        const auto& wit = result.witness;
        std::cout << "system:            " << wit.system_name << "\n"
                  << "window:            [" << wit.window_from << ", " << wit.window_to << "]\n"
                  << "i0:                " << wit.i0 << "\n"
                  << "mu_exact(E):       " << rat_line(wit.mu_exact, opts.precision) << "\n"
                  << "lambda_bound(E):   " << rat_line(wit.lambda_upper_bound, opts.precision)
                  << "\n"
                  << "xi hit fraction:   "
                  << rat_line(wit.stats[1].hit_fraction, opts.precision) << "\n"
                  << "lebesgue fraction: "
                  << rat_line(wit.stats[0].hit_fraction, opts.precision) << "\n"
                  << "bc partial sum:    " << rat_line(wit.bc_partial_sum, opts.precision)
                  << " (" << roe::to_string(wit.bc_verdict) << ")\n"
                  << "verdict:           " << roe::to_string(result.verdict) << "\n";
    }
    return 0;
}

int run_validate(const CommonOpts& opts, long n_max, long j_max) {
    roe::ROESystem sys = resolve_system(opts);
    roe::ValidationReport report = roe::validate(sys, n_max, j_max);
    if (opts.format == "json") {
        roe::json failures = roe::json::array();
        for (const auto& f : report.failures)
            failures.push_back(
                roe::json{{"n", f.n}, {"j", f.j.get_str()}, {"reason", f.reason}});
        emit(roe::json{{"system", sys.name()},
                       {"n_max", report.n_max},
                       {"j_max", report.j_max},
                       {"integrality_ok", report.integrality_ok},
                       {"h_monotone_in_j", report.h_monotone_in_j},
                       {"failures", failures}});
    } else {
        std::cout << "system:          " << sys.name() << "\n"
                  << "checked range:   n <= " << report.n_max << ", j <= " << report.j_max
                  << "\n"
                  << "integrality_ok:  " << (report.integrality_ok ? "true" : "false") << "\n"
                  << "h_monotone_in_j: " << (report.h_monotone_in_j ? "true" : "false") << "\n";
        std::size_t shown = 0;
        for (const auto& f : report.failures) {
            if (shown++ == 20) {
                std::cout << "... (" << report.failures.size() - 20 << " more failures)\n";
                break;
            }
            std::cout << "failure: n=" << f.n << " j=" << f.j << ": " << f.reason << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact restricted Oppenheim expansions: digits, cylinders, samplers, "
                 "singularity experiments"};
    app.require_subcommand(1);

    CommonOpts opts;
    if (const char* env = std::getenv("ROE_BIT_BUDGET")) {
        try {
            roe::set_bit_budget(std::stoll(env));
        } catch (const std::exception&) {
            std::cerr << "invalid ROE_BIT_BUDGET value '" << env << "'\n";
            return 2;
        }
    }

    std::string x_text;
    std::vector<std::string> digit_words;
    long pos = 2;
    std::vector<long> window = {10, 20};
    std::string measure = "lebesgue", dist_path;
    bool expand_based = false;
    long i0 = 1;
    long n_max = 5, j_max = 1000;

    CLI::App* c_expand = app.add_subcommand("expand", "digit expansion of a rational in (0,1)");
    add_common(c_expand, opts);
    c_expand->add_option("--depth", opts.depth, "number of digits")->capture_default_str();
    c_expand->add_option("x", x_text, "rational to expand, e.g. 1/2 or 0.3")->required();

    CLI::App* c_eval = app.add_subcommand("eval", "series value of a digit sequence");
    add_common(c_eval, opts);
    c_eval->add_option("digits", digit_words, "digit sequence")->required()->expected(-1);

    CLI::App* c_cyl = app.add_subcommand("cylinder", "exact cylinder of a digit base");
    add_common(c_cyl, opts);
    c_cyl->add_option("digits", digit_words, "digit base")->required()->expected(-1);

    CLI::App* c_trans = app.add_subcommand("transition", "digit transition probability");
    add_common(c_trans, opts);
    c_trans->add_option("--pos", pos, "position n of the target digit (>= 2)")
        ->capture_default_str();
    c_trans->add_option("j", x_text, "conditioning digit d_{n-1}")->required();
    std::string k_text;
    c_trans->add_option("k", k_text, "target digit d_n")->required();

    CLI::App* c_bounds = app.add_subcommand("bounds", "worst-case ratio bounds l_k and tail sum");
    add_common(c_bounds, opts);
    c_bounds->add_option("--window", window, "level range: first last")->expected(2);

    CLI::App* c_sample = app.add_subcommand("sample", "draw digit sequences");
    add_common(c_sample, opts);
    c_sample->add_option("--measure", measure, "lebesgue | xi")
        ->check(CLI::IsMember({"lebesgue", "xi"}))
        ->capture_default_str();
    c_sample->add_option("--dist", dist_path, "symbol distribution JSON (measure xi)");
    c_sample->add_flag("--expand-based", expand_based,
                       "use the 256-bit expand-based reference sampler");
    c_sample->add_option("--samples", opts.samples, "number of sequences")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c_sample->add_option("--depth", opts.depth, "digits per sequence")->capture_default_str();
    c_sample->add_option("--seed", opts.seed, "RNG seed")->capture_default_str();

    CLI::App* c_diag = app.add_subcommand(
        "diagnose", "finiteness + singularity-witness experiments with exact bounds");
    add_common(c_diag, opts);
    c_diag->add_option("--dist", dist_path, "symbol distribution JSON")->required();
    c_diag->add_option("--i0", i0, "target difference-symbol")->capture_default_str();
    c_diag->add_option("--window", window, "window: start m (>= 2), end N = sampling depth")
        ->expected(2);
    c_diag->add_option("--samples", opts.samples, "Monte Carlo samples per measure")
        ->check(CLI::PositiveNumber)
        ->default_val(100000L);
    c_diag->add_option("--seed", opts.seed, "RNG seed")->capture_default_str();
    c_diag->add_option("--threads", opts.threads, "worker threads (0 = hardware)")
        ->capture_default_str();

    CLI::App* c_val = app.add_subcommand("validate", "finite-range coefficient rule checks");
    add_common(c_val, opts);
    c_val->add_option("--n-max", n_max, "positions to check")->capture_default_str();
    c_val->add_option("--j-max", j_max, "denominators to check")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (opts.bit_budget > 0) roe::set_bit_budget(opts.bit_budget);
        if (app.got_subcommand(c_expand)) return run_expand(opts, x_text);
        if (app.got_subcommand(c_eval)) return run_eval(opts, digit_words);
        if (app.got_subcommand(c_cyl)) return run_cylinder(opts, digit_words);
        if (app.got_subcommand(c_trans)) return run_transition(opts, pos, x_text, k_text);
        if (app.got_subcommand(c_bounds)) return run_bounds(opts, window[0], window[1]);
        if (app.got_subcommand(c_sample))
            return run_sample(opts, measure, dist_path, expand_based);
        if (app.got_subcommand(c_diag))
            return run_diagnose(opts, dist_path, i0, window[0], window[1]);
        if (app.got_subcommand(c_val)) return run_validate(opts, n_max, j_max);
    } catch (const roe::HypothesisUnverified& e) {
        std::cerr << "hypothesis not satisfied: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
