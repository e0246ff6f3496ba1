#include "roe/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

namespace roe {

namespace {

// Evaluates per_sample(i) for i in [0, M) across `threads` workers.
// Results land at fixed indices, so the outcome does not depend on the
// thread count or on scheduling.
std::vector<std::uint32_t> parallel_counts(long M, int threads,
                                           const std::function<std::uint32_t(long)>& per_sample) {
    std::vector<std::uint32_t> counts(static_cast<std::size_t>(M));
    int nthreads = std::clamp(threads, 1, 256);
    if (nthreads == 1) {
        for (long i = 0; i < M; ++i) counts[static_cast<std::size_t>(i)] = per_sample(i);
        return counts;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    long chunk = (M + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
        long lo = t * chunk;
        long hi = std::min(M, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (long i = lo; i < hi; ++i) counts[static_cast<std::size_t>(i)] = per_sample(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return counts;
}

MeasureStats make_stats(std::string measure, std::vector<std::uint32_t> counts) {
    MeasureStats s;
    s.measure = std::move(measure);
    s.samples_with_hit = 0;
    s.total_occurrences = 0;
    s.max_count = 0;
    for (std::uint32_t c : counts) {
        ++s.histogram[c];
        s.samples_with_hit += (c > 0);
        s.total_occurrences += c;
        s.max_count = std::max(s.max_count, c);
    }
    long M = static_cast<long>(counts.size());
    s.hit_fraction = make_rat(Int(static_cast<unsigned long>(s.samples_with_hit)), Int(M));
    s.mean_count = make_rat(Int(static_cast<unsigned long>(s.total_occurrences)), Int(M));
    s.per_sample_counts = std::move(counts);
    return s;
}

std::uint32_t count_in_window(const std::vector<Int>& alphas, long i0, long m, long N) {
    std::uint32_t c = 0;
    for (long k = m; k <= N; ++k) c += (alphas[static_cast<std::size_t>(k - 1)] == i0);
    return c;
}

// True when h never decreases along admissible digit paths: h(d) >= d - 1
// pointwise gives h(d_{k+1}) >= d_{k+1} - 1 >= h(d_k). Holds structurally
// for the Engel and Sylvester rules.
bool h_nondecreasing_on_paths(const ROESystem& sys) {
    return sys.kind() == SystemKind::Engel || sys.kind() == SystemKind::Sylvester;
}

// Occurrence count of i0 over window [m, N] under the Lebesgue digit
// chain. Consumes the same stream prefix as sample_lebesgue_digits and
// produces exactly the count that to_difference of a full sample would:
// a transition from threshold h yields alpha = ceil(h*r/(2^64-r)) >=
// h/2^64, so once h > i0*2^64 every remaining symbol surely exceeds i0
// and (when h cannot decrease) the chain can stop.
std::uint32_t count_lebesgue_hits(const ROESystem& sys, long i0, long m, long N,
                                  RandomStream& rng) {
    const bool can_stop = h_nondecreasing_on_paths(sys);
    const Int threshold = Int(i0) << 64;
    Int d = first_digit_from_u64(rng.next_nonzero_u64());
    check_bits(d);
    std::uint32_t count = 0;
    if (m <= 1) count += (d - 1 == i0);
    for (long k = 2; k <= N; ++k) {
        Int h = sys.h(k - 1, d);
        if (can_stop && h > threshold) return count;
        d = next_digit_from_u64(h, rng.next_nonzero_u64());
        check_bits(d);
        if (k >= m) count += (d - h == i0);
    }
    return count;
}

// Occurrence count under the independent-symbol measure; the digit
// reconstruction of sample_xi_digits does not affect the symbols, so the
// count comes straight from the column draws (same stream order).
std::uint32_t count_xi_hits(const SymbolDistribution& dist, long i0, long m, long N,
                            RandomStream& rng) {
    std::uint32_t count = 0;
    for (long k = 1; k <= N; ++k) {
        Int a = dist.column(k).sample(rng, dist.support_cap());
        if (k >= m) count += (a == i0);
    }
    return count;
}

void require_window(long i0, long m, long N, long M) {
    if (i0 < 1) throw DomainError("target symbol i0 must be >= 1");
    if (m < 2) throw DomainError("window must start at position >= 2 (l_k needs a parent digit)");
    if (m >= N) throw DomainError("window start must precede the depth");
    if (M < 1) throw DomainError("sample count must be >= 1");
}

double band3(double p, long M) {
    p = std::clamp(p, 0.0, 1.0);
    return 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(M));
}

// Empirical fraction <= bound + 3 sigma, with the exact comparison tried first.
bool below_band(const Rat& fraction, const Rat& bound, double band) {
    if (fraction <= bound) return true;
    return fraction.get_d() <= bound.get_d() + band;
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::SingularityEvidence: return "SingularityEvidence";
        case Verdict::HypothesisFails: return "HypothesisFails";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

const char* to_string(BCVerdict v) {
    switch (v) {
        case BCVerdict::Divergent: return "Divergent";
        case BCVerdict::Convergent: return "Convergent";
        case BCVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::map<std::uint32_t, std::uint64_t> digit_occurrences(const std::vector<DiffDigitSeq>& seqs,
                                                         long i0, long m, long N) {
    if (i0 < 1) throw DomainError("target symbol i0 must be >= 1");
    if (m < 1 || m > N) throw DomainError("window must satisfy 1 <= m <= N");
    std::map<std::uint32_t, std::uint64_t> hist;
    for (const DiffDigitSeq& s : seqs) {
        if (static_cast<long>(s.alphas.size()) < N)
            throw LengthMismatch("sequence of length " + std::to_string(s.alphas.size()) +
                                 " is shorter than the window end " + std::to_string(N));
        ++hist[count_in_window(s.alphas, i0, m, N)];
    }
    return hist;
}

ExperimentReport finiteness_experiment(const ROESystem& sys, long i0, long M, long N, long m,
                                       std::uint64_t seed, int threads) {
    require_window(i0, m, N, M);

    ExperimentReport report;
    report.experiment = "finiteness";
    report.system_name = sys.name();
    report.i0 = i0;
    report.window_from = m;
    report.window_to = N;
    report.depth = N;
    report.samples = M;
    report.seed = seed;

    TailSum tail = tail_sum_l(sys, m, N);
    report.l_terms = tail.terms;
    report.l_tail_sum = tail.sum;
    report.lambda_upper_bound = std::min(tail.sum, Rat(1));
    report.l_verdict = tail.verdict;

    auto counts = parallel_counts(M, threads, [&](long idx) {
        RandomStream rng(seed, RandomStream::compose_stream(
                                   kStreamLebesgue, static_cast<std::uint64_t>(idx)));
        return count_lebesgue_hits(sys, i0, m, N, rng);
    });
    report.stats.push_back(make_stats("lebesgue", std::move(counts)));

    report.lambda_band = band3(report.lambda_upper_bound.get_d(), M);
    report.lambda_bound_holds = below_band(report.stats[0].hit_fraction,
                                           report.lambda_upper_bound, report.lambda_band);

    report.verdict = tail.verdict == SumVerdict::Summable ? Verdict::Inconclusive
                                                          : Verdict::HypothesisFails;
    return report;
}

std::pair<Rat, BCVerdict> borel_cantelli_sums(const SymbolDistribution& dist, long i0, long N) {
    if (i0 < 1) throw DomainError("target symbol i0 must be >= 1");
    if (N < 1) throw DomainError("position count must be >= 1");

    Rat partial(0);
    std::vector<Rat> terms;
    terms.reserve(static_cast<std::size_t>(N));
    for (long k = 1; k <= N; ++k) {
        terms.push_back(dist.mass(Int(i0), k));
        partial += terms.back();
    }
    partial.canonicalize();

    if (dist.is_iid())
        return {partial, terms[0] > 0 ? BCVerdict::Divergent : BCVerdict::Convergent};

    bool all_zero = true, any_zero = false;
    for (const Rat& t : terms) {
        all_zero = all_zero && t == 0;
        any_zero = any_zero || t == 0;
    }
    if (all_zero) return {partial, BCVerdict::Convergent};
    if (any_zero) return {partial, BCVerdict::Inconclusive};

    bool geometric = true, flat_or_up = true;
    for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
        if (terms[i + 1] * 2 > terms[i]) geometric = false;
        if (terms[i + 1] < terms[i]) flat_or_up = false;
    }
    if (geometric) return {partial, BCVerdict::Convergent};
    if (flat_or_up) return {partial, BCVerdict::Divergent};
    return {partial, BCVerdict::Inconclusive};
}

ExperimentReport singularity_witness(const ROESystem& sys, const SymbolDistribution& dist,
                                     long i0, long m, long N, long M, std::uint64_t seed,
                                     int threads) {
    require_window(i0, m, N, M);

    TailSum tail = tail_sum_l(sys, m, N);
    if (tail.verdict != SumVerdict::Summable)
        throw HypothesisUnverified(sys.name() + ": ratio bounds over [" + std::to_string(m) +
                                   ", " + std::to_string(N) + "] are " +
                                   to_string(tail.verdict) +
                                   "; the finiteness hypothesis is not established");

    ExperimentReport report;
    report.experiment = "singularity_witness";
    report.system_name = sys.name();
    report.i0 = i0;
    report.window_from = m;
    report.window_to = N;
    report.depth = N;
    report.samples = M;
    report.seed = seed;
    report.l_terms = tail.terms;
    report.l_tail_sum = tail.sum;
    report.lambda_upper_bound = std::min(tail.sum, Rat(1));
    report.l_verdict = tail.verdict;

    // Exact symbol-measure value of the window event, by independence.
    Rat miss(1);
    for (long n = m; n <= N; ++n) {
        miss *= 1 - dist.mass(Int(i0), n);
        miss.canonicalize();
    }
    report.has_mu = true;
    report.mu_exact = 1 - miss;
    report.mu_exact.canonicalize();
    report.dist_point_mass = dist.is_point_mass();

    auto [bc_sum, bc_verdict] = borel_cantelli_sums(dist, i0, N);
    report.has_bc = true;
    report.bc_partial_sum = bc_sum;
    report.bc_verdict = bc_verdict;

    auto lebesgue_counts = parallel_counts(M, threads, [&](long idx) {
        RandomStream rng(seed, RandomStream::compose_stream(
                                   kStreamLebesgue, static_cast<std::uint64_t>(idx)));
        return count_lebesgue_hits(sys, i0, m, N, rng);
    });
    auto xi_counts = parallel_counts(M, threads, [&](long idx) {
        RandomStream rng(seed, RandomStream::compose_stream(kStreamXi,
                                                            static_cast<std::uint64_t>(idx)));
        return count_xi_hits(dist, i0, m, N, rng);
    });
    report.stats.push_back(make_stats("lebesgue", std::move(lebesgue_counts)));
    report.stats.push_back(make_stats("xi", std::move(xi_counts)));

    report.lambda_band = band3(report.lambda_upper_bound.get_d(), M);
    report.lambda_bound_holds = below_band(report.stats[0].hit_fraction,
                                           report.lambda_upper_bound, report.lambda_band);

    report.mu_band = band3(report.mu_exact.get_d(), M);
    double mu_err = std::fabs(report.stats[1].hit_fraction.get_d() - report.mu_exact.get_d());
    report.mu_within_band = report.stats[1].hit_fraction == report.mu_exact ||
                            mu_err <= report.mu_band;

    bool separated = report.mu_exact > report.lambda_upper_bound;
    report.verdict = separated && report.lambda_bound_holds && report.mu_within_band
                         ? Verdict::SingularityEvidence
                         : Verdict::Inconclusive;
    return report;
}

DiagnoseResult diagnose(const ROESystem& sys, const SymbolDistribution& dist, long i0, long m,
                        long N, long M, std::uint64_t seed, int threads) {
    DiagnoseResult result;
    result.witness = singularity_witness(sys, dist, i0, m, N, M, seed, threads);
    result.finiteness = finiteness_experiment(sys, i0, M, N, m, seed, threads);
    result.verdict = result.witness.verdict;
    return result;
}

}  // namespace roe
