#pragma once

/// Desk-scale measure-separation experiments.
///
/// The asymptotic statements (a digit occurs finitely often almost
/// surely; the symbol measure is singular) concern limsup sets that no
/// finite computation can observe. The harness therefore works with the
/// finite-window event E = "some symbol in positions [m, N] equals i0"
/// and produces two-sided exact bounds for it:
///
///   under the symbol measure, P(E) = 1 - prod (1 - p_{i0,n})  (exact),
///   under Lebesgue measure,   P(E) <= sum of the ratio bounds l_n.
///
/// When the exact lower value beats the exact upper bound and Monte
/// Carlo estimates sit inside their 3-sigma bands, the report records
/// SingularityEvidence. Sampling is parallel over per-sample substreams,
/// and every aggregate is an integer total, so reports are byte-stable
/// across runs and thread counts.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "roe/cylinder.hpp"
#include "roe/sampling.hpp"

namespace roe {

enum class Verdict { SingularityEvidence, HypothesisFails, Inconclusive };
enum class BCVerdict { Divergent, Convergent, Inconclusive };

const char* to_string(Verdict v);
const char* to_string(BCVerdict v);

struct MeasureStats {
    std::string measure;  // "lebesgue" or "xi"
    std::vector<std::uint32_t> per_sample_counts;
    std::map<std::uint32_t, std::uint64_t> histogram;  // count -> #samples
    std::uint64_t samples_with_hit = 0;
    std::uint64_t total_occurrences = 0;
    std::uint32_t max_count = 0;
    Rat hit_fraction;  // samples_with_hit / samples
    Rat mean_count;    // total_occurrences / samples
};

struct ExperimentReport {
    std::string experiment;
    std::string system_name;
    long i0 = 0;
    long window_from = 0;
    long window_to = 0;
    long depth = 0;
    long samples = 0;
    std::uint64_t seed = 0;

    std::vector<MeasureStats> stats;

    std::vector<Rat> l_terms;  // l_m..l_N
    Rat l_tail_sum;            // raw sum of l over the window (may exceed 1)
    Rat lambda_upper_bound;    // min(1, tail sum): an exact probability bound
    SumVerdict l_verdict = SumVerdict::Inconclusive;
    double lambda_band = 0;  // 3-sigma allowance around the bound
    bool lambda_bound_holds = false;

    bool has_mu = false;
    Rat mu_exact;  // 1 - prod(1 - p_{i0,n}) over the window
    double mu_band = 0;
    bool mu_within_band = false;
    bool dist_point_mass = false;  // every column concentrated on one symbol

    bool has_bc = false;
    Rat bc_partial_sum;  // sum_{k<=N} p_{i0,k}
    BCVerdict bc_verdict = BCVerdict::Inconclusive;

    Verdict verdict = Verdict::Inconclusive;
};

// Occurrence histogram of symbol i0 over window positions [m, N] (1-based,
// inclusive). Throws LengthMismatch when a sequence is shorter than N.
std::map<std::uint32_t, std::uint64_t> digit_occurrences(const std::vector<DiffDigitSeq>& seqs,
                                                         long i0, long m, long N);

// Lebesgue-side check: M sampled digit sequences to depth N, occurrences
// of i0 in [m, N], empirical hit fraction against the exact window bound
// sum l_k. Verdict HypothesisFails when the bounds are not summable on
// the range.
ExperimentReport finiteness_experiment(const ROESystem& sys, long i0, long M, long N, long m,
                                       std::uint64_t seed, int threads = 1);

// Exact partial sum of p_{i0,k} for k <= N with a divergence verdict
// (iid with positive mass diverges; otherwise a finite-range heuristic).
std::pair<Rat, BCVerdict> borel_cantelli_sums(const SymbolDistribution& dist, long i0, long N);

// Two-sided experiment for the window event E; see the header comment.
// Throws HypothesisUnverified unless the l-bounds are Summable on [m, N].
ExperimentReport singularity_witness(const ROESystem& sys, const SymbolDistribution& dist,
                                     long i0, long m, long N, long M, std::uint64_t seed,
                                     int threads = 1);

struct DiagnoseResult {
    ExperimentReport finiteness;
    ExperimentReport witness;
    Verdict verdict = Verdict::Inconclusive;
};

// finiteness_experiment + singularity_witness + borel_cantelli_sums over
// one window, sharing the seed. Propagates HypothesisUnverified.
DiagnoseResult diagnose(const ROESystem& sys, const SymbolDistribution& dist, long i0, long m,
                        long N, long M, std::uint64_t seed, int threads = 1);

}  // namespace roe
