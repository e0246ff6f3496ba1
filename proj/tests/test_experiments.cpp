#include <doctest.h>

#include "roe/experiments.hpp"
#include "roe/json_io.hpp"

using namespace roe;

namespace {

Rat q(long num, long den) { return make_rat(Int(num), Int(den)); }

DiffDigitSeq alphas_of(const ROESystem& sys, std::vector<long> v) {
    DiffDigitSeq out{sys, {}};
    for (long x : v) out.alphas.emplace_back(x);
    return out;
}

SymbolDistribution geometric_half() {
    return SymbolDistribution::iid(Pmf::geometric(q(1, 2)));
}

}  // namespace

TEST_CASE("digit_occurrences fixtures") {
    ROESystem sys = ROESystem::luroth();
    std::vector<DiffDigitSeq> ones(4, alphas_of(sys, {1, 1, 1, 1, 1}));
    auto hist = digit_occurrences(ones, 1, 1, 5);
    CHECK(hist.size() == 1);
    CHECK(hist.at(5) == 4);

    // The minimal growth path has difference form (1,1,...): no 2s anywhere.
    auto none = digit_occurrences({alphas_of(sys, {1, 1, 1, 1, 1})}, 2, 1, 5);
    CHECK(none.at(0) == 1);

    std::vector<DiffDigitSeq> mixed = {alphas_of(sys, {3, 1, 3, 2, 3}),
                                       alphas_of(sys, {1, 1, 1, 2, 2}),
                                       alphas_of(sys, {2, 3, 3, 3, 1})};
    auto counted = digit_occurrences(mixed, 3, 2, 5);  // counts in positions 2..5
    CHECK(counted.at(2) == 1);  // first sequence: positions 3 and 5
    CHECK(counted.at(0) == 1);  // second: none
    CHECK(counted.at(3) == 1);  // third: positions 2, 3, 4

    // Totals add up to the number of sequences.
    std::uint64_t total = 0;
    for (const auto& [count, n] : counted) total += n;
    CHECK(total == 3);

    CHECK_THROWS_AS(digit_occurrences(mixed, 3, 2, 6), LengthMismatch);
    CHECK_THROWS_AS(digit_occurrences(mixed, 0, 2, 5), DomainError);
    CHECK_THROWS_AS(digit_occurrences(mixed, 3, 0, 5), DomainError);
}

TEST_CASE("borel_cantelli_sums") {
    auto [sum, verdict] = borel_cantelli_sums(geometric_half(), 1, 100);
    CHECK(sum == 50);
    CHECK(verdict == BCVerdict::Divergent);

    // Columns with p_{i0,k} = 2^-k: partial sum below 1, convergent.
    std::vector<Pmf> cols;
    Rat mass = q(1, 2);
    for (int k = 1; k <= 30; ++k) {
        cols.push_back(Pmf::table({mass, 1 - mass}));
        mass /= 2;
        mass.canonicalize();
    }
    auto [sum2, verdict2] =
        borel_cantelli_sums(SymbolDistribution::per_position(cols), 1, 30);
    CHECK(sum2 < 1);
    CHECK(sum2 == 1 - make_rat(Int(1), Int(1) << 30));
    CHECK(verdict2 == BCVerdict::Convergent);

    // iid with zero mass at i0.
    auto [sum3, verdict3] =
        borel_cantelli_sums(SymbolDistribution::iid(Pmf::table({Rat(0), Rat(1)})), 1, 50);
    CHECK(sum3 == 0);
    CHECK(verdict3 == BCVerdict::Convergent);

    // Constant positive non-iid columns count as divergent.
    auto [sum4, verdict4] = borel_cantelli_sums(
        SymbolDistribution::per_position({Pmf::table({q(1, 3), q(2, 3)})}), 2, 12);
    CHECK(sum4 == 8);
    CHECK(verdict4 == BCVerdict::Divergent);
}

TEST_CASE("finiteness experiment on sylvester") {
    ExperimentReport report =
        finiteness_experiment(ROESystem::sylvester(), 1, 4000, 10, 4, 90210, 4);
    CHECK(report.l_verdict == SumVerdict::Summable);
    CHECK(report.verdict == Verdict::Inconclusive);
    CHECK(report.lambda_bound_holds);
    CHECK(report.lambda_upper_bound < q(24, 1000));
    CHECK(report.lambda_upper_bound > q(23, 1000));
    CHECK(report.stats.size() == 1);
    CHECK(report.stats[0].per_sample_counts.size() == 4000);

    // Histogram masses add up to the sample count.
    std::uint64_t total = 0;
    for (const auto& [count, n] : report.stats[0].histogram) total += n;
    CHECK(total == 4000);
}

TEST_CASE("finiteness experiment flags engel") {
    ExperimentReport report = finiteness_experiment(ROESystem::engel(), 1, 500, 10, 4, 1, 2);
    CHECK(report.verdict == Verdict::HypothesisFails);
    CHECK(report.l_verdict == SumVerdict::NonSummable);
    // The raw tail sum exceeds 1; the probability bound is clamped to it.
    CHECK(report.l_tail_sum == q(7, 2));
    CHECK(report.lambda_upper_bound == 1);
}

TEST_CASE("finiteness experiment argument checks") {
    ROESystem sys = ROESystem::sylvester();
    CHECK_THROWS_AS(finiteness_experiment(sys, 0, 10, 10, 4, 0), DomainError);
    CHECK_THROWS_AS(finiteness_experiment(sys, 1, 10, 10, 1, 0), DomainError);
    CHECK_THROWS_AS(finiteness_experiment(sys, 1, 10, 4, 4, 0), DomainError);
    CHECK_THROWS_AS(finiteness_experiment(sys, 1, 0, 10, 4, 0), DomainError);
}

TEST_CASE("singularity witness separates the measures") {
    ExperimentReport report = singularity_witness(ROESystem::sylvester(), geometric_half(), 1,
                                                  4, 20, 3000, 777, 4);
    CHECK(report.mu_exact == 1 - make_rat(Int(1), Int(1) << 17));
    CHECK(report.lambda_upper_bound < q(24, 1000));
    CHECK(report.mu_exact > report.lambda_upper_bound);
    CHECK(report.mu_within_band);
    CHECK(report.lambda_bound_holds);
    CHECK(report.verdict == Verdict::SingularityEvidence);
    CHECK(report.bc_verdict == BCVerdict::Divergent);
    CHECK(report.stats.size() == 2);
    CHECK(report.stats[0].measure == "lebesgue");
    CHECK(report.stats[1].measure == "xi");
    CHECK_FALSE(report.dist_point_mass);

    // Bound fields are exact probabilities.
    CHECK(report.mu_exact >= 0);
    CHECK(report.mu_exact <= 1);
    CHECK(report.lambda_upper_bound >= 0);
    CHECK(report.lambda_upper_bound <= 1);
}

TEST_CASE("singularity witness refuses engel") {
    CHECK_THROWS_AS(
        singularity_witness(ROESystem::engel(), geometric_half(), 1, 4, 20, 100, 0),
        HypothesisUnverified);
}

TEST_CASE("witness with mass-zero target symbol is inconclusive") {
    SymbolDistribution dist = SymbolDistribution::iid(Pmf::table({Rat(0), Rat(1)}));
    ExperimentReport report =
        singularity_witness(ROESystem::sylvester(), dist, 1, 4, 12, 400, 5, 2);
    CHECK(report.mu_exact == 0);
    CHECK(report.verdict == Verdict::Inconclusive);
    CHECK(report.stats[1].samples_with_hit == 0);
    CHECK(report.dist_point_mass);  // all mass on symbol 2
}

TEST_CASE("experiment counts match full sampler runs") {
    // The experiment workers count occurrences without materializing the
    // whole sequence; their per-sample counts must agree with counting on
    // the full samplers over the same substreams.
    ROESystem sys = ROESystem::sylvester();
    SymbolDistribution dist = geometric_half();
    long M = 200, N = 12, m = 4, i0 = 1;
    ExperimentReport report = singularity_witness(sys, dist, i0, m, N, M, 4242, 2);

    for (long idx = 0; idx < M; ++idx) {
        RandomStream leb(4242, RandomStream::compose_stream(kStreamLebesgue,
                                                            static_cast<std::uint64_t>(idx)));
        DiffDigitSeq alphas = to_difference(sample_lebesgue_digits(sys, N, leb));
        std::uint32_t expected = 0;
        for (long k = m; k <= N; ++k)
            expected += alphas.alphas[static_cast<std::size_t>(k - 1)] == i0;
        CHECK(report.stats[0].per_sample_counts[static_cast<std::size_t>(idx)] == expected);

        RandomStream xi(4242, RandomStream::compose_stream(kStreamXi,
                                                           static_cast<std::uint64_t>(idx)));
        auto [xa, xd] = sample_xi_digits(sys, dist, N, xi);
        expected = 0;
        for (long k = m; k <= N; ++k)
            expected += xa.alphas[static_cast<std::size_t>(k - 1)] == i0;
        CHECK(report.stats[1].per_sample_counts[static_cast<std::size_t>(idx)] == expected);
    }

    // Engel digits grow too slowly for any shortcut; the agreement must
    // still hold on the plain path.
    ROESystem engel = ROESystem::engel();
    ExperimentReport slow = finiteness_experiment(engel, 1, 100, N, m, 777, 2);
    for (long idx = 0; idx < 100; ++idx) {
        RandomStream leb(777, RandomStream::compose_stream(kStreamLebesgue,
                                                           static_cast<std::uint64_t>(idx)));
        DiffDigitSeq alphas = to_difference(sample_lebesgue_digits(engel, N, leb));
        std::uint32_t expected = 0;
        for (long k = m; k <= N; ++k)
            expected += alphas.alphas[static_cast<std::size_t>(k - 1)] == i0;
        CHECK(slow.stats[0].per_sample_counts[static_cast<std::size_t>(idx)] == expected);
    }
}

TEST_CASE("lambda bound tail shrinks as the window start grows") {
    ROESystem sys = ROESystem::sylvester();
    Rat prev = tail_sum_l(sys, 4, 20).sum;
    for (long m = 5; m <= 10; ++m) {
        Rat cur = tail_sum_l(sys, m, 20).sum;
        CHECK(cur < prev);
        prev = cur;
    }
    // while the exact mu value grows with the window length (iid case).
    SymbolDistribution dist = geometric_half();
    Rat mu_prev(0);
    for (long N = 6; N <= 12; ++N) {
        Rat miss(1);
        for (long n = 4; n <= N; ++n) miss *= 1 - dist.mass(Int(1), n);
        Rat mu = 1 - miss;
        mu.canonicalize();
        CHECK(mu > mu_prev);
        mu_prev = mu;
    }
}

TEST_CASE("reports are deterministic across runs and thread counts") {
    ROESystem sys = ROESystem::sylvester();
    SymbolDistribution dist = geometric_half();
    DiagnoseResult a = diagnose(sys, dist, 1, 4, 12, 600, 42, 1);
    DiagnoseResult b = diagnose(sys, dist, 1, 4, 12, 600, 42, 8);
    DiagnoseResult c = diagnose(sys, dist, 1, 4, 12, 600, 42, 8);

    std::string ja = diagnose_to_json(a, 30).dump(2);
    std::string jb = diagnose_to_json(b, 30).dump(2);
    std::string jc = diagnose_to_json(c, 30).dump(2);
    CHECK(ja == jb);
    CHECK(jb == jc);

    std::string csv = diagnose_to_csv(a);
    CHECK(csv == diagnose_to_csv(b));
    CHECK(csv.find("finiteness,lebesgue,0,") != std::string::npos);
    CHECK(csv.find("singularity_witness,xi,599,") != std::string::npos);
}

TEST_CASE("diagnose verdict mirrors the witness") {
    DiagnoseResult result =
        diagnose(ROESystem::sylvester(), geometric_half(), 1, 4, 12, 300, 9, 2);
    CHECK(result.verdict == result.witness.verdict);
    CHECK(result.verdict == Verdict::SingularityEvidence);
    CHECK(result.finiteness.experiment == "finiteness");
    CHECK(result.witness.experiment == "singularity_witness");
}
