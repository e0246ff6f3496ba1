#include <doctest.h>

#include <cmath>
#include <map>

#include "roe/cylinder.hpp"
#include "roe/sampling.hpp"

using namespace roe;

namespace {

Rat q(long num, long den) { return make_rat(Int(num), Int(den)); }

}  // namespace

TEST_CASE("streams are reproducible and distinct") {
    RandomStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    std::uint64_t first_a = a.next_u64();
    CHECK(first_a == b.next_u64());
    CHECK(first_a != c.next_u64());
    CHECK(first_a != d.next_u64());

    // Neighbouring stream ids must not be shifted copies of each other.
    RandomStream s0(9, 0), s1(9, 1);
    std::uint64_t v0[4], v1[4];
    for (int i = 0; i < 4; ++i) v0[i] = s0.next_u64();
    for (int i = 0; i < 4; ++i) v1[i] = s1.next_u64();
    CHECK(v0[1] != v1[0]);
    CHECK(v0[2] != v1[1]);
}

TEST_CASE("first digit inverse map") {
    // u = r/2^64; d_1 = floor(1/u) + 1.
    CHECK(first_digit_from_u64(UINT64_C(0xE666666666666666)) == 2);  // u ~ 0.9
    CHECK(first_digit_from_u64(UINT64_C(1) << 63) == 3);             // u = 1/2 exactly
    CHECK(first_digit_from_u64(UINT64_C(0xFFFFFFFFFFFFFFFF)) == 2);  // u just below 1
    CHECK(first_digit_from_u64(1) == Int("18446744073709551617"));   // 2^64 + 1

    // Exact cell boundaries: r in (2^64/j, 2^64/(j-1)] maps to digit j.
    Int two64 = Int(1) << 64;
    for (long j = 2; j <= 50; ++j) {
        Int lo = two64 / j;        // floor
        Int hi = two64 / (j - 1);  // floor; for j = 2 this is 2^64, outside u < 1
        CHECK(first_digit_from_u64(lo.get_ui() + 1) == j);
        if (j > 2) {
            CHECK(first_digit_from_u64(hi.get_ui()) == j);
            CHECK(first_digit_from_u64(hi.get_ui() + 1) == j - 1);
        }
    }
}

TEST_CASE("transition inverse map") {
    // Exact integer boundary keeps the smaller digit: h = 2, u = 1/2 gives
    // h/(1-u) = 4, the smallest digit whose CDF reaches 1/2.
    CHECK(next_digit_from_u64(Int(2), UINT64_C(1) << 63) == 4);
    CHECK(next_digit_from_u64(Int(2), (UINT64_C(1) << 63) + 1) == 5);
    CHECK(next_digit_from_u64(Int(2), (UINT64_C(1) << 63) - 1) == 4);

    // Any draw lands strictly above h.
    RandomStream rng(3, 0);
    for (int trial = 0; trial < 1000; ++trial) {
        Int h(1 + static_cast<long>(rng.next_u64() % 1000));
        Int k = next_digit_from_u64(h, rng.next_nonzero_u64());
        CHECK(k >= h + 1);
    }

    // Tiny u maps to the smallest admissible digit h+1.
    CHECK(next_digit_from_u64(Int(7), 1) == 8);
}

TEST_CASE("transition cells have the exact telescoped widths") {
    // A draw r maps to a digit <= k iff r <= 2^64 - ceil(2^64 h / k), i.e.
    // the cell of digit k is an exact integer interval whose width over
    // 2^64 telescopes to h/(k(k-1)). Check the flip at each boundary.
    Int two64 = Int(1) << 64;
    for (long hval : {1L, 2L, 6L, 42L}) {
        Int h(hval);
        for (Int k = h + 2; k <= h + 30; ++k) {
            Int r_hi = two64 - (two64 * h + k - 1) / k;  // 2^64 - ceil(2^64 h / k)
            CHECK(next_digit_from_u64(h, r_hi.get_ui()) <= k);
            CHECK(next_digit_from_u64(h, r_hi.get_ui() + 1) == k + 1);
        }
    }
}

TEST_CASE("markov sampler determinism and admissibility") {
    ROESystem sys = ROESystem::sylvester();
    RandomStream r1(99, 5), r2(99, 5);
    DigitSeq a = sample_lebesgue_digits(sys, 8, r1);
    DigitSeq b = sample_lebesgue_digits(sys, 8, r2);
    CHECK(a.digits == b.digits);
    CHECK(is_admissible(sys, a.digits));
}

TEST_CASE("expand-based sampler determinism") {
    ROESystem sys = ROESystem::sylvester();
    RandomStream r1(17, 2), r2(17, 2);
    CHECK(sample_lebesgue_via_expand(sys, 5, r1).digits ==
          sample_lebesgue_via_expand(sys, 5, r2).digits);
}

TEST_CASE("first digit marginal matches the exact law") {
    long M = 200000;
    std::map<long, long> freq;
    for (long i = 0; i < M; ++i) {
        RandomStream rng(1234, RandomStream::compose_stream(kStreamLebesgue, i));
        DigitSeq d = sample_lebesgue_digits(ROESystem::sylvester(), 1, rng);
        if (d.digits[0] <= 8) ++freq[static_cast<long>(d.digits[0].get_ui())];
    }
    for (long j = 2; j <= 6; ++j) {
        double p = 1.0 / static_cast<double>(j * (j - 1));
        double sigma = std::sqrt(p * (1 - p) / static_cast<double>(M));
        double emp = static_cast<double>(freq[j]) / static_cast<double>(M);
        CHECK(std::fabs(emp - p) <= 3 * sigma);
    }
}

TEST_CASE("expand-based sampler matches the first digit law") {
    long M = 20000;
    long count2 = 0;
    for (long i = 0; i < M; ++i) {
        RandomStream rng(321, RandomStream::compose_stream(kStreamExpand, i));
        DigitSeq d = sample_lebesgue_via_expand(ROESystem::sylvester(), 1, rng);
        count2 += d.digits[0] == 2;
    }
    double emp = static_cast<double>(count2) / static_cast<double>(M);
    double sigma = std::sqrt(0.25 / static_cast<double>(M));
    CHECK(std::fabs(emp - 0.5) <= 3 * sigma);
}

TEST_CASE("pmf construction and masses") {
    Pmf geo = Pmf::geometric(q(1, 2));
    CHECK(geo.mass(Int(1)) == q(1, 2));
    CHECK(geo.mass(Int(3)) == q(1, 8));
    CHECK(geo.mass(Int(0)) == 0);
    CHECK_FALSE(geo.is_point_mass());
    CHECK(Pmf::geometric(Rat(1)).is_point_mass());
    CHECK_THROWS_AS(Pmf::geometric(Rat(0)), DomainError);
    CHECK_THROWS_AS(Pmf::geometric(q(3, 2)), DomainError);

    Pmf table = Pmf::table({q(1, 2), q(1, 4), q(1, 4)});
    CHECK(table.mass(Int(2)) == q(1, 4));
    CHECK(table.mass(Int(4)) == 0);
    CHECK_THROWS_AS(Pmf::table({q(1, 2), q(1, 4)}), DomainError);
    CHECK_THROWS_AS(Pmf::table({q(3, 2), q(-1, 2)}), DomainError);

    // Float-derived masses that miss 1 by rounding noise are renormalized.
    Rat eps = make_rat(Int(1), Int(1) << 50);
    Pmf renorm = Pmf::table({q(1, 2) + eps, q(1, 2)});
    Rat total = renorm.mass(Int(1)) + renorm.mass(Int(2));
    total.canonicalize();
    CHECK(total == 1);

    CHECK(Pmf::table({Rat(0), Rat(1)}).is_point_mass());
}

TEST_CASE("geometric sampling is the exact inverse CDF") {
    // alpha = i iff (1-p)^i <= 1-u < (1-p)^(i-1).
    Pmf geo = Pmf::geometric(q(1, 2));
    Int cap(1000000000);
    // u = 1/2 exactly: (1/2)^1 <= 1/2 holds, so alpha = 1 (boundary to the
    // smaller symbol).
    std::map<long, long> freq;
    long M = 1000000;
    long bad = 0;
    for (long i = 0; i < M; ++i) {
        RandomStream rng(555, RandomStream::compose_stream(kStreamXi, i));
        Int a = geo.sample(rng, cap);
        bad += a < 1;
        ++freq[static_cast<long>(a.get_ui())];
    }
    CHECK(bad == 0);
    for (long v = 1; v <= 4; ++v) {
        double p = std::pow(0.5, v);
        double sigma = std::sqrt(p * (1 - p) / static_cast<double>(M));
        double emp = static_cast<double>(freq[v]) / static_cast<double>(M);
        CHECK(std::fabs(emp - p) <= 3 * sigma);
    }
}

TEST_CASE("table sampling frequencies") {
    Pmf table = Pmf::table({q(1, 2), q(1, 4), q(1, 4)});
    Int cap(1000);
    std::map<long, long> freq;
    long M = 60000;
    for (long i = 0; i < M; ++i) {
        RandomStream rng(777, i);
        ++freq[static_cast<long>(table.sample(rng, cap).get_ui())];
    }
    double expected[4] = {0, 0.5, 0.25, 0.25};
    for (long v = 1; v <= 3; ++v) {
        double p = expected[v];
        double sigma = std::sqrt(p * (1 - p) / static_cast<double>(M));
        CHECK(std::fabs(static_cast<double>(freq[v]) / M - p) <= 3.5 * sigma);
    }
}

TEST_CASE("support cap overflows deterministically") {
    Pmf geo = Pmf::geometric(q(1, 100));
    Int cap(3);
    bool threw = false;
    for (long i = 0; i < 200 && !threw; ++i) {
        RandomStream rng(31337, i);
        try {
            geo.sample(rng, cap);
        } catch (const SupportOverflow&) {
            threw = true;
        }
    }
    CHECK(threw);
}

TEST_CASE("point mass symbols walk the minimal growth path") {
    SymbolDistribution dist = SymbolDistribution::iid(Pmf::table({Rat(1)}));
    ROESystem sys = ROESystem::sylvester();
    RandomStream rng(1, 1);
    auto [alphas, digits] = sample_xi_digits(sys, dist, 6, rng);
    for (const Int& a : alphas.alphas) CHECK(a == 1);
    CHECK(digits.digits == min_growth_path(sys, 6));
}

TEST_CASE("xi sampler reproducibility and support") {
    SymbolDistribution dist = SymbolDistribution::iid(Pmf::geometric(q(1, 3)));
    ROESystem sys = ROESystem::luroth();
    RandomStream r1(6, 4), r2(6, 4);
    auto s1 = sample_xi_digits(sys, dist, 10, r1);
    auto s2 = sample_xi_digits(sys, dist, 10, r2);
    CHECK(s1.first.alphas == s2.first.alphas);
    CHECK(s1.second.digits == s2.second.digits);
    for (const Int& a : s1.first.alphas) CHECK(a >= 1);
    CHECK(is_admissible(sys, s1.second.digits));
}

TEST_CASE("xi symbols at different positions are uncorrelated") {
    SymbolDistribution dist = SymbolDistribution::iid(Pmf::geometric(q(1, 2)));
    ROESystem sys = ROESystem::luroth();
    long M = 100000;
    long n1 = 0, n2 = 0, n12 = 0;
    for (long i = 0; i < M; ++i) {
        RandomStream rng(2024, RandomStream::compose_stream(kStreamXi, i));
        auto [alphas, digits] = sample_xi_digits(sys, dist, 2, rng);
        bool a1 = alphas.alphas[0] == 1;
        bool a2 = alphas.alphas[1] == 1;
        n1 += a1;
        n2 += a2;
        n12 += a1 && a2;
    }
    double p1 = static_cast<double>(n1) / M, p2 = static_cast<double>(n2) / M;
    double cov = static_cast<double>(n12) / M - p1 * p2;
    double corr = cov / std::sqrt(p1 * (1 - p1) * p2 * (1 - p2));
    CHECK(std::fabs(corr) <= 3.0 / std::sqrt(static_cast<double>(M)));
}

TEST_CASE("per-position columns: last column repeats") {
    SymbolDistribution dist = SymbolDistribution::per_position(
        {Pmf::table({Rat(1)}), Pmf::table({Rat(0), Rat(1)})});
    CHECK(dist.mass(Int(1), 1) == 1);
    CHECK(dist.mass(Int(2), 2) == 1);
    CHECK(dist.mass(Int(2), 9) == 1);
}

TEST_CASE("samplers reject bad depth") {
    ROESystem sys = ROESystem::engel();
    RandomStream rng(0, 0);
    CHECK_THROWS_AS(sample_lebesgue_digits(sys, 0, rng), DomainError);
    SymbolDistribution dist = SymbolDistribution::iid(Pmf::geometric(q(1, 2)));
    CHECK_THROWS_AS(sample_xi_digits(sys, dist, 0, rng), DomainError);
}
