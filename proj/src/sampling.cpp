#include "roe/sampling.hpp"

namespace roe {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

const Int& two_pow_64() {
    static const Int v = [] {
        Int t;
        mpz_ui_pow_ui(t.get_mpz_t(), 2, 64);
        return t;
    }();
    return v;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    // Scrambling the stream id (rather than adding it) keeps neighbouring
    // streams from being shifted copies of each other.
    state_ = mix64(mix64(seed + kGolden) ^ mix64(stream_id + 0x632BE59BD9B4E019ULL));
}

std::uint64_t RandomStream::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

std::uint64_t RandomStream::next_nonzero_u64() {
    std::uint64_t r;
    do {
        r = next_u64();
    } while (r == 0);
    return r;
}

std::uint64_t RandomStream::compose_stream(std::uint64_t purpose, std::uint64_t index) {
    return (purpose << 48) | (index & ((1ULL << 48) - 1));
}

Int first_digit_from_u64(std::uint64_t r) {
    if (r == 0) throw DomainError("first_digit_from_u64: r must be nonzero");
    Int q;
    mpz_fdiv_q_ui(q.get_mpz_t(), two_pow_64().get_mpz_t(), r);
    return q + 1;
}

Int next_digit_from_u64(const Int& h, std::uint64_t r) {
    if (r == 0) throw DomainError("next_digit_from_u64: r must be nonzero");
    if (h < 1) throw DomainError("next_digit_from_u64: h must be >= 1");
    // ceil(h * 2^64 / (2^64 - r)); the divisor fits in 64 bits since r >= 1.
    std::uint64_t q64 = ~r + 1;  // 2^64 - r
    Int num = h << 64;
    Int k;
    mpz_cdiv_q_ui(k.get_mpz_t(), num.get_mpz_t(), q64);
    return k;
}

Pmf Pmf::geometric(const Rat& p) {
    if (p <= 0 || p > 1) throw DomainError("geometric parameter must lie in (0, 1]");
    Pmf out;
    out.kind_ = Kind::Geometric;
    out.p_ = p;
    return out;
}

Pmf Pmf::table(std::vector<Rat> masses) {
    if (masses.empty()) throw DomainError("pmf table must not be empty");
    Rat sum(0);
    for (const Rat& m : masses) {
        if (m < 0) throw DomainError("pmf mass must be nonnegative");
        sum += m;
    }
    sum.canonicalize();
    if (sum != 1) {
        // Tolerate float-derived tables that miss 1 by rounding noise.
        Rat err = sum - 1;
        if (abs(err) > make_rat(1, Int("1000000000000")))
            throw DomainError("pmf masses sum to " + rat_string(sum) + ", not 1");
        for (Rat& m : masses) {
            m /= sum;
            m.canonicalize();
        }
    }
    Pmf out;
    out.kind_ = Kind::Table;
    out.masses_ = std::move(masses);
    return out;
}

Rat Pmf::mass(const Int& i) const {
    if (i < 1) return Rat(0);
    if (kind_ == Kind::Table) {
        if (i > static_cast<unsigned long>(masses_.size())) return Rat(0);
        return masses_[i.get_ui() - 1];
    }
    // (1-p)^(i-1) * p; i is small in practice but guard the exponent.
    if (!i.fits_ulong_p()) throw DomainError("geometric mass index too large");
    Rat q = 1 - p_;
    Rat acc(1);
    for (unsigned long k = 1; k < i.get_ui(); ++k) acc *= q;
    acc *= p_;
    acc.canonicalize();
    return acc;
}

bool Pmf::is_point_mass() const {
    if (kind_ == Kind::Geometric) return p_ == 1;
    int nonzero = 0;
    for (const Rat& m : masses_) nonzero += (m != 0);
    return nonzero == 1;
}

Int Pmf::sample(RandomStream& rng, const Int& support_cap) const {
    std::uint64_t r = rng.next_nonzero_u64();
    Rat u = make_rat(Int(r), two_pow_64());

    if (kind_ == Kind::Table) {
        Rat cum(0);
        for (std::size_t i = 0; i < masses_.size(); ++i) {
            cum += masses_[i];
            if (cum >= u) return Int(i + 1);
        }
        return Int(masses_.size());  // unreachable: table sums to 1, u < 1
    }

    // Smallest i with (1-p)^i <= 1-u.
    Rat q = 1 - p_;
    q.canonicalize();
    Rat target = 1 - u;
    target.canonicalize();
    Int i(1);
    Rat acc = q;
    while (acc > target) {
        acc *= q;
        acc.canonicalize();
        i += 1;
        if (i > support_cap)
            throw SupportOverflow("geometric draw exceeded support cap " +
                                  support_cap.get_str());
    }
    return i;
}

SymbolDistribution SymbolDistribution::iid(Pmf pmf) {
    SymbolDistribution out;
    out.iid_ = true;
    out.columns_ = {std::move(pmf)};
    return out;
}

SymbolDistribution SymbolDistribution::per_position(std::vector<Pmf> columns) {
    if (columns.empty()) throw DomainError("symbol distribution needs at least one column");
    SymbolDistribution out;
    out.iid_ = false;
    out.columns_ = std::move(columns);
    return out;
}

const Pmf& SymbolDistribution::column(long k) const {
    if (k < 1) throw DomainError("column position must be >= 1");
    auto idx = static_cast<std::size_t>(k - 1);
    return columns_[std::min(idx, columns_.size() - 1)];
}

Rat SymbolDistribution::mass(const Int& i, long k) const { return column(k).mass(i); }

bool SymbolDistribution::is_point_mass() const {
    for (const Pmf& c : columns_)
        if (!c.is_point_mass()) return false;
    return true;
}

void SymbolDistribution::set_support_cap(Int cap) {
    if (cap < 1) throw DomainError("support cap must be >= 1");
    support_cap_ = std::move(cap);
}

DigitSeq sample_lebesgue_digits(const ROESystem& sys, long depth, RandomStream& rng) {
    if (depth < 1) throw DomainError("sample: depth must be >= 1");
    if (depth > max_depth()) throw DomainError("sample: depth exceeds the cap");
    DigitSeq out{sys, {}};
    out.digits.reserve(static_cast<std::size_t>(depth));
    out.digits.push_back(first_digit_from_u64(rng.next_nonzero_u64()));
    check_bits(out.digits.back());
    for (long k = 2; k <= depth; ++k) {
        Int h = sys.h(k - 1, out.digits.back());
        out.digits.push_back(next_digit_from_u64(h, rng.next_nonzero_u64()));
        check_bits(out.digits.back());
    }
    return out;
}

DigitSeq sample_lebesgue_via_expand(const ROESystem& sys, long depth, RandomStream& rng) {
    if (depth < 1) throw DomainError("sample: depth must be >= 1");
    // 256-bit dyadic uniform in (0, 1).
    Int r(0);
    do {
        for (int limb = 0; limb < 4; ++limb) {
            r <<= 64;
            r += Int(rng.next_u64());
        }
    } while (r == 0);
    Int den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, 256);
    return expand(sys, make_rat(std::move(r), std::move(den)), depth);
}

std::pair<DiffDigitSeq, DigitSeq> sample_xi_digits(const ROESystem& sys,
                                                   const SymbolDistribution& dist, long depth,
                                                   RandomStream& rng) {
    if (depth < 1) throw DomainError("sample: depth must be >= 1");
    if (depth > max_depth()) throw DomainError("sample: depth exceeds the cap");
    DiffDigitSeq alphas{sys, {}};
    alphas.alphas.reserve(static_cast<std::size_t>(depth));
    for (long k = 1; k <= depth; ++k)
        alphas.alphas.push_back(dist.column(k).sample(rng, dist.support_cap()));
    DigitSeq digits = from_difference(alphas);
    return {std::move(alphas), std::move(digits)};
}

}  // namespace roe
