#pragma once

/// Deterministic, seedable digit samplers.
///
/// Uniform draws are dyadic rationals r/2^64 (r nonzero), so every
/// inverse-CDF cell boundary is decided by exact integer arithmetic and a
/// given (seed, stream_id) produces the same digits on every platform.
/// Streams are independent substreams of one seed: the experiment layer
/// gives each Monte Carlo sample its own stream_id, which makes results
/// independent of thread scheduling.
///
/// Two routes to the Lebesgue digit law are provided: the Markov-chain
/// sampler (exact inverse CDF of the digit transition law) and a
/// reference sampler that draws a 256-bit dyadic uniform and expands it
/// digit by digit. They agree up to the 2^-256 discretization and the
/// test suite compares them statistically.

#include <cstdint>
#include <utility>
#include <vector>

#include "roe/expansion.hpp"
#include "roe/numeric.hpp"
#include "roe/system.hpp"

namespace roe {

// Splittable counter-style generator: the state starts at an avalanche
// mix of (seed, stream_id) and advances by the 64-bit golden ratio with a
// two-round finalizer per draw (splitmix64). Distinct stream ids land at
// scrambled, far-apart offsets of the underlying sequence.
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();
    // Next draw with zero rejected, i.e. uniform on [1, 2^64 - 1]:
    // interpreted as r/2^64 this is a uniform dyadic point of (0, 1).
    std::uint64_t next_nonzero_u64();

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    // Conventional substream ids: purpose tag in the high bits, sample
    // index in the low bits.
    static std::uint64_t compose_stream(std::uint64_t purpose, std::uint64_t index);

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_;
};

// Stream purposes used by the experiment layer.
inline constexpr std::uint64_t kStreamLebesgue = 0;
inline constexpr std::uint64_t kStreamXi = 1;
inline constexpr std::uint64_t kStreamExpand = 2;

// Inverse-CDF cell maps, exposed for exactness tests.
// First digit of the point r/2^64: floor(2^64/r) + 1.
Int first_digit_from_u64(std::uint64_t r);
// Transition draw: smallest k with CDF(k) = 1 - h/k >= r/2^64, i.e.
// ceil(h * 2^64 / (2^64 - r)); exact-integer boundaries keep the smaller
// digit. Always lands in [h+1, inf).
Int next_digit_from_u64(const Int& h, std::uint64_t r);

// One column of the symbol law: an explicit finite table on {1..m} or a
// geometric law p_i = (1-p)^{i-1} p on all of {1, 2, ...}.
class Pmf {
  public:
    enum class Kind { Table, Geometric };

    // p in (0, 1].
    static Pmf geometric(const Rat& p);
    // Nonnegative masses for symbols 1..m. An exact sum of 1 is accepted
    // as-is; a sum within 1e-12 of 1 (float input) is renormalized.
    static Pmf table(std::vector<Rat> masses);

    Kind kind() const { return kind_; }
    const Rat& geometric_p() const { return p_; }
    const std::vector<Rat>& masses() const { return masses_; }

    Rat mass(const Int& i) const;  // exact P(xi = i), zero off support
    bool is_point_mass() const;    // all mass on a single symbol

    // Inverse-CDF draw; throws SupportOverflow past support_cap.
    Int sample(RandomStream& rng, const Int& support_cap) const;

  private:
    Kind kind_ = Kind::Table;
    Rat p_;
    std::vector<Rat> masses_;
};

// Per-position symbol laws. With iid set, column 1 applies everywhere;
// otherwise the last column repeats past the end of the table.
class SymbolDistribution {
  public:
    static SymbolDistribution iid(Pmf pmf);
    static SymbolDistribution per_position(std::vector<Pmf> columns);

    bool is_iid() const { return iid_; }
    const std::vector<Pmf>& columns() const { return columns_; }
    const Pmf& column(long k) const;  // position k >= 1
    Rat mass(const Int& i, long k) const;
    bool is_point_mass() const;  // every column has a mass-1 atom

    const Int& support_cap() const { return support_cap_; }
    void set_support_cap(Int cap);

  private:
    bool iid_ = true;
    std::vector<Pmf> columns_;
    Int support_cap_ = Int(1'000'000'000);
};

// Markov-chain sampler for the Lebesgue digit law.
DigitSeq sample_lebesgue_digits(const ROESystem& sys, long depth, RandomStream& rng);

// Reference sampler: expands a 256-bit dyadic uniform.
DigitSeq sample_lebesgue_via_expand(const ROESystem& sys, long depth, RandomStream& rng);

// Independent difference-symbols drawn column by column, plus the digit
// sequence they encode.
std::pair<DiffDigitSeq, DigitSeq> sample_xi_digits(const ROESystem& sys,
                                                   const SymbolDistribution& dist, long depth,
                                                   RandomStream& rng);

}  // namespace roe
