#pragma once

/// Exact arithmetic foundations: GMP-backed integers and rationals, the
/// global bit budget, and exact string conversion in both directions.
///
/// Everything downstream computes in `Int`/`Rat`; floating point appears
/// only at the presentation layer (`decimal_string`) and in statistical
/// band checks.

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "roe/errors.hpp"

namespace roe {

using Int = mpz_class;
using Rat = mpq_class;

// Hard cap on the bit length of any integer produced by expansion, digit
// sampling or growth paths. Digits of fast-growing systems double in bit
// length per level, so a runaway depth would otherwise exhaust memory.
constexpr std::int64_t kDefaultBitBudget = 1'000'000;

// Depth cap for digit extraction and sampling.
constexpr long kDefaultMaxDepth = 64;

std::int64_t bit_budget();
void set_bit_budget(std::int64_t bits);

long max_depth();
void set_max_depth(long depth);

// Throws BitSizeExceeded if |v| takes more bits than the budget allows.
void check_bits(const Int& v);
void check_bits(const Rat& v);

// Canonical rational from a numerator/denominator pair; den must be nonzero.
Rat make_rat(Int num, Int den);

// Accepts "p/q", integers, and decimal literals with optional exponent
// ("1/3", "42", "0.25", "2.5e-3"). The conversion is exact.
Rat parse_rational(const std::string& text);

// "p/q" with the canonical (coprime, positive-denominator) pair.
std::string rat_string(const Rat& v);

// Round-half-up decimal rendering with `sig_digits` significant digits,
// formatted like printf %g (fixed inside [1e-4, 10^sig), scientific
// otherwise). Exact integer arithmetic throughout, so the result is
// platform-independent.
std::string decimal_string(const Rat& v, int sig_digits = 30);

}  // namespace roe
