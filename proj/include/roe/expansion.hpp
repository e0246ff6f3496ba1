#pragma once

/// Digit extraction and evaluation.
///
/// expand() peels digits off an exact rational: x_1 = x,
/// d_k = floor(1/x_k) + 1, x_{k+1} = (b_k/a_k)(x_k - 1/d_k). Because
/// d_k > 1/x_k strictly, the remainder never vanishes; the sequence is cut
/// at the requested depth. Remainders live in (0, 1]: a remainder of
/// exactly 1 is reachable (Luroth of 1/2) and handled by the same formula.
///
/// evaluate() sums the series prefix; the result is the left endpoint of
/// the cylinder of the digit prefix, and replacing the final 1/d_n by
/// 1/(d_n - 1) gives the right endpoint.
///
/// The difference coding maps digits to unconstrained positive symbols:
/// alpha_1 = d_1 - 1, alpha_{k+1} = d_{k+1} - h_k(d_k). It is a bijection
/// between admissible digit sequences and sequences of integers >= 1.

#include <span>
#include <utility>
#include <vector>

#include "roe/numeric.hpp"
#include "roe/system.hpp"

namespace roe {

struct DigitSeq {
    ROESystem system;
    std::vector<Int> digits;
};

struct DiffDigitSeq {
    ROESystem system;
    std::vector<Int> alphas;
};

// True iff d_1 >= 2 and d_{k+1} >= h_k(d_k) + 1 for every k.
bool is_admissible(const ROESystem& sys, std::span<const Int> digits);

// First `depth` digits of x in (0,1). Throws DomainError outside the open
// interval or past the depth cap, BitSizeExceeded on runaway growth.
DigitSeq expand(const ROESystem& sys, const Rat& x, long depth);

// expand() plus the intermediate state: remainders x_1..x_{depth+1} and
// the coefficient products (a_1...a_k)/(b_1...b_k) for k = 0..depth.
struct ExpansionTrace {
    DigitSeq digits;
    std::vector<Rat> remainders;
    std::vector<Rat> coeff_products;
};
ExpansionTrace expand_trace(const ROESystem& sys, const Rat& x, long depth);

// Partial sum 1/d_1 + sum_{k>=2} (a_1...a_{k-1})/(b_1...b_{k-1}) / d_k.
Rat evaluate(const DigitSeq& seq);

// (inf, sup) of the set of reals sharing this digit prefix.
std::pair<Rat, Rat> evaluate_interval(const DigitSeq& seq);

DiffDigitSeq to_difference(const DigitSeq& seq);
DigitSeq from_difference(const DiffDigitSeq& seq);

}  // namespace roe
