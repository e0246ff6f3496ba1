#pragma once

/// Cylinder geometry and the exact digit process.
///
/// The set of reals whose first n digits equal a fixed admissible base is
/// an interval with rational endpoints; its length
/// (a_1...a_{n-1})/(b_1...b_{n-1}) * 1/(d_n(d_n-1)) is the Lebesgue
/// probability of the digit prefix. Lengths nest telescopically, which
/// makes the digit process a Markov chain with exactly computable
/// transition probabilities and lets us bound, level by level, how much
/// mass any single difference-symbol can occupy.

#include <utility>
#include <vector>

#include "roe/expansion.hpp"
#include "roe/numeric.hpp"
#include "roe/system.hpp"

namespace roe {

struct Cylinder {
    DigitSeq base;
    Rat inf;
    Rat sup;
    Rat length;  // == sup - inf, cross-checked against the closed form
};

// Builds the cylinder of an admissible base. Endpoints come from the
// series partial sums, the length from the closed form; the two routes
// are compared exactly and a mismatch is an internal error.
Cylinder cylinder_of(const ROESystem& sys, std::vector<Int> digits);

// P(d_1 = j) = 1/(j(j-1)).
Rat first_digit_prob(const Int& j);

// P(d_n = k | d_{n-1} = j): h_{n-1}(j)/(k(k-1)) for k > h_{n-1}(j), else 0.
Rat transition_prob(const ROESystem& sys, long n, const Int& j, const Int& k);

// Length ratio of the child with difference-symbol i to its parent ending
// in j_parent at position n: h/((h+i)(h+i-1)) with h = h_n(j_parent).
Rat child_ratio(const ROESystem& sys, long n, const Int& j_parent, const Int& i);

// Worst case of child_ratio over all admissible histories at level k:
// l_k = 1/(h_{k-1}(d_min[k-1]) + 1), valid when h is nondecreasing in j.
// Throws MonotonicityUnverified otherwise.
Rat uniform_bound_l(const ROESystem& sys, long k);

// l_from..l_to in one sweep (one growth-path computation).
std::vector<Rat> uniform_bounds_l(const ROESystem& sys, long from, long to);

enum class SumVerdict { Summable, NonSummable, Inconclusive };

const char* to_string(SumVerdict v);

struct TailSum {
    Rat sum;
    SumVerdict verdict = SumVerdict::Inconclusive;
    std::vector<Rat> terms;  // l_from..l_to
};

// Exact partial sum of l_k over [from, to] plus a finite-range convergence
// verdict: Summable when successive ratios stay <= 1/2, NonSummable when
// the terms never decrease, Inconclusive otherwise.
TailSum tail_sum_l(const ROESystem& sys, long from, long to);

}  // namespace roe
