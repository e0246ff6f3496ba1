#include "roe/cylinder.hpp"

namespace roe {

Cylinder cylinder_of(const ROESystem& sys, std::vector<Int> digits) {
    DigitSeq base{sys, std::move(digits)};
    auto [inf, sup] = evaluate_interval(base);

    // Closed form: (a_1...a_{n-1})/(b_1...b_{n-1}) / (d_n (d_n - 1)).
    Rat coeff(1);
    for (std::size_t k = 1; k < base.digits.size(); ++k) {
        long n = static_cast<long>(k);
        coeff *= make_rat(sys.a(n, base.digits[k - 1]), sys.b(n, base.digits[k - 1]));
    }
    const Int& d = base.digits.back();
    Rat length = coeff * make_rat(1, d * (d - 1));
    length.canonicalize();

    if (sup - inf != length)
        throw Error("internal: cylinder endpoints disagree with the closed-form length");
    return Cylinder{std::move(base), std::move(inf), std::move(sup), std::move(length)};
}

Rat first_digit_prob(const Int& j) {
    if (j < 2) throw DomainError("first_digit_prob: j must be >= 2");
    return make_rat(1, j * (j - 1));
}

Rat transition_prob(const ROESystem& sys, long n, const Int& j, const Int& k) {
    if (n < 2) throw DomainError("transition_prob: position must be >= 2");
    if (j < 2 || k < 2) throw DomainError("transition_prob: digits must be >= 2");
    Int h = sys.h(n - 1, j);
    if (k <= h) return Rat(0);
    return make_rat(std::move(h), k * (k - 1));
}

Rat child_ratio(const ROESystem& sys, long n, const Int& j_parent, const Int& i) {
    if (n < 1) throw DomainError("child_ratio: position must be >= 1");
    if (j_parent < 2) throw DomainError("child_ratio: parent digit must be >= 2");
    if (i < 1) throw DomainError("child_ratio: difference symbol must be >= 1");
    Int h = sys.h(n, j_parent);
    Int child = h + i;
    return make_rat(std::move(h), child * (child - 1));
}

std::vector<Rat> uniform_bounds_l(const ROESystem& sys, long from, long to) {
    if (from < 2) throw DomainError("uniform bound l_k is defined for k >= 2");
    if (to < from) throw DomainError("empty bound range");
    if (!sys.h_monotone_verified())
        throw MonotonicityUnverified(
            sys.name() +
            ": h has not been verified nondecreasing in j; run validate() and attach the "
            "report with with_validation() before requesting worst-case bounds");

    // At level k every admissible history ends in some d >= d_min[k-1]; with
    // h nondecreasing the ratio sup over histories and symbols is attained
    // at d_min[k-1] with symbol 1, giving 1/(h+1).
    std::vector<Int> path = min_growth_path(sys, to - 1);
    std::vector<Rat> out;
    out.reserve(static_cast<std::size_t>(to - from + 1));
    for (long k = from; k <= to; ++k) {
        Int h = sys.h(k - 1, path[static_cast<std::size_t>(k - 2)]);
        out.push_back(make_rat(1, h + 1));
    }
    return out;
}

Rat uniform_bound_l(const ROESystem& sys, long k) {
    return uniform_bounds_l(sys, k, k).front();
}

const char* to_string(SumVerdict v) {
    switch (v) {
        case SumVerdict::Summable: return "Summable";
        case SumVerdict::NonSummable: return "NonSummable";
        case SumVerdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

TailSum tail_sum_l(const ROESystem& sys, long from, long to) {
    TailSum result;
    result.terms = uniform_bounds_l(sys, from, to);
    result.sum = Rat(0);
    for (const Rat& t : result.terms) result.sum += t;
    result.sum.canonicalize();

    if (result.terms.size() < 2) {
        result.verdict = SumVerdict::Inconclusive;
        return result;
    }
    bool geometric = true;   // l_{k+1} <= l_k / 2 throughout
    bool flat_or_up = true;  // l_{k+1} >= l_k throughout
    for (std::size_t i = 0; i + 1 < result.terms.size(); ++i) {
        if (result.terms[i + 1] * 2 > result.terms[i]) geometric = false;
        if (result.terms[i + 1] < result.terms[i]) flat_or_up = false;
    }
    result.verdict = geometric    ? SumVerdict::Summable
                     : flat_or_up ? SumVerdict::NonSummable
                                  : SumVerdict::Inconclusive;
    return result;
}

}  // namespace roe
