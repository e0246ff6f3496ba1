#include "roe/expansion.hpp"

namespace roe {

namespace {

void require_admissible(const ROESystem& sys, std::span<const Int> digits) {
    if (digits.empty()) throw InvalidDigits("digit sequence is empty");
    if (!is_admissible(sys, digits)) throw InvalidDigits("digit sequence is not admissible");
}

}  // namespace

bool is_admissible(const ROESystem& sys, std::span<const Int> digits) {
    if (digits.empty()) return true;
    if (digits.front() < 2) return false;
    for (std::size_t k = 0; k + 1 < digits.size(); ++k) {
        if (digits[k + 1] < sys.h(static_cast<long>(k + 1), digits[k]) + 1) return false;
    }
    return true;
}

ExpansionTrace expand_trace(const ROESystem& sys, const Rat& x, long depth) {
    if (x <= 0 || x >= 1) throw DomainError("expand: x must lie in the open interval (0,1)");
    if (depth < 1) throw DomainError("expand: depth must be >= 1");
    if (depth > max_depth())
        throw DomainError("expand: depth " + std::to_string(depth) + " exceeds the cap of " +
                          std::to_string(max_depth()) + " (see set_max_depth)");

    ExpansionTrace trace{DigitSeq{sys, {}}, {}, {}};
    trace.digits.digits.reserve(static_cast<std::size_t>(depth));
    trace.remainders.reserve(static_cast<std::size_t>(depth) + 1);
    trace.coeff_products.reserve(static_cast<std::size_t>(depth) + 1);
    trace.remainders.push_back(x);
    trace.coeff_products.emplace_back(1);

    Rat rem = x;
    Rat coeff(1);
    for (long k = 1; k <= depth; ++k) {
        // rem in (0, 1], so floor(1/rem) = floor(den/num) >= 1 and d >= 2.
        Int d = rem.get_den() / rem.get_num() + 1;
        check_bits(d);

        Rat next = (rem - make_rat(1, d)) * make_rat(sys.b(k, d), sys.a(k, d));
        next.canonicalize();
        if (next <= 0 || next > 1)
            throw Error("internal: remainder left (0,1] at position " + std::to_string(k));
        check_bits(next);

        coeff *= make_rat(sys.a(k, d), sys.b(k, d));
        coeff.canonicalize();

        trace.digits.digits.push_back(std::move(d));
        trace.remainders.push_back(next);
        trace.coeff_products.push_back(coeff);
        rem = std::move(next);
    }
    return trace;
}

DigitSeq expand(const ROESystem& sys, const Rat& x, long depth) {
    return expand_trace(sys, x, depth).digits;
}

Rat evaluate(const DigitSeq& seq) {
    require_admissible(seq.system, seq.digits);
    Rat sum = make_rat(1, seq.digits[0]);
    Rat coeff(1);
    for (std::size_t k = 1; k < seq.digits.size(); ++k) {
        long n = static_cast<long>(k);
        coeff *= make_rat(seq.system.a(n, seq.digits[k - 1]), seq.system.b(n, seq.digits[k - 1]));
        coeff.canonicalize();
        sum += coeff * make_rat(1, seq.digits[k]);
    }
    sum.canonicalize();
    return sum;
}

std::pair<Rat, Rat> evaluate_interval(const DigitSeq& seq) {
    require_admissible(seq.system, seq.digits);
    const Int& last = seq.digits.back();

    Rat inf = evaluate(seq);
    // sup replaces the final term 1/d_n by 1/(d_n - 1).
    Rat coeff(1);
    for (std::size_t k = 1; k < seq.digits.size(); ++k) {
        long n = static_cast<long>(k);
        coeff *= make_rat(seq.system.a(n, seq.digits[k - 1]), seq.system.b(n, seq.digits[k - 1]));
    }
    coeff.canonicalize();
    Rat sup = inf + coeff * (make_rat(1, last - 1) - make_rat(1, last));
    sup.canonicalize();
    return {std::move(inf), std::move(sup)};
}

DiffDigitSeq to_difference(const DigitSeq& seq) {
    require_admissible(seq.system, seq.digits);
    DiffDigitSeq out{seq.system, {}};
    out.alphas.reserve(seq.digits.size());
    out.alphas.push_back(seq.digits[0] - 1);
    for (std::size_t k = 1; k < seq.digits.size(); ++k)
        out.alphas.push_back(seq.digits[k] -
                             seq.system.h(static_cast<long>(k), seq.digits[k - 1]));
    return out;
}

DigitSeq from_difference(const DiffDigitSeq& seq) {
    if (seq.alphas.empty()) throw DomainError("from_difference: empty symbol sequence");
    DigitSeq out{seq.system, {}};
    out.digits.reserve(seq.alphas.size());
    for (std::size_t k = 0; k < seq.alphas.size(); ++k) {
        if (seq.alphas[k] < 1)
            throw DomainError("from_difference: symbol at position " + std::to_string(k + 1) +
                              " is " + seq.alphas[k].get_str() + ", must be >= 1");
        Int d = k == 0 ? Int(seq.alphas[0] + 1)
                       : Int(seq.system.h(static_cast<long>(k), out.digits.back()) +
                             seq.alphas[k]);
        check_bits(d);
        out.digits.push_back(std::move(d));
    }
    return out;
}

}  // namespace roe
