#include "roe/numeric.hpp"

#include <atomic>
#include <cctype>
#include <cstdlib>

namespace roe {

namespace {

std::atomic<std::int64_t> g_bit_budget{kDefaultBitBudget};
std::atomic<long> g_max_depth{kDefaultMaxDepth};

Int pow10(unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

}  // namespace

std::int64_t bit_budget() { return g_bit_budget.load(std::memory_order_relaxed); }

void set_bit_budget(std::int64_t bits) {
    if (bits < 64) throw DomainError("bit budget must be at least 64 bits");
    g_bit_budget.store(bits, std::memory_order_relaxed);
}

long max_depth() { return g_max_depth.load(std::memory_order_relaxed); }

void set_max_depth(long depth) {
    if (depth < 1) throw DomainError("max depth must be positive");
    g_max_depth.store(depth, std::memory_order_relaxed);
}

void check_bits(const Int& v) {
    if (static_cast<std::int64_t>(mpz_sizeinbase(v.get_mpz_t(), 2)) > bit_budget())
        throw BitSizeExceeded("integer exceeds bit budget of " + std::to_string(bit_budget()) +
                              " bits");
}

void check_bits(const Rat& v) {
    check_bits(v.get_num());
    check_bits(v.get_den());
}

Rat make_rat(Int num, Int den) {
    if (den == 0) throw DomainError("zero denominator");
    Rat r(std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

Rat parse_rational(const std::string& text) {
    if (text.empty()) throw DomainError("empty rational literal");

    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Int num, den;
        if (mpz_set_str(num.get_mpz_t(), text.substr(0, slash).c_str(), 10) != 0 ||
            mpz_set_str(den.get_mpz_t(), text.substr(slash + 1).c_str(), 10) != 0)
            throw DomainError("cannot parse rational '" + text + "'");
        return make_rat(std::move(num), std::move(den));
    }

    // [sign] digits [. digits] [e [sign] digits]
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') neg = (text[i++] == '-');

    std::string mantissa;
    long frac_digits = 0;
    bool seen_digit = false;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
        mantissa += text[i];
        seen_digit = true;
    }
    if (i < text.size() && text[i] == '.') {
        for (++i; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            mantissa += text[i];
            ++frac_digits;
            seen_digit = true;
        }
    }
    long exponent = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) eneg = (text[i++] == '-');
        if (i >= text.size()) throw DomainError("cannot parse rational '" + text + "'");
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i)
            exponent = exponent * 10 + (text[i] - '0');
        if (eneg) exponent = -exponent;
    }
    if (!seen_digit || i != text.size())
        throw DomainError("cannot parse rational '" + text + "'");

    Int num;
    mpz_set_str(num.get_mpz_t(), mantissa.empty() ? "0" : mantissa.c_str(), 10);
    if (neg) num = -num;
    Int den(1);
    long net = exponent - frac_digits;
    if (net >= 0)
        num *= pow10(static_cast<unsigned long>(net));
    else
        den = pow10(static_cast<unsigned long>(-net));
    return make_rat(std::move(num), std::move(den));
}

std::string rat_string(const Rat& v) {
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string decimal_string(const Rat& v, int sig_digits) {
    if (sig_digits < 1) throw DomainError("precision must be at least 1");
    if (v == 0) return "0";

    Int a = abs(v.get_num());
    const Int& b = v.get_den();

    // Decimal exponent e with 10^e <= a/b < 10^(e+1).
    long e = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 10));
    auto at_least = [&](long cand) {  // 10^cand <= a/b ?
        return cand >= 0 ? a >= b * pow10(static_cast<unsigned long>(cand))
                         : a * pow10(static_cast<unsigned long>(-cand)) >= b;
    };
    while (!at_least(e)) --e;
    while (at_least(e + 1)) ++e;

    // t = round_half_up(a/b * 10^(sig-1-e)), an integer in [10^(sig-1), 10^sig].
    long k = sig_digits - 1 - e;
    Int n = a, d = b;
    if (k >= 0)
        n *= pow10(static_cast<unsigned long>(k));
    else
        d *= pow10(static_cast<unsigned long>(-k));
    Int t = (2 * n + d) / (2 * d);
    if (t == pow10(static_cast<unsigned long>(sig_digits))) {
        ++e;
        t = pow10(static_cast<unsigned long>(sig_digits - 1));
    }

    std::string digits = t.get_str();
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

    std::string out = mpq_sgn(v.get_mpq_t()) < 0 ? "-" : "";
    if (e >= -4 && e < sig_digits) {
        if (e >= 0) {
            if (static_cast<long>(digits.size()) <= e)
                digits.append(static_cast<std::size_t>(e + 1 - digits.size()), '0');
            out += digits.substr(0, static_cast<std::size_t>(e + 1));
            if (digits.size() > static_cast<std::size_t>(e + 1))
                out += "." + digits.substr(static_cast<std::size_t>(e + 1));
        } else {
            out += "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + digits;
        }
    } else {
        out += digits.substr(0, 1);
        if (digits.size() > 1) out += "." + digits.substr(1);
        out += "e" + std::string(e >= 0 ? "+" : "-") + std::to_string(e >= 0 ? e : -e);
    }
    return out;
}

}  // namespace roe
