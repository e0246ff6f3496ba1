#include "roe/system.hpp"

#include <algorithm>
#include <utility>

namespace roe {

namespace {

// Builtins are monotone in j by inspection of their closed forms
// (j-1, j(j-1), 1); the constructor records them as verified up to here
// and the test suite re-checks the range exhaustively.
constexpr long kBuiltinValidatedJ = 10'000;

}  // namespace

const char* to_string(SystemKind kind) {
    switch (kind) {
        case SystemKind::Engel: return "engel";
        case SystemKind::Sylvester: return "sylvester";
        case SystemKind::Luroth: return "luroth";
        case SystemKind::Custom: return "custom";
    }
    return "?";
}

Poly::Poly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_ = {Int(0)};
}

Int Poly::operator()(const Int& j) const {
    Int acc = coeffs_.back();
    for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) acc = acc * j + *it;
    return acc;
}

ROESystem::ROESystem(SystemKind kind, std::string name, std::vector<CoeffRule> rules,
                     long j_validation_max, bool h_monotone)
    : kind_(kind),
      name_(std::move(name)),
      rules_(std::move(rules)),
      j_validation_max_(j_validation_max),
      h_monotone_(h_monotone) {}

ROESystem ROESystem::engel() {
    // a = 1, b = j
    return ROESystem(SystemKind::Engel, "engel",
                     {CoeffRule{Poly({Int(1)}), Poly({Int(0), Int(1)})}}, kBuiltinValidatedJ,
                     true);
}

ROESystem ROESystem::sylvester() {
    // a = 1, b = 1
    return ROESystem(SystemKind::Sylvester, "sylvester",
                     {CoeffRule{Poly({Int(1)}), Poly({Int(1)})}}, kBuiltinValidatedJ, true);
}

ROESystem ROESystem::luroth() {
    // a = 1, b = j(j-1)
    return ROESystem(SystemKind::Luroth, "luroth",
                     {CoeffRule{Poly({Int(1)}), Poly({Int(0), Int(-1), Int(1)})}},
                     kBuiltinValidatedJ, true);
}

ROESystem ROESystem::custom(std::string name, Poly a, Poly b) {
    return custom(std::move(name), std::vector<CoeffRule>{CoeffRule{std::move(a), std::move(b)}});
}

ROESystem ROESystem::custom(std::string name, std::vector<CoeffRule> rules) {
    if (rules.empty()) throw DomainError("custom system needs at least one coefficient rule");
    return ROESystem(SystemKind::Custom, std::move(name), std::move(rules), 0, false);
}

ROESystem make_builtin(SystemKind kind) {
    switch (kind) {
        case SystemKind::Engel: return ROESystem::engel();
        case SystemKind::Sylvester: return ROESystem::sylvester();
        case SystemKind::Luroth: return ROESystem::luroth();
        case SystemKind::Custom: break;
    }
    throw DomainError("make_builtin: kind must be engel, sylvester or luroth");
}

const CoeffRule& ROESystem::rule_for(long n) const {
    if (n < 1) throw DomainError("position index must be >= 1");
    auto idx = static_cast<std::size_t>(n - 1);
    return rules_[std::min(idx, rules_.size() - 1)];
}

Int ROESystem::a(long n, const Int& j) const {
    Int v = rule_for(n).a(j);
    if (v < 1)
        throw DomainError(name_ + ": a(" + std::to_string(n) + ", " + j.get_str() +
                          ") = " + v.get_str() + " is not positive");
    return v;
}

Int ROESystem::b(long n, const Int& j) const {
    Int v = rule_for(n).b(j);
    if (v < 1)
        throw DomainError(name_ + ": b(" + std::to_string(n) + ", " + j.get_str() +
                          ") = " + v.get_str() + " is not positive");
    return v;
}

Int ROESystem::h(long n, const Int& j) const {
    if (j < 2) throw DomainError("h: denominator must be >= 2, got " + j.get_str());
    Int num = a(n, j) * j * (j - 1);
    Int den = b(n, j);
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0)
        throw NonIntegralH(name_ + ": b(" + std::to_string(n) + ", " + j.get_str() +
                           ") does not divide a*j*(j-1)");
    return q;
}

ROESystem ROESystem::with_validation(const ValidationReport& report) const {
    ROESystem out = *this;
    out.j_validation_max_ = report.integrality_ok ? report.j_max : 0;
    out.h_monotone_ = report.integrality_ok && report.h_monotone_in_j;
    return out;
}

bool ROESystem::operator==(const ROESystem& other) const {
    if (kind_ != other.kind_ || rules_.size() != other.rules_.size()) return false;
    for (std::size_t i = 0; i < rules_.size(); ++i)
        if (rules_[i].a.coeffs() != other.rules_[i].a.coeffs() ||
            rules_[i].b.coeffs() != other.rules_[i].b.coeffs())
            return false;
    return true;
}

ValidationReport validate(const ROESystem& sys, long n_max, long j_max) {
    if (n_max < 1 || j_max < 2) throw DomainError("validate: need n_max >= 1 and j_max >= 2");

    ValidationReport report;
    report.n_max = n_max;
    report.j_max = j_max;
    report.integrality_ok = true;
    report.h_monotone_in_j = true;

    // Positions beyond the rule table repeat the last rule, so checking one
    // position per distinct rule covers the whole range.
    long distinct = std::min<long>(n_max, static_cast<long>(sys.rules().size()));
    for (long n = 1; n <= distinct; ++n) {
        bool have_prev = false;
        Int prev_h;
        for (Int j(2); j <= j_max; ++j) {
            Int hv;
            try {
                hv = sys.h(n, j);
            } catch (const NonIntegralH&) {
                report.failures.push_back({n, j, "b does not divide a*j*(j-1)"});
                report.integrality_ok = false;
                have_prev = false;
                continue;
            } catch (const DomainError& e) {
                report.failures.push_back({n, j, e.what()});
                report.integrality_ok = false;
                have_prev = false;
                continue;
            }
            if (hv < 1) {
                report.failures.push_back({n, j, "h = " + hv.get_str() + " is not positive"});
                report.integrality_ok = false;
                have_prev = false;
                continue;
            }
            if (have_prev && hv < prev_h) {
                report.failures.push_back(
                    {n, j, "h decreases from " + prev_h.get_str() + " to " + hv.get_str()});
                report.h_monotone_in_j = false;
            }
            prev_h = hv;
            have_prev = true;
        }
    }
    return report;
}

std::vector<Int> min_growth_path(const ROESystem& sys, long depth) {
    if (depth < 1) throw DomainError("min_growth_path: depth must be >= 1");
    std::vector<Int> path;
    path.reserve(static_cast<std::size_t>(depth));
    path.emplace_back(2);
    for (long k = 1; k < depth; ++k) {
        Int next = sys.h(k, path.back()) + 1;
        check_bits(next);
        path.push_back(std::move(next));
    }
    return path;
}

}  // namespace roe
