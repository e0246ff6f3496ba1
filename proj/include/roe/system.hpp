#pragma once

/// Coefficient systems for restricted Oppenheim-type series.
///
/// A system is a rule (n, j) -> (a_n(j), b_n(j)) of positive integers for
/// which h_n(j) = a_n(j)*j*(j-1)/b_n(j) is itself a positive integer.
/// h drives everything downstream: a digit sequence is admissible when
/// every successor satisfies d_{k+1} >= h_k(d_k) + 1, and h is the exact
/// numerator of the digit transition probabilities.
///
/// Builtin families (Engel, Sylvester, Luroth) depend on j only. Custom
/// systems are given as integer-coefficient polynomials in j, optionally
/// one polynomial pair per position with the last pair repeating, which
/// keeps validation decidable by finite divisibility checks.

#include <string>
#include <vector>

#include "roe/numeric.hpp"

namespace roe {

enum class SystemKind { Engel, Sylvester, Luroth, Custom };

const char* to_string(SystemKind kind);

// Integer-coefficient polynomial in j, coefficients in ascending degree.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Int> coeffs);

    Int operator()(const Int& j) const;  // Horner evaluation
    const std::vector<Int>& coeffs() const { return coeffs_; }

  private:
    std::vector<Int> coeffs_{Int(0)};
};

struct CoeffRule {
    Poly a;
    Poly b;
};

struct ValidationFailure {
    long n;
    Int j;
    std::string reason;
};

struct ValidationReport {
    long n_max = 0;
    long j_max = 0;
    bool integrality_ok = false;   // h is a positive integer everywhere checked
    bool h_monotone_in_j = false;  // h(n, j) nondecreasing in j everywhere checked
    std::vector<ValidationFailure> failures;
};

class ROESystem {
  public:
    static ROESystem engel();
    static ROESystem sylvester();
    static ROESystem luroth();
    // Single rule applied at every position.
    static ROESystem custom(std::string name, Poly a, Poly b);
    // One rule per position; the last rule repeats beyond the table.
    static ROESystem custom(std::string name, std::vector<CoeffRule> rules);

    SystemKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const std::vector<CoeffRule>& rules() const { return rules_; }

    // Coefficients at position n >= 1 and denominator j >= 2.
    // Throws DomainError when the rule produces a value < 1.
    Int a(long n, const Int& j) const;
    Int b(long n, const Int& j) const;

    // h_n(j) = a_n(j)*j*(j-1)/b_n(j), exactly.
    // Throws NonIntegralH when the division does not come out even.
    Int h(long n, const Int& j) const;

    // Validation metadata carried by the value; see validate().
    long j_validation_max() const { return j_validation_max_; }
    bool h_monotone_verified() const { return h_monotone_; }

    // Copy of the system with metadata taken from a validation report.
    ROESystem with_validation(const ValidationReport& report) const;

    bool operator==(const ROESystem& other) const;

  private:
    ROESystem(SystemKind kind, std::string name, std::vector<CoeffRule> rules,
              long j_validation_max, bool h_monotone);

    const CoeffRule& rule_for(long n) const;

    SystemKind kind_;
    std::string name_;
    std::vector<CoeffRule> rules_;
    long j_validation_max_;
    bool h_monotone_;
};

ROESystem make_builtin(SystemKind kind);

// Checks positivity and integrality of h plus monotonicity in j over
// n <= n_max, 2 <= j <= j_max. Failures are collected, never thrown.
ValidationReport validate(const ROESystem& sys, long n_max, long j_max);

// Slowest-growing admissible digit path: d[1] = 2, d[k+1] = h_k(d[k]) + 1.
// Returned vector is 0-indexed (d[k] at index k-1).
std::vector<Int> min_growth_path(const ROESystem& sys, long depth);

}  // namespace roe
