#pragma once

#include <stdexcept>
#include <string>

namespace roe {

// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the defined domain (x not in (0,1), j < 2, alpha < 1, ...).
class DomainError : public Error {
  public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// b_n(j) does not divide a_n(j)*j*(j-1); the coefficient rule is not a
// valid restricted system.
class NonIntegralH : public Error {
  public:
    explicit NonIntegralH(const std::string& what) : Error(what) {}
};

// An integer grew past the configured bit budget.
class BitSizeExceeded : public Error {
  public:
    explicit BitSizeExceeded(const std::string& what) : Error(what) {}
};

// A digit sequence violates d_1 >= 2 or d_{k+1} >= h_k(d_k) + 1.
class InvalidDigits : public Error {
  public:
    explicit InvalidDigits(const std::string& what) : Error(what) {}
};

// Monotonicity of h in j has not been verified for the system, so the
// worst-case ratio bound l_k cannot be trusted.
class MonotonicityUnverified : public Error {
  public:
    explicit MonotonicityUnverified(const std::string& what) : Error(what) {}
};

// A sampled symbol exceeded the configured support cap.
class SupportOverflow : public Error {
  public:
    explicit SupportOverflow(const std::string& what) : Error(what) {}
};

// The summability hypothesis required by the experiment does not hold on
// the requested range.
class HypothesisUnverified : public Error {
  public:
    explicit HypothesisUnverified(const std::string& what) : Error(what) {}
};

// Sequences passed to an aggregation are shorter than the window requires.
class LengthMismatch : public Error {
  public:
    explicit LengthMismatch(const std::string& what) : Error(what) {}
};

}  // namespace roe
