#pragma once

#include <stdexcept>
#include <string>

namespace skewlab {

// Exit-code mapping used by the CLI: usage errors -> 1, invariant-class
// failures -> 2, precision exhaustion -> 3.

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The working precision no longer determines the requested quantity
// (e.g. a partial quotient is ambiguous inside the enclosure).
struct PrecisionExhausted : Error {
  using Error::Error;
};

// A small divisor |e(m*alpha)-1| fell below the configured floor.
struct NearResonance : Error {
  long frequency = 0;
  NearResonance(const std::string& msg, long m) : Error(msg), frequency(m) {}
};

struct InvariantViolation : Error {
  using Error::Error;
};

struct SupportViolation : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

struct NonResonantIndex : InvariantViolation {
  using InvariantViolation::InvariantViolation;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

struct UsageError : Error {
  using Error::Error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvariantViolation(what);
}

}  // namespace skewlab
