#pragma once

#include <stdexcept>
#include <string>

namespace krull {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input, ring mismatch or a violated precondition.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A Groebner computation hit its configured pair-reduction cap.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

// Two inference rules (or a rule and the kernel) produced incompatible
// bounds. Always indicates a bug.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace krull
