#pragma once

#include <stdexcept>
#include <string>

namespace mordell {

// Stable failure codes shared by all checks. Tests assert on these, so the
// enumerator names and their to_string spellings must never change.
enum class FailCode {
  NONE,
  // primality
  MALFORMED,
  NOT_PRIME_FACTOR,
  A_SQUARED_TOO_SMALL,
  A_NOT_DIVISOR,
  FERMAT_FAIL,
  GCD_FAIL,
  // split primes / ideal factorizations
  IDENTITY_FAIL,
  NOT_PRIME,
  EQUALS_D,
  DUPLICATE_PRIME,
  HENSEL_PRECONDITION,
  RAMIFIED_POWER,
  DIVISIBILITY_FAIL,
  NORM_MISMATCH,
  VALUATION_MISMATCH,
  // verifier
  MOD4_FAIL,
  CLAIM3_NONVANISHING,
  CLAIM4_RATIONAL,
  BOUNDS_FAIL,
  // certificate I/O
  PARSE_ERROR,
  RANGE_ERROR,
};

inline const char* to_string(FailCode c) {
  switch (c) {
    case FailCode::NONE: return "NONE";
    case FailCode::MALFORMED: return "MALFORMED";
    case FailCode::NOT_PRIME_FACTOR: return "NOT_PRIME_FACTOR";
    case FailCode::A_SQUARED_TOO_SMALL: return "A_SQUARED_TOO_SMALL";
    case FailCode::A_NOT_DIVISOR: return "A_NOT_DIVISOR";
    case FailCode::FERMAT_FAIL: return "FERMAT_FAIL";
    case FailCode::GCD_FAIL: return "GCD_FAIL";
    case FailCode::IDENTITY_FAIL: return "IDENTITY_FAIL";
    case FailCode::NOT_PRIME: return "NOT_PRIME";
    case FailCode::EQUALS_D: return "EQUALS_D";
    case FailCode::DUPLICATE_PRIME: return "DUPLICATE_PRIME";
    case FailCode::HENSEL_PRECONDITION: return "HENSEL_PRECONDITION";
    case FailCode::RAMIFIED_POWER: return "RAMIFIED_POWER";
    case FailCode::DIVISIBILITY_FAIL: return "DIVISIBILITY_FAIL";
    case FailCode::NORM_MISMATCH: return "NORM_MISMATCH";
    case FailCode::VALUATION_MISMATCH: return "VALUATION_MISMATCH";
    case FailCode::MOD4_FAIL: return "MOD4_FAIL";
    case FailCode::CLAIM3_NONVANISHING: return "CLAIM3_NONVANISHING";
    case FailCode::CLAIM4_RATIONAL: return "CLAIM4_RATIONAL";
    case FailCode::BOUNDS_FAIL: return "BOUNDS_FAIL";
    case FailCode::PARSE_ERROR: return "PARSE_ERROR";
    case FailCode::RANGE_ERROR: return "RANGE_ERROR";
  }
  return "UNKNOWN";
}

// One diagnosed failure. `where` is a JSON-pointer-like path into the
// certificate document (0-based array indices); `detail` is for humans.
struct Failure {
  FailCode code = FailCode::NONE;
  std::string where;
  std::string detail;

  bool operator==(const Failure&) const = default;
};

// Result of a single semantic check. Location (`failure.where`) is usually
// filled in by the caller, which knows where the checked object lives.
struct Check {
  bool pass = true;
  Failure failure;

  static Check ok() { return {}; }
  static Check fail(FailCode code, std::string detail) {
    return Check{false, Failure{code, "", std::move(detail)}};
  }
};

// Thrown when a function's stated preconditions are violated in a way that
// carries a dedicated code (e.g. Hensel lift hypotheses).
class VerifyError : public std::runtime_error {
 public:
  VerifyError(FailCode code, const std::string& msg)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}
  FailCode code() const { return code_; }

 private:
  FailCode code_;
};

}  // namespace mordell
