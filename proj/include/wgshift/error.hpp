#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wgshift {

enum class Errc {
  division_by_zero,
  mixed_field_contexts,
  zero_radicand,
  zero_element,
  malformed_literal,
  zero_denominator,
  not_prime,
  enumeration_bound_exceeded,
  invalid_argument,
  length_mismatch,
  not_an_eigenvalue,
  internal_verification_failure,
  zero_polynomial,
  oracle_limit_exceeded,
  zero_eigenvalue_requested,
  zero_tail_weight,
  window_too_small,
};

constexpr std::string_view errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::mixed_field_contexts: return "MixedFieldContexts";
    case Errc::zero_radicand: return "ZeroRadicand";
    case Errc::zero_element: return "ZeroElement";
    case Errc::malformed_literal: return "MalformedLiteral";
    case Errc::zero_denominator: return "ZeroDenominator";
    case Errc::not_prime: return "NotPrime";
    case Errc::enumeration_bound_exceeded: return "EnumerationBoundExceeded";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::not_an_eigenvalue: return "NotAnEigenvalue";
    case Errc::internal_verification_failure: return "InternalVerificationFailure";
    case Errc::zero_polynomial: return "ZeroPolynomial";
    case Errc::oracle_limit_exceeded: return "OracleLimitExceeded";
    case Errc::zero_eigenvalue_requested: return "ZeroEigenvalueRequested";
    case Errc::zero_tail_weight: return "ZeroTailWeight";
    case Errc::window_too_small: return "WindowTooSmall";
  }
  return "Unknown";
}

/// The single exception type thrown by the library; `code()` tells callers
/// which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace wgshift
