#pragma once

#include <stdexcept>
#include <string>

namespace opnorm {

enum class errc {
  empty_samples,
  near_zero_sample,
  space_mismatch,
  hypothesis_violated,
  zero_missing,
  degenerate_probe,
  not_converging,
  not_cauchy,
  point_in_domain,
  precheck_failed,
  modulus_missing,
  not_monotone,
  order_exceeds_oracle,
  quadrature_budget_exceeded,
  grid_too_small,
  support_not_covered,
  length_not_power_of_two,
  not_linear_on_probes,
  config_invalid,
  not_algebra,
  not_unital,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::empty_samples: return "EmptySamples";
    case errc::near_zero_sample: return "NearZeroSample";
    case errc::space_mismatch: return "SpaceMismatch";
    case errc::hypothesis_violated: return "HypothesisViolated";
    case errc::zero_missing: return "ZeroMissing";
    case errc::degenerate_probe: return "DegenerateProbe";
    case errc::not_converging: return "NotConverging";
    case errc::not_cauchy: return "NotCauchy";
    case errc::point_in_domain: return "PointInDomain";
    case errc::precheck_failed: return "PrecheckFailed";
    case errc::modulus_missing: return "ModulusMissing";
    case errc::not_monotone: return "NotMonotone";
    case errc::order_exceeds_oracle: return "OrderExceedsOracle";
    case errc::quadrature_budget_exceeded: return "QuadratureBudgetExceeded";
    case errc::grid_too_small: return "GridTooSmall";
    case errc::support_not_covered: return "SupportNotCovered";
    case errc::length_not_power_of_two: return "LengthNotPowerOfTwo";
    case errc::not_linear_on_probes: return "NotLinearOnProbes";
    case errc::config_invalid: return "ConfigInvalid";
    case errc::not_algebra: return "NotAlgebra";
    case errc::not_unital: return "NotUnital";
  }
  return "UnknownError";
}

/// Library-wide exception carrying a stable error code.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

/// Default tolerances: algebraic identities vs quadrature-backed quantities.
struct Tolerances {
  double exact = 1e-12;
  double quad = 1e-6;
};

}  // namespace opnorm
