#pragma once

#include <stdexcept>
#include <string>

namespace raman {

// Invalid argument value (negative kappa_L, non-finite x, out-of-bounds parameter).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Sideband order outside the window in use.
struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// A ratio statistic evaluated where its denominator vanishes (g^(n) of an empty sideband).
struct UndefinedStatistic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Truncated Fock basis would exceed the configured size limit.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input state loses too much probability mass when truncated at the photon cap.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Population reached the edge of the sideband window during oracle evolution.
struct WindowTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace raman
