#pragma once

#include <stdexcept>
#include <string>

namespace elasticbit {

/// Undamped drive exactly at an eigenfrequency: the steady-state
/// amplitudes are unbounded.
struct SingularDrive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Modal decomposition of the zero amplitude vector.
struct ZeroState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// arg() of a zero complex number was requested.
struct UndefinedPhase : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Steady-state extraction drifted by more than the allowed amount
/// when the fit window was extended by one cycle.
struct NotConverged : std::runtime_error {
  NotConverged(const std::string& what, double drift)
      : std::runtime_error(what), drift(drift) {}
  double drift;
};

/// A time-domain state sample overflowed.
struct NonFinite : std::runtime_error {
  NonFinite(const std::string& what, double time)
      : std::runtime_error(what), time(time) {}
  double time;
};

}  // namespace elasticbit
