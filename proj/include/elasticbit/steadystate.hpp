#pragma once

#include <complex>
#include <utility>

#include "elasticbit/model.hpp"

namespace elasticbit {

/// Driver triple: pure-state mixing ratio, phase offset and frequency.
struct DriveSpec {
  double mix_ratio;     // E in [0, 1]
  double phase_offset;  // delta in (-pi, pi]
  double frequency;     // omega_D > 0

  void validate() const;
};

/// Complex displacement amplitudes of the two granules.
struct SteadyAmplitudes {
  std::complex<double> a1;
  std::complex<double> a2;
};

/// Normalized coefficients over the in-phase/out-of-phase mode basis.
/// norm is the pre-normalization magnitude sqrt(|a~|^2 + |b~|^2).
struct ModalState {
  std::complex<double> alpha;
  std::complex<double> beta;
  double norm = 1.0;
};

struct BlochAngles {
  double polar;    // theta in [0, pi]
  double azimuth;  // phi in (-pi, pi]; 0 at the poles
};

/// F1 = E + (1-E) e^{i delta}, F2 = E - (1-E) e^{i delta}.
std::pair<std::complex<double>, std::complex<double>> drive_amplitudes(
    double mix_ratio, double phase_offset);

/// Closed-form frequency response of the linearized system.
/// Throws SingularDrive for an undamped drive at an eigenfrequency.
SteadyAmplitudes steady_amplitudes(const SystemParams& p, const DriveSpec& d);

/// alpha~ = (A1+A2)/sqrt(2), beta~ = (A1-A2)/sqrt(2), then normalize.
ModalState modal_coefficients(const SteadyAmplitudes& a);

/// theta = 2 acos|alpha|, phi = wrap(arg beta - arg alpha).
BlochAngles bloch_angles(const ModalState& s);

/// State with alpha = cos(theta/2), beta = e^{i phi} sin(theta/2).
ModalState state_from_angles(const BlochAngles& t);

/// Inverse map: driver settings (E, delta) whose steady state has the
/// requested Bloch angles at the given frequency.
std::pair<double, double> drive_for_bloch(const BlochAngles& t,
                                          const SystemParams& p,
                                          double frequency);

/// Convenience: full pipeline drive -> normalized modal state.
ModalState state_for_drive(const SystemParams& p, const DriveSpec& d);

}  // namespace elasticbit
