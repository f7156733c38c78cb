#pragma once

#include <complex>
#include <span>
#include <vector>

#include "elasticbit/steadystate.hpp"

namespace elasticbit {

struct AmplitudeRow {
  double delta;
  double abs_a1;
  double abs_a2;
};

/// Principal-value phase differences mass-mass and mass-driver.
struct PhasePair {
  double mass_mass;    // arg A1 - arg A2
  double mass_driver;  // arg A1 - arg F1
};

enum class ZoneLabel { BelowTransition, Transition, AboveTransition };

/// |A1|, |A2| over a delta grid at fixed ratio and frequency.
std::vector<AmplitudeRow> mass_amplitude_curves(const SystemParams& p,
                                                double frequency,
                                                double mix_ratio,
                                                std::span<const double> deltas);

/// Throws UndefinedPhase if any of A1, A2, F1 is zero.
PhasePair phase_differences(const SteadyAmplitudes& a,
                            std::complex<double> f1);

/// Classifies the drive against the transition ratio E*(frequency),
/// cross-checked with the delta-endpoint mass-mass phase.
ZoneLabel classify_zone(const SystemParams& p, double frequency,
                        double mix_ratio, double ratio_tol);

}  // namespace elasticbit
