#include "elasticbit/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "elasticbit/angles.hpp"
#include "elasticbit/berry.hpp"
#include "elasticbit/errors.hpp"

namespace elasticbit {

std::vector<AmplitudeRow> mass_amplitude_curves(
    const SystemParams& p, double frequency, double mix_ratio,
    std::span<const double> deltas) {
  if (deltas.empty())
    throw std::domain_error("mass_amplitude_curves: empty delta grid");
  std::vector<AmplitudeRow> rows;
  rows.reserve(deltas.size());
  for (double delta : deltas) {
    const SteadyAmplitudes a =
        steady_amplitudes(p, {mix_ratio, wrap_angle(delta), frequency});
    rows.push_back({delta, std::abs(a.a1), std::abs(a.a2)});
  }
  return rows;
}

PhasePair phase_differences(const SteadyAmplitudes& a,
                            std::complex<double> f1) {
  if (a.a1 == std::complex<double>(0.0) || a.a2 == std::complex<double>(0.0) ||
      f1 == std::complex<double>(0.0))
    throw UndefinedPhase("phase_differences: zero amplitude has no phase");
  return {wrap_angle(std::arg(a.a1) - std::arg(a.a2)),
          wrap_angle(std::arg(a.a1) - std::arg(f1))};
}

ZoneLabel classify_zone(const SystemParams& p, double frequency,
                        double mix_ratio, double ratio_tol) {
  if (!(ratio_tol > 0.0))
    throw std::domain_error("classify_zone: tolerance must be > 0");
  const double star = transition_ratio(frequency, eigenfrequencies(p));

  // delta-endpoint mass-mass phase; delta = pi stands for both endpoints
  // of (-pi, pi].
  const SteadyAmplitudes a =
      steady_amplitudes(p, {mix_ratio, std::numbers::pi, frequency});
  const auto [f1, f2] = drive_amplitudes(mix_ratio, std::numbers::pi);
  const double endpoint =
      std::abs(phase_differences(a, f1).mass_mass);

  const double half_pi = std::numbers::pi / 2.0;
  if (mix_ratio > star + ratio_tol && endpoint < half_pi)
    return ZoneLabel::AboveTransition;
  if (mix_ratio < star - ratio_tol && endpoint > half_pi)
    return ZoneLabel::BelowTransition;
  return ZoneLabel::Transition;
}

}  // namespace elasticbit
