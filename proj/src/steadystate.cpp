#include "elasticbit/steadystate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "elasticbit/angles.hpp"
#include "elasticbit/errors.hpp"

namespace elasticbit {

namespace {

constexpr double kPoleTol = 1e-12;

using cd = std::complex<double>;

// Modal denominators of Eq-space amplitudes: alpha ~ 1/d1, beta ~ 1/d2.
cd mode_denom_in_phase(const SystemParams& p, double w) {
  return {-p.mass * w * w + p.stiffness, p.damping * w};
}

cd mode_denom_out_of_phase(const SystemParams& p, double w) {
  return {-p.mass * w * w + 3.0 * p.stiffness, p.damping * w};
}

}  // namespace

void DriveSpec::validate() const {
  if (!(mix_ratio >= 0.0 && mix_ratio <= 1.0))
    throw std::domain_error("DriveSpec: mixing ratio must be in [0, 1]");
  if (!(phase_offset > -std::numbers::pi &&
        phase_offset <= std::numbers::pi))
    throw std::domain_error("DriveSpec: phase offset must be in (-pi, pi]");
  if (!(frequency > 0.0))
    throw std::domain_error("DriveSpec: frequency must be > 0");
}

std::pair<cd, cd> drive_amplitudes(double mix_ratio, double phase_offset) {
  const cd rotated = (1.0 - mix_ratio) * std::polar(1.0, phase_offset);
  return {mix_ratio + rotated, mix_ratio - rotated};
}

SteadyAmplitudes steady_amplitudes(const SystemParams& p, const DriveSpec& d) {
  p.validate();
  d.validate();
  const double w = d.frequency;
  if (p.damping == 0.0) {
    const double d1 = -p.mass * w * w + p.stiffness;
    const double d2 = -p.mass * w * w + 3.0 * p.stiffness;
    if (std::abs(d1) <= kPoleTol * p.stiffness ||
        std::abs(d2) <= kPoleTol * p.stiffness)
      throw SingularDrive(
          "steady_amplitudes: undamped drive at an eigenfrequency");
  }
  const auto [f1, f2] = drive_amplitudes(d.mix_ratio, d.phase_offset);
  const cd diag(-p.mass * w * w + 2.0 * p.stiffness, p.damping * w);
  const double k = p.stiffness;
  const cd denom = diag * diag - k * k;
  return {(f1 * k * diag + f2 * k * k) / denom,
          (f1 * k * k + f2 * k * diag) / denom};
}

ModalState modal_coefficients(const SteadyAmplitudes& a) {
  const cd alpha_raw = (a.a1 + a.a2) / std::numbers::sqrt2;
  const cd beta_raw = (a.a1 - a.a2) / std::numbers::sqrt2;
  const double norm = std::sqrt(std::norm(alpha_raw) + std::norm(beta_raw));
  if (norm == 0.0)
    throw ZeroState("modal_coefficients: zero amplitude vector");
  return {alpha_raw / norm, beta_raw / norm, norm};
}

BlochAngles bloch_angles(const ModalState& s) {
  const double mag = std::min(std::abs(s.alpha), 1.0);
  const double polar = 2.0 * std::acos(mag);
  if (polar < kPoleTol || std::numbers::pi - polar < kPoleTol)
    return {polar, 0.0};
  return {polar, wrap_angle(std::arg(s.beta) - std::arg(s.alpha))};
}

ModalState state_from_angles(const BlochAngles& t) {
  return {std::cos(t.polar / 2.0),
          std::polar(std::sin(t.polar / 2.0), t.azimuth), 1.0};
}

std::pair<double, double> drive_for_bloch(const BlochAngles& t,
                                          const SystemParams& p,
                                          double frequency) {
  p.validate();
  if (!(frequency > 0.0))
    throw std::domain_error("drive_for_bloch: frequency must be > 0");
  if (!(t.polar >= 0.0 && t.polar <= std::numbers::pi))
    throw std::domain_error("drive_for_bloch: polar angle must be in [0, pi]");
  if (p.damping == 0.0) {
    const EigenPair e = eigenfrequencies(p);
    if (std::abs(frequency - e.in_phase) <= kPoleTol ||
        std::abs(frequency - e.out_of_phase) <= kPoleTol)
      throw SingularDrive("drive_for_bloch: undamped drive at an "
                          "eigenfrequency");
  }
  if (t.polar < kPoleTol) return {1.0, 0.0};

  const cd d1 = mode_denom_in_phase(p, frequency);
  const cd d2 = mode_denom_out_of_phase(p, frequency);
  const double delta =
      wrap_angle(t.azimuth + std::arg(d2) - std::arg(d1));
  if (std::numbers::pi - t.polar < kPoleTol) return {0.0, delta};

  const double q = std::abs(d1) / std::abs(d2);
  const double ratio = q / (q + std::tan(t.polar / 2.0));
  return {ratio, delta};
}

ModalState state_for_drive(const SystemParams& p, const DriveSpec& d) {
  return modal_coefficients(steady_amplitudes(p, d));
}

}  // namespace elasticbit
