#include "elasticbit/gates.hpp"

#include <cmath>
#include <numbers>

#include "elasticbit/angles.hpp"

namespace elasticbit {

namespace {

using cd = std::complex<double>;

Unitary2 phase_shift_matrix(double phi0) {
  // V diag(1, e^{i phi0}) V with the self-inverse basis change V, so the
  // shift acts on the mode coefficients, not the displacements.
  const Unitary2 v = mode_basis_change();
  Unitary2 d = Unitary2::Zero();
  d(0, 0) = 1.0;
  d(1, 1) = std::polar(1.0, phi0);
  return v * d * v;
}

}  // namespace

Unitary2 mode_basis_change() {
  Unitary2 v;
  const double s = 1.0 / std::numbers::sqrt2;
  v << s, s, s, -s;
  return v;
}

Unitary2 gate_matrix(const GateKind& g) {
  Unitary2 u;
  const cd i(0.0, 1.0);
  switch (g.kind) {
    case GateKind::X:
      u << 1, 0, 0, -1;
      return u;
    case GateKind::Y:
      u << 0, i, -i, 0;
      return u;
    case GateKind::Z:
      u << 0, 1, 1, 0;
      return u;
    case GateKind::H:
      return mode_basis_change();
    case GateKind::S:
      return phase_shift_matrix(std::numbers::pi / 2.0);
    case GateKind::T:
      return phase_shift_matrix(std::numbers::pi / 4.0);
    case GateKind::PhaseShift:
      return phase_shift_matrix(wrap_angle(g.phase));
  }
  throw std::domain_error("gate_matrix: unknown gate kind");
}

Unitary2 gate_matrix_modes(const GateKind& g) {
  const Unitary2 v = mode_basis_change();
  return v * gate_matrix(g) * v;
}

ModalState apply_gate(const GateKind& g, const ModalState& s) {
  const Unitary2 u = gate_matrix_modes(g);
  Eigen::Vector2cd out = u * Eigen::Vector2cd(s.alpha, s.beta);
  const double n = out.norm();
  out /= n;
  return {out(0), out(1), s.norm * n};
}

std::pair<double, double> gate_as_drive(const GateKind& g,
                                        const ModalState& s,
                                        const SystemParams& p,
                                        double frequency) {
  const ModalState after = apply_gate(g, s);
  return drive_for_bloch(bloch_angles(after), p, frequency);
}

}  // namespace elasticbit
