#pragma once

#include <Eigen/Dense>

#include "elasticbit/steadystate.hpp"

namespace elasticbit {

/// 2x2 unitary in the displacement (u1, u2) basis.
using Unitary2 = Eigen::Matrix2cd;

struct GateKind {
  enum Kind { X, Y, Z, H, S, T, PhaseShift } kind;
  double phase = 0.0;  // phi_0 for PhaseShift, in (-pi, pi]

  static GateKind pauli_x() { return {X}; }
  static GateKind pauli_y() { return {Y}; }
  static GateKind pauli_z() { return {Z}; }
  static GateKind hadamard() { return {H}; }
  static GateKind s_gate() { return {S}; }
  static GateKind t_gate() { return {T}; }
  static GateKind phase_shift(double phi0) { return {PhaseShift, phi0}; }
};

/// Self-inverse change of basis between displacement and mode
/// coordinates: (1/sqrt 2) [[1, 1], [1, -1]].
Unitary2 mode_basis_change();

/// Gate matrix in the displacement basis. S and T are built as
/// PhaseShift(pi/2) and PhaseShift(pi/4).
Unitary2 gate_matrix(const GateKind& g);

/// Gate matrix conjugated into the mode (E1, E2) basis.
Unitary2 gate_matrix_modes(const GateKind& g);

/// Applies the gate to a modal state; output re-normalized.
ModalState apply_gate(const GateKind& g, const ModalState& s);

/// Driver settings (E, delta) realizing the post-gate state at the
/// given frequency.
std::pair<double, double> gate_as_drive(const GateKind& g,
                                        const ModalState& s,
                                        const SystemParams& p,
                                        double frequency);

}  // namespace elasticbit
