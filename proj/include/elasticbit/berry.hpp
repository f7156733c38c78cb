#pragma once

#include <complex>
#include <span>
#include <vector>

#include "elasticbit/steadystate.hpp"

namespace elasticbit {

/// Closed loop in driver space: delta sweeps (-pi, pi] in N uniform
/// steps at fixed mixing ratio and frequency.
struct LoopSpec {
  double mix_ratio;
  double frequency;
  int steps;  // N >= 8

  void validate() const;
};

struct BerryLoopResult {
  double discrete_phase;  // wrapped Wilson-loop phase
  double analytic_phase;  // wrap(-1/2 * dphi * (1 - cos theta))
  double polar;           // the loop's constant theta
  int winding;            // azimuthal winding number
  int steps;
};

/// Nearest-neighbor state overlap conj(a_j) a_{j+1} + conj(b_j) b_{j+1}.
std::complex<double> state_overlap(const ModalState& a, const ModalState& b);

/// Discrete (Wilson-loop) Berry phase around the delta loop, with the
/// analytic value, constant polar angle and winding number.
BerryLoopResult berry_phase_loop(const SystemParams& p, const LoopSpec& loop);

/// wrap(-1/2 * azimuth_change * (1 - cos polar)).
double berry_phase_analytic(double polar, double azimuth_change);

struct SweepCell {
  double frequency;
  double mix_ratio;
  double phase_abs;  // |wrapped gamma|; NaN on per-cell failure
  bool ok;
};

/// One |gamma| per (frequency, ratio) grid cell; per-cell failures are
/// flagged, never abort the sweep. Cells may be computed on `jobs`
/// threads; result order is by (row, column) regardless of jobs.
std::vector<SweepCell> berry_sweep(const SystemParams& p,
                                   std::span<const double> frequencies,
                                   std::span<const double> ratios, int steps,
                                   int jobs = 1);

/// Transition ratio E* = (2 w^2 + w01^2 - w02^2)/4 on w01 < w < w02.
double transition_ratio(double frequency, const EigenPair& e);

}  // namespace elasticbit
