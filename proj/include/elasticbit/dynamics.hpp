#pragma once

#include <complex>
#include <vector>

#include "elasticbit/steadystate.hpp"

namespace elasticbit {

struct TimeSeries {
  struct Sample {
    double t, u1, v1, u2, v2;
  };
  double dt;
  std::vector<Sample> samples;
};

enum class ModelKind { Linear, Nonlinear };

struct IntegratorConfig {
  ModelKind model = ModelKind::Linear;
  double dt = 0.005;
  double t_end = 1000.0;
  double u1 = 0.0, v1 = 0.0, u2 = 0.0, v2 = 0.0;  // initial conditions
  double drive_scale = 1.0;  // 0 turns the drivers off

  void validate(const SystemParams& p) const;
};

/// Hertz contact force k_NL * max(x + sigma0, 0)^{3/2}; zero past
/// contact loss.
double hertz_force(double x, double sigma0, double k_nl);

/// Default step: resolves the drive period with at least 200 samples.
double default_time_step(double frequency);

/// Time after which the homogeneous solution envelope e^{-eta t/(2m)}
/// has dropped below 1e-3.
double transient_cutoff(const SystemParams& p);

/// Fixed-step explicit RK4 on the exact Hertzian system or its
/// linearization, driven by Re(F_k e^{i w t}). Throws NonFinite on
/// state overflow.
TimeSeries integrate(const SystemParams& p, const DriveSpec& d,
                     const IntegratorConfig& cfg);

/// Same integrator with explicit complex force amplitudes.
TimeSeries integrate_forces(const SystemParams& p, std::complex<double> f1,
                            std::complex<double> f2, double frequency,
                            const IntegratorConfig& cfg);

/// Harmonic fit at the drive frequency over the final n_cycles periods
/// (least squares against {1, cos, sin}). Throws NotConverged when the
/// fit moves by more than 0.1% on adding one more cycle.
SteadyAmplitudes extract_steady(const TimeSeries& ts, double frequency,
                                int n_cycles);

/// Kinetic plus Hertzian potential energy of an undriven state.
double hertz_energy(const SystemParams& p, const TimeSeries::Sample& s);

}  // namespace elasticbit
