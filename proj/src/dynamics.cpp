#include "elasticbit/dynamics.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "elasticbit/errors.hpp"

namespace elasticbit {

namespace {

using cd = std::complex<double>;
using State = std::array<double, 4>;  // u1, v1, u2, v2

struct Forcing {
  double f1_re, f1_im, f2_re, f2_im, frequency, scale;

  double drive1(double t) const {
    return scale * (f1_re * std::cos(frequency * t) -
                    f1_im * std::sin(frequency * t));
  }
  double drive2(double t) const {
    return scale * (f2_re * std::cos(frequency * t) -
                    f2_im * std::sin(frequency * t));
  }
};

State linear_rhs(const SystemParams& p, const Forcing& f, double t,
                 const State& s) {
  const double k = p.stiffness;
  const double a1 = (k * (f.drive1(t) - s[0]) - k * (s[0] - s[2]) -
                     p.damping * s[1]) /
                    p.mass;
  const double a2 = (-k * (s[2] - f.drive2(t)) + k * (s[0] - s[2]) -
                     p.damping * s[3]) /
                    p.mass;
  return {s[1], a1, s[3], a2};
}

State nonlinear_rhs(const SystemParams& p, const Forcing& f, double t,
                    const State& s) {
  const double knl = *p.hertz_stiffness;
  const double sig = *p.precompression;
  const double middle = hertz_force(s[0] - s[2], sig, knl);
  const double a1 = (hertz_force(f.drive1(t) - s[0], sig, knl) - middle -
                     p.damping * s[1]) /
                    p.mass;
  const double a2 = (-hertz_force(s[2] - f.drive2(t), sig, knl) + middle -
                     p.damping * s[3]) /
                    p.mass;
  return {s[1], a1, s[3], a2};
}

struct Tone {
  std::complex<double> amplitude;
  bool converged;
  double drift;
};

// Least-squares fit u(t) ~ c0 + a cos(wt) + b sin(wt) over samples in
// [t0, inf); exact on pure tones regardless of window alignment. The
// fitted phasor is A = a - i b, matching u = Re(A e^{iwt}).
std::complex<double> fit_phasor(const TimeSeries& ts, double w, double t0,
                                bool first_mass) {
  Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  for (const auto& s : ts.samples) {
    if (s.t < t0) continue;
    const Eigen::Vector3d basis(1.0, std::cos(w * s.t), std::sin(w * s.t));
    g += basis * basis.transpose();
    rhs += basis * (first_mass ? s.u1 : s.u2);
  }
  const Eigen::Vector3d coeff = g.ldlt().solve(rhs);
  return {coeff(1), -coeff(2)};
}

}  // namespace

void IntegratorConfig::validate(const SystemParams& p) const {
  if (!(dt > 0.0)) throw std::domain_error("IntegratorConfig: dt must be > 0");
  if (!(t_end >= dt))
    throw std::domain_error("IntegratorConfig: t_end must be >= dt");
  if (model == ModelKind::Nonlinear && !p.hertz_stiffness)
    throw std::domain_error(
        "IntegratorConfig: nonlinear model needs Hertzian constants in "
        "SystemParams");
}

double hertz_force(double x, double sigma0, double k_nl) {
  const double overlap = x + sigma0;
  if (overlap <= 0.0) return 0.0;
  return k_nl * overlap * std::sqrt(overlap);
}

double default_time_step(double frequency) {
  return std::min(0.005, 2.0 * std::numbers::pi / frequency / 200.0);
}

double transient_cutoff(const SystemParams& p) {
  if (p.damping == 0.0) return 0.0;
  return 2.0 * p.mass / p.damping * std::log(1e3);
}

TimeSeries integrate_forces(const SystemParams& p, cd f1, cd f2,
                            double frequency, const IntegratorConfig& cfg) {
  p.validate();
  cfg.validate(p);
  const Forcing forcing{f1.real(), f1.imag(), f2.real(), f2.imag(),
                        frequency, cfg.drive_scale};
  const bool linear = cfg.model == ModelKind::Linear;
  auto rhs = [&](double t, const State& s) {
    return linear ? linear_rhs(p, forcing, t, s)
                  : nonlinear_rhs(p, forcing, t, s);
  };

  const long n_steps = static_cast<long>(std::floor(cfg.t_end / cfg.dt));
  TimeSeries ts;
  ts.dt = cfg.dt;
  ts.samples.reserve(n_steps + 1);

  State s{cfg.u1, cfg.v1, cfg.u2, cfg.v2};
  ts.samples.push_back({0.0, s[0], s[1], s[2], s[3]});
  const double h = cfg.dt;
  for (long i = 0; i < n_steps; ++i) {
    const double t = i * h;
    const State k1 = rhs(t, s);
    State mid;
    for (int j = 0; j < 4; ++j) mid[j] = s[j] + 0.5 * h * k1[j];
    const State k2 = rhs(t + 0.5 * h, mid);
    for (int j = 0; j < 4; ++j) mid[j] = s[j] + 0.5 * h * k2[j];
    const State k3 = rhs(t + 0.5 * h, mid);
    for (int j = 0; j < 4; ++j) mid[j] = s[j] + h * k3[j];
    const State k4 = rhs(t + h, mid);
    for (int j = 0; j < 4; ++j)
      s[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);

    const double t_next = (i + 1) * h;
    for (double v : s)
      if (!std::isfinite(v))
        throw NonFinite("integrate: state overflow", t_next);
    ts.samples.push_back({t_next, s[0], s[1], s[2], s[3]});
  }
  return ts;
}

TimeSeries integrate(const SystemParams& p, const DriveSpec& d,
                     const IntegratorConfig& cfg) {
  d.validate();
  const auto [f1, f2] = drive_amplitudes(d.mix_ratio, d.phase_offset);
  return integrate_forces(p, f1, f2, d.frequency, cfg);
}

SteadyAmplitudes extract_steady(const TimeSeries& ts, double frequency,
                                int n_cycles) {
  if (n_cycles < 5)
    throw std::domain_error("extract_steady: need at least 5 cycles");
  if (ts.samples.empty())
    throw std::domain_error("extract_steady: empty series");
  const double period = 2.0 * std::numbers::pi / frequency;
  const double t_last = ts.samples.back().t;
  const double t0 = t_last - n_cycles * period;
  const double t0_wide = t_last - (n_cycles + 1) * period;
  if (t0_wide < ts.samples.front().t)
    throw std::domain_error(
        "extract_steady: series shorter than the requested cycle count");

  const cd a1 = fit_phasor(ts, frequency, t0, true);
  const cd a2 = fit_phasor(ts, frequency, t0, false);
  const cd a1_wide = fit_phasor(ts, frequency, t0_wide, true);
  const cd a2_wide = fit_phasor(ts, frequency, t0_wide, false);

  const double scale = std::max({std::abs(a1), std::abs(a2), 1e-300});
  const double drift =
      std::max(std::abs(a1 - a1_wide), std::abs(a2 - a2_wide)) / scale;
  if (drift > 1e-3)
    throw NotConverged("extract_steady: fit drifts across windows", drift);
  return {a1, a2};
}

double hertz_energy(const SystemParams& p, const TimeSeries::Sample& s) {
  const double knl = *p.hertz_stiffness;
  const double sig = *p.precompression;
  auto potential = [&](double x) {
    const double overlap = x + sig;
    if (overlap <= 0.0) return 0.0;
    return 0.4 * knl * overlap * overlap * std::sqrt(overlap);
  };
  return 0.5 * p.mass * (s.v1 * s.v1 + s.v2 * s.v2) + potential(-s.u1) +
         potential(s.u1 - s.u2) + potential(s.u2);
}

}  // namespace elasticbit
