#include "elasticbit/berry.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "elasticbit/angles.hpp"
#include "elasticbit/errors.hpp"

namespace elasticbit {

void LoopSpec::validate() const {
  if (!(mix_ratio >= 0.0 && mix_ratio <= 1.0))
    throw std::domain_error("LoopSpec: mixing ratio must be in [0, 1]");
  if (!(frequency > 0.0))
    throw std::domain_error("LoopSpec: frequency must be > 0");
  if (steps < 8) throw std::domain_error("LoopSpec: need at least 8 steps");
}

std::complex<double> state_overlap(const ModalState& a, const ModalState& b) {
  return std::conj(a.alpha) * b.alpha + std::conj(a.beta) * b.beta;
}

BerryLoopResult berry_phase_loop(const SystemParams& p, const LoopSpec& loop) {
  loop.validate();
  const int n = loop.steps;
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<ModalState> states;
  states.reserve(n);
  for (int k = 0; k < n; ++k) {
    // delta grid spanning (-pi, pi]; index arithmetic mod N closes it.
    const double delta = -std::numbers::pi + two_pi * (k + 1) / n;
    states.push_back(
        state_for_drive(p, {loop.mix_ratio, delta, loop.frequency}));
  }

  double phase_sum = 0.0;
  for (int k = 0; k < n; ++k) {
    phase_sum += std::arg(state_overlap(states[k], states[(k + 1) % n]));
  }

  // Winding of the azimuth around the closed loop.
  double azimuth_total = 0.0;
  double prev = bloch_angles(states[0]).azimuth;
  for (int k = 1; k <= n; ++k) {
    const double cur = bloch_angles(states[k % n]).azimuth;
    azimuth_total += wrap_angle(cur - prev);
    prev = cur;
  }
  const int winding = static_cast<int>(std::lround(azimuth_total / two_pi));

  const double polar = bloch_angles(states[0]).polar;
  // The closed-form phase is written for the opposite azimuth orientation
  // than the stored angle convention, so the traversed change flips sign.
  return {wrap_angle(phase_sum),
          berry_phase_analytic(polar, -two_pi * winding), polar, winding, n};
}

double berry_phase_analytic(double polar, double azimuth_change) {
  if (!(polar >= 0.0 && polar <= std::numbers::pi))
    throw std::domain_error("berry_phase_analytic: polar must be in [0, pi]");
  return wrap_angle(-0.5 * azimuth_change * (1.0 - std::cos(polar)));
}

std::vector<SweepCell> berry_sweep(const SystemParams& p,
                                   std::span<const double> frequencies,
                                   std::span<const double> ratios, int steps,
                                   int jobs) {
  if (frequencies.empty() || ratios.empty())
    throw std::domain_error("berry_sweep: empty grid");
  const std::size_t total = frequencies.size() * ratios.size();
  std::vector<SweepCell> cells(total);

  auto run_cell = [&](std::size_t idx) {
    const double w = frequencies[idx / ratios.size()];
    const double r = ratios[idx % ratios.size()];
    SweepCell cell{w, r, std::numeric_limits<double>::quiet_NaN(), false};
    try {
      const BerryLoopResult res = berry_phase_loop(p, {r, w, steps});
      cell.phase_abs = std::abs(res.discrete_phase);
      cell.ok = true;
    } catch (const std::exception&) {
      // flagged cell; the sweep always completes
    }
    cells[idx] = cell;
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < total; ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int n_threads = std::min<std::size_t>(jobs, total);
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < total;
             i = next.fetch_add(1))
          run_cell(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  return cells;
}

double transition_ratio(double frequency, const EigenPair& e) {
  if (!(frequency > e.in_phase && frequency < e.out_of_phase))
    throw std::domain_error(
        "transition_ratio: frequency must lie strictly between the "
        "eigenfrequencies");
  const double raw = (2.0 * frequency * frequency +
                      e.in_phase * e.in_phase -
                      e.out_of_phase * e.out_of_phase) /
                     4.0;
  return std::clamp(raw, 0.0, 1.0);
}

}  // namespace elasticbit
