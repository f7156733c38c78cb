#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "elasticbit/angles.hpp"
#include "elasticbit/berry.hpp"
#include "elasticbit/errors.hpp"

using namespace elasticbit;
using cd = std::complex<double>;

namespace {

const double kPi = std::numbers::pi;
const double kSqrt2 = std::numbers::sqrt2;

double circular_diff(double a, double b) {
  return std::abs(wrap_angle(a - b));
}

}  // namespace

TEST_CASE("state_overlap basics") {
  const ModalState e1 = state_from_angles({0.0, 0.0});
  const ModalState e2 = state_from_angles({kPi, 0.0});
  CHECK(std::abs(state_overlap(e1, e1) - cd(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(state_overlap(e1, e2)) < 1e-15);

  // first-order phase of a small azimuthal step at theta = pi/2
  const double dphi = 1e-3;
  const ModalState a = state_from_angles({kPi / 2.0, 0.1});
  const ModalState b = state_from_angles({kPi / 2.0, 0.1 + dphi});
  CHECK(std::arg(state_overlap(a, b)) ==
        doctest::Approx(0.5 * dphi).epsilon(1e-9));
}

TEST_CASE("overlap magnitude bounded by one") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> polar(0.0, kPi);
  std::uniform_real_distribution<double> azimuth(-kPi + 1e-9, kPi);
  for (int i = 0; i < 500; ++i) {
    const ModalState a = state_from_angles({polar(rng), azimuth(rng)});
    const ModalState b = state_from_angles({polar(rng), azimuth(rng)});
    CHECK(std::abs(state_overlap(a, b)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("nontrivial loop at the transition point") {
  SystemParams p;
  const BerryLoopResult r = berry_phase_loop(p, {0.5, kSqrt2, 4096});
  CHECK(std::abs(r.discrete_phase) == doctest::Approx(kPi).epsilon(1e-3));
  CHECK(circular_diff(r.discrete_phase, r.analytic_phase) < 1e-3);
  CHECK(r.winding == 1);
  CHECK(r.polar == doctest::Approx(kPi / 2.0).epsilon(1e-9));
}

TEST_CASE("trivial loops at pure drives") {
  SystemParams p;
  CHECK(std::abs(berry_phase_loop(p, {1.0, kSqrt2, 4096}).discrete_phase) <
        1e-6);
  CHECK(std::abs(berry_phase_loop(p, {0.0, kSqrt2, 4096}).discrete_phase) <
        1e-6);
}

TEST_CASE("intermediate ratio gives the wrapped analytic value") {
  SystemParams p;
  const BerryLoopResult r = berry_phase_loop(p, {0.25, kSqrt2, 4096});
  CHECK(std::abs(r.discrete_phase) == doctest::Approx(0.2 * kPi).epsilon(2e-2));
}

TEST_CASE("berry_phase_analytic") {
  CHECK(berry_phase_analytic(kPi / 2.0, 2.0 * kPi) ==
        doctest::Approx(-kPi).epsilon(1e-14));
  CHECK(std::abs(berry_phase_analytic(kPi / 2.0, 2.0 * kPi)) ==
        doctest::Approx(kPi).epsilon(1e-14));
  CHECK(berry_phase_analytic(0.0, 5.0) == 0.0);
  CHECK(berry_phase_analytic(kPi, 2.0 * kPi) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("loop validation") {
  SystemParams p;
  CHECK_THROWS_AS(berry_phase_loop(p, {0.5, kSqrt2, 4}), std::domain_error);
  CHECK_THROWS_AS(berry_phase_loop(p, {1.5, kSqrt2, 64}), std::domain_error);
}

TEST_CASE("gauge invariance of the discrete loop phase") {
  SystemParams p;
  const int n = 256;
  std::vector<ModalState> states;
  for (int k = 0; k < n; ++k) {
    const double delta = -kPi + 2.0 * kPi * (k + 1) / n;
    states.push_back(state_for_drive(p, {0.37, delta, 1.25}));
  }
  auto loop_phase = [&](const std::vector<ModalState>& s) {
    double sum = 0.0;
    for (int k = 0; k < n; ++k)
      sum += std::arg(state_overlap(s[k], s[(k + 1) % n]));
    return wrap_angle(sum);
  };
  const double reference = loop_phase(states);

  std::mt19937 rng(31);
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  std::vector<ModalState> rephased = states;
  for (auto& s : rephased) {
    const cd factor = std::polar(1.0, phase(rng));
    s.alpha *= factor;
    s.beta *= factor;
  }
  CHECK(circular_diff(loop_phase(rephased), reference) < 1e-10);
}

TEST_CASE("discrete loop converges to the analytic value") {
  SystemParams p;
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> freq(1.05, 1.7);
  std::uniform_real_distribution<double> ratio(0.05, 0.95);
  for (int trial = 0; trial < 20; ++trial) {
    const double w = freq(rng);
    const double r = ratio(rng);
    double prev_err = -1.0;
    for (int n = 64; n <= 4096; n *= 2) {
      const BerryLoopResult res = berry_phase_loop(p, {r, w, n});
      const double err = circular_diff(res.discrete_phase, res.analytic_phase);
      if (prev_err >= 0.0 && prev_err > 1e-12)
        CHECK(err <= 0.5 * prev_err + 1e-12);
      prev_err = err;
    }
  }
}

TEST_CASE("derivative identities of the Bloch state") {
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> polar(0.1, kPi - 0.1);
  std::uniform_real_distribution<double> azimuth(-kPi + 0.1, kPi - 0.1);
  const double h = 1e-4;
  for (int i = 0; i < 50; ++i) {
    const double theta = polar(rng);
    const double phi = azimuth(rng);
    const ModalState s = state_from_angles({theta, phi});

    const ModalState phi_plus = state_from_angles({theta, phi + h});
    const ModalState phi_minus = state_from_angles({theta, phi - h});
    const cd d_phi = (state_overlap(s, phi_plus) -
                      state_overlap(s, phi_minus)) /
                     (2.0 * h);
    const cd connection = cd(0.0, 1.0) * d_phi;
    const double expected = std::sin(theta / 2.0) * std::sin(theta / 2.0);
    CHECK(std::abs(connection - cd(-expected, 0.0)) < 1e-6);

    const ModalState th_plus = state_from_angles({theta + h, phi});
    const ModalState th_minus = state_from_angles({theta - h, phi});
    const cd d_theta = (state_overlap(s, th_plus) -
                        state_overlap(s, th_minus)) /
                       (2.0 * h);
    CHECK(std::abs(d_theta) < 1e-6);
  }
}

TEST_CASE("unquantized phase away from the transition curve") {
  SystemParams p;
  for (double r : {0.15, 0.3, 0.7, 0.85}) {
    const double g =
        std::abs(berry_phase_loop(p, {r, kSqrt2, 1024}).discrete_phase);
    CHECK(g > 1e-3);
    CHECK(g < kPi - 1e-3);
  }
}

TEST_CASE("sweep surface structure") {
  SystemParams p;
  std::vector<double> freqs = {kSqrt2};
  std::vector<double> ratios;
  for (int i = 0; i <= 10; ++i) ratios.push_back(i / 10.0);
  const auto cells = berry_sweep(p, freqs, ratios, 1024);
  REQUIRE(cells.size() == 11);
  CHECK(cells.front().phase_abs < 1e-6);  // ratio 0
  CHECK(cells.back().phase_abs < 1e-6);   // ratio 1
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].phase_abs > cells[argmax].phase_abs) argmax = i;
  CHECK(ratios[argmax] == 0.5);
  CHECK(cells[argmax].phase_abs == doctest::Approx(kPi).epsilon(1e-3));
}

TEST_CASE("sweep argmax follows the transition formula") {
  SystemParams p;
  std::vector<double> freqs = {1.1};
  std::vector<double> ratios;
  for (int i = 0; i <= 200; ++i) ratios.push_back(i / 200.0);
  const auto cells = berry_sweep(p, freqs, ratios, 512);
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i].phase_abs > cells[argmax].phase_abs) argmax = i;
  CHECK(ratios[argmax] == doctest::Approx(0.105).epsilon(0.05));
}

TEST_CASE("sweep never aborts on per-cell failures") {
  SystemParams p;
  p.damping = 0.0;
  std::vector<double> freqs = {1.0, 1.2};  // 1.0 is an undamped resonance
  std::vector<double> ratios = {0.5};
  const auto cells = berry_sweep(p, freqs, ratios, 64);
  REQUIRE(cells.size() == 2);
  CHECK_FALSE(cells[0].ok);
  CHECK(std::isnan(cells[0].phase_abs));
  CHECK(cells[1].ok);
}

TEST_CASE("sweep result order is independent of jobs") {
  SystemParams p;
  std::vector<double> freqs = {1.1, 1.3, 1.5};
  std::vector<double> ratios = {0.2, 0.5, 0.8};
  const auto serial = berry_sweep(p, freqs, ratios, 128, 1);
  const auto parallel = berry_sweep(p, freqs, ratios, 128, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].frequency == parallel[i].frequency);
    CHECK(serial[i].mix_ratio == parallel[i].mix_ratio);
    CHECK(serial[i].phase_abs == parallel[i].phase_abs);
  }
}

TEST_CASE("transition_ratio endpoints and midpoint") {
  const EigenPair e{1.0, std::sqrt(3.0)};
  CHECK(transition_ratio(kSqrt2, e) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(transition_ratio(1.0 + 1e-12, e) ==
        doctest::Approx(0.0).epsilon(1e-11));
  CHECK(transition_ratio(std::sqrt(3.0) - 1e-12, e) ==
        doctest::Approx(1.0).epsilon(1e-11));
  CHECK_THROWS_AS(transition_ratio(1.0, e), std::domain_error);
  CHECK_THROWS_AS(transition_ratio(2.0, e), std::domain_error);
}
