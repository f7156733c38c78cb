#include "elasticbit/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace elasticbit {

void MaterialSpec::validate() const {
  if (!(youngs_modulus > 0.0))
    throw std::domain_error("MaterialSpec: Young's modulus must be > 0");
  if (!(poisson_ratio >= 0.0 && poisson_ratio < 0.5))
    throw std::domain_error("MaterialSpec: Poisson ratio must be in [0, 0.5)");
  if (!(radius > 0.0))
    throw std::domain_error("MaterialSpec: radius must be > 0");
  if (!(density > 0.0))
    throw std::domain_error("MaterialSpec: density must be > 0");
  if (!(precompression > 0.0))
    throw std::domain_error("MaterialSpec: pre-compression must be > 0");
}

void SystemParams::validate() const {
  if (!(mass > 0.0)) throw std::domain_error("SystemParams: mass must be > 0");
  if (!(stiffness > 0.0))
    throw std::domain_error("SystemParams: stiffness must be > 0");
  if (!(damping >= 0.0))
    throw std::domain_error("SystemParams: damping must be >= 0");
  if (hertz_stiffness.has_value() != precompression.has_value())
    throw std::domain_error(
        "SystemParams: hertz_stiffness and precompression must be present "
        "together or both absent");
  if (hertz_stiffness) {
    if (!(*hertz_stiffness > 0.0) || !(*precompression > 0.0))
      throw std::domain_error(
          "SystemParams: Hertzian constants must be > 0");
    const double derived = 1.5 * *hertz_stiffness * std::sqrt(*precompression);
    if (std::abs(derived - stiffness) > 1e-12 * stiffness)
      throw std::domain_error(
          "SystemParams: stiffness inconsistent with (3/2) k_NL sqrt(sigma0)");
  }
}

SystemParams SystemParams::from_hertz(double mass, double hertz_stiffness,
                                      double precompression, double damping) {
  SystemParams p;
  p.mass = mass;
  p.stiffness = 1.5 * hertz_stiffness * std::sqrt(precompression);
  p.damping = damping;
  p.hertz_stiffness = hertz_stiffness;
  p.precompression = precompression;
  p.validate();
  return p;
}

HertzParams hertz_params(const MaterialSpec& mat) {
  mat.validate();
  const double nu = mat.poisson_ratio;
  HertzParams out;
  out.stiffness =
      mat.youngs_modulus * std::sqrt(2.0 * mat.radius) / (3.0 * (1.0 - nu * nu));
  out.mass = (4.0 / 3.0) * std::numbers::pi * mat.density *
             mat.radius * mat.radius * mat.radius;
  return out;
}

LinearizedStiffness linearize(double hertz_stiffness, double precompression) {
  if (!(hertz_stiffness > 0.0) || !(precompression > 0.0))
    throw std::domain_error("linearize: inputs must be > 0");
  LinearizedStiffness out;
  const double root = std::sqrt(precompression);
  out.k_linear = 1.5 * hertz_stiffness * root;
  out.k_quadratic = -(3.0 / 8.0) * hertz_stiffness / root;
  out.k_cubic = -(1.0 / 16.0) * hertz_stiffness / (precompression * root);
  return out;
}

Eigen::Matrix2d stiffness_matrix(const SystemParams& p, double drive_freq) {
  p.validate();
  if (!(drive_freq >= 0.0))
    throw std::domain_error("stiffness_matrix: frequency must be >= 0");
  const double diag = -p.mass * drive_freq * drive_freq + 2.0 * p.stiffness;
  Eigen::Matrix2d k;
  k << diag, -p.stiffness, -p.stiffness, diag;
  return k;
}

EigenPair eigenfrequencies(const SystemParams& p) {
  p.validate();
  const double base = std::sqrt(p.stiffness / p.mass);
  return {base, std::sqrt(3.0) * base};
}

}  // namespace elasticbit
