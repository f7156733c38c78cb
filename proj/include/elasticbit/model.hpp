#pragma once

#include <Eigen/Dense>
#include <optional>

namespace elasticbit {

/// Material provenance for the Hertzian contact constants. Optional:
/// every downstream computation runs from SystemParams alone.
struct MaterialSpec {
  double youngs_modulus;  // E
  double poisson_ratio;   // nu
  double radius;          // R
  double density;         // rho
  double precompression;  // sigma_0

  void validate() const;
};

/// Non-dimensional parameters of the two-granule system. The Hertzian
/// pair (hertz_stiffness, precompression) is either present together or
/// absent; when present it must be consistent with the linear stiffness.
struct SystemParams {
  double mass = 1.0;       // m
  double stiffness = 1.0;  // k_L
  double damping = 0.003;  // eta
  std::optional<double> hertz_stiffness;  // k_NL
  std::optional<double> precompression;   // sigma_0

  void validate() const;

  /// Builds params from the Hertzian constants, deriving k_L.
  static SystemParams from_hertz(double mass, double hertz_stiffness,
                                 double precompression, double damping);
};

/// Taylor coefficients of the contact force about the pre-compressed
/// equilibrium. Signs follow the series as printed: k2 and k3 are
/// negative for positive inputs.
struct LinearizedStiffness {
  double k_linear;     // k_L
  double k_quadratic;  // k2
  double k_cubic;      // k3
};

struct EigenPair {
  double in_phase;      // omega_01
  double out_of_phase;  // omega_02
};

struct HertzParams {
  double stiffness;  // k_NL
  double mass;       // m
};

/// k_NL = E*sqrt(2R)/(3(1-nu^2)), m = (4/3)*pi*rho*R^3.
HertzParams hertz_params(const MaterialSpec& mat);

/// k_L = (3/2) k_NL sqrt(sigma0), k2 = -(3/8) k_NL / sqrt(sigma0),
/// k3 = -(1/16) k_NL sigma0^{-3/2}.
LinearizedStiffness linearize(double hertz_stiffness, double precompression);

/// [[-m w^2 + 2 k_L, -k_L], [-k_L, -m w^2 + 2 k_L]]
Eigen::Matrix2d stiffness_matrix(const SystemParams& p, double drive_freq);

/// omega_01 = sqrt(k_L/m), omega_02 = sqrt(3 k_L/m).
EigenPair eigenfrequencies(const SystemParams& p);

}  // namespace elasticbit
