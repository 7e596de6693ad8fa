#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "driveshaft/shaft.hpp"

namespace driveshaft {

/// Viscoelastic intermediate support seen by one shaft end pair.
struct SupportProperties {
  double mass = 0.0;       // m_b, kg, mass participating in the rigid modes
  double stiffness = 0.0;  // k_e, N/m
  double eta_e = 0.0;      // support loss factor
};

/// Dimensionless modal quantities of harmonic n for the simply supported
/// Timoshenko tube on elastic supports.
struct ModalParameters {
  int n = 1;
  double omega_shaft_sq = 0.0;    // squared pinned-tube bending frequency
  double omega_support_sq = 0.0;  // squared rigid-tube-on-supports frequency
  double gyro_ratio = 0.0;        // rotary-inertia coupling Gamma_n
  double flex_ratio = 0.0;        // shear/rotary amplification Pi_n >= 1
  double mass_ratio = 0.0;        // Phi_n, shaft-to-support mass participation
  double coupled_ratio = 0.0;     // Psi_n = Pi_n - 4 Phi_n / (n pi)^2
  double modal_stiffness = 0.0;   // k_sn = m_s omega_sn^2, N/m
};

/// Evaluates the harmonic-n modal quantities, including the alternating
/// support mass share m_s / (2 (2 + (-1)^n)).
ModalParameters modal_parameters(const ShaftGeometry& geom,
                                 const SectionProperties& section,
                                 const HomogenizedShaftMaterial& mat,
                                 const SupportProperties& support, int n);

/// Four synchronous whirl speeds of one harmonic, rad/s. Backward speeds are
/// stored negative.
struct CriticalSpeeds {
  int n = 1;
  double forward_low = 0.0;
  double forward_high = 0.0;
  double backward_low = 0.0;   // <= 0
  double backward_high = 0.0;  // <= 0
};

/// Closed-form whirl speeds of one harmonic. Empty when the radicand turns
/// negative or the quartic leading coefficient loses positivity (parameter
/// regime outside the model's validity).
std::optional<CriticalSpeeds> critical_speeds(const ModalParameters& p);

/// First forward critical in the rigid-support limit (k_e -> infinity):
/// omega = sqrt(omega_s1^2 / (Pi_1 - Gamma_1)), rad/s.
double rigid_support_first_critical(const ModalParameters& p);

/// Independent verification route: Galerkin projection of the coupled
/// shaft/support equations on one sine mode plus the matching rigid support
/// coordinate, solved as a quadratic in Omega^2 for forward synchronous whirl.
/// Returns the positive forward whirl speeds, ascending, rad/s.
std::vector<double> eigen_oracle(const ShaftGeometry& geom,
                                 const SectionProperties& section,
                                 const HomogenizedShaftMaterial& mat,
                                 const SupportProperties& support, int n);

/// Undamped forward whirl pair of the stability criterion (gyroscopic terms
/// dropped): same closed form with Psi_n and Pi_n in place of the
/// Gamma-shifted coefficients.
std::pair<double, double> undamped_whirl_speeds(const ModalParameters& p);

/// One branch of the hysteretic stability criterion.
struct BranchDiagnostic {
  int n = 1;
  int branch = -1;         // -1 low root, +1 high root
  double omega0 = 0.0;     // undamped whirl speed of the branch, rad/s
  double criterion = 0.0;  // sign(branch) * (external - internal) damping work
  bool unstable = false;
};

struct StabilityResult {
  bool stable_at_all_speeds = true;
  std::optional<double> threshold;  // lowest unstable branch speed, rad/s
  std::vector<BranchDiagnostic> branches;
};

/// Evaluates the rotating-damping instability criterion per harmonic and
/// branch: a branch with
///   sign * (eta_e k_e Phi (Pi w^2 - omega_s^2) - eta_i k_sn (w^2 - omega_b^2)) < 0
/// is unstable above its whirl speed; the threshold is the minimum such speed.
StabilityResult stability_threshold(const ShaftGeometry& geom,
                                    const SectionProperties& section,
                                    const HomogenizedShaftMaterial& mat,
                                    const SupportProperties& support,
                                    double eta_i, double eta_e, int n_max);

}  // namespace driveshaft
