#pragma once

#include <Eigen/Dense>

#include "driveshaft/clt.hpp"
#include "driveshaft/shaft.hpp"

namespace driveshaft {

/// Buckled shell mode: h circumferential half-waves, p axial half-waves
/// (positive real in the long-tube model), lambda = p pi r / l.
struct BucklingMode {
  int h = 0;
  double p = 0.0;
  double lambda = 0.0;
};

/// 3x3 stiffness matrix of the torsional shell buckling eigenproblem for the
/// trial displacement field at (h, lambda); every entry is affine in the
/// applied torque through T / (pi r^2).
Eigen::Matrix3d stiffness_matrix(const LaminateStiffness& lam, double radius,
                                 int h, double lambda, double torque);

/// Affine split K(T) = K0 + T * K1 of the same matrix.
void stiffness_matrix_split(const LaminateStiffness& lam, double radius, int h,
                            double lambda, Eigen::Matrix3d& k0,
                            Eigen::Matrix3d& k1);

struct BucklingSearchConfig {
  int h_max = 4;            // circumferential half-waves searched, both helices
  int grid_points = 36;     // log-spaced axial grid around the seed
  double span = 6.0;        // grid covers [p0/span, p0*span]
  bool refine = true;       // golden-section refinement of the best p
  int golden_iterations = 28;
  double refine_lo = 0.85;  // refinement bracket, relative to the best p
  double refine_hi = 1.18;
  double degeneracy_tol = 1e-8;   // |det K0| / prod(row norms) floor
  double root_floor_frac = 1e-3;  // accepted roots exceed frac * torque scale
};

struct BucklingResult {
  bool found = false;
  double torque = 0.0;  // signed: positive direction > 0, negative < 0
  BucklingMode mode;
};

/// Seeded grid search: for each h the determinant of K(T) is cubic in T;
/// its coefficients are recovered from four determinant samples and the
/// smallest admissible root tracked over a log grid of p around the
/// orthotropic seed p0 = (l / pi r) (48 t^2 / 12 r^2)^(1/4), then refined.
/// direction selects the torque sign (+1 or -1).
BucklingResult buckling_torque(const LaminateStiffness& lam,
                               const ShaftGeometry& geom, int direction,
                               const BucklingSearchConfig& cfg = {});

/// Brute-force verification route: h up to h_max_dense on a dense log grid of
/// p, roots located by stepping the determinant in T and bisecting the first
/// sign change instead of interpolating the cubic.
BucklingResult buckling_torque_dense(const LaminateStiffness& lam,
                                     const ShaftGeometry& geom, int direction,
                                     int h_max_dense = 8,
                                     int grid_points = 2000);

/// Closed-form estimate 11 sqrt(r) (A11 - A12^2/A22)^(1/4) D22^(3/4), N m.
double hayashi_torque(const LaminateStiffness& lam, double radius);

}  // namespace driveshaft
