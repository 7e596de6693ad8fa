#pragma once

#include <Eigen/Dense>

#include "driveshaft/materials.hpp"

namespace driveshaft {

/// Plane-stress reduced stiffness of a ply in its principal axes.
struct ReducedStiffness {
  double q11 = 0.0;
  double q22 = 0.0;
  double q12 = 0.0;
  double q66 = 0.0;
};

ReducedStiffness reduced_stiffness(const PlyMaterial& m);

/// Reduced stiffness rotated to laminate axes (engineering shear strain).
Eigen::Matrix3d rotated_stiffness(const PlyMaterial& m, double angle_deg);

/// Laminate in-plane (A), coupling (B) and bending (D) stiffnesses with the
/// in-plane compliance a = A^-1; z measured from the laminate mid-surface,
/// inner ply first.
struct LaminateStiffness {
  Eigen::Matrix3d A;
  Eigen::Matrix3d B;
  Eigen::Matrix3d D;
  Eigen::Matrix3d a;  // inverse of A
  double thickness = 0.0;
};

/// Assembles A, B, D from the rotated ply stiffnesses.
/// Throws std::invalid_argument for an empty sequence or singular A.
LaminateStiffness build_abd(const StackingSequence& seq);

/// Equivalent-beam constants of the tube wall.
struct HomogenizedShaftMaterial {
  double e_long = 0.0;   // longitudinal modulus 1/(a11 t), Pa
  double g_shear = 0.0;  // shear modulus 1/(a66 t), Pa
  double nu = 0.0;       // -a12/a11
  double kappa = 0.0;    // section shear coefficient 2(1+nu)/(4+3nu)
  double rho = 0.0;      // thickness-weighted ply density, kg/m^3
  double thickness = 0.0;
  double eta_i = 0.0;    // equivalent longitudinal loss factor
};

/// Engineering constants from CLT plus the complex-modulus loss factor.
HomogenizedShaftMaterial homogenize(const StackingSequence& seq);

/// Equivalent longitudinal loss factor: the CLT homogenization is repeated
/// with complex ply moduli E*(1 + i eta); the result is
/// |Im(Ex) / Re(Ex)| with Ex = 1/(a11* t).
double homogenize_damping(const StackingSequence& seq);

/// Builds an equivalent single-material description for an isotropic wall,
/// convenient for metal or polymer fixtures analyzed with the same pipeline.
HomogenizedShaftMaterial isotropic_wall(double e, double nu, double rho,
                                        double thickness, double eta_i = 0.0);

}  // namespace driveshaft
