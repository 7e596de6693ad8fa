#include "driveshaft/clt.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace driveshaft {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

/// Rotation of the reduced stiffness to laminate axes for scalar moduli of
/// any numeric type (double for elasticity, complex for damping).
template <typename T>
void fill_rotated(T q11, T q22, T q12, T q66, double angle_deg,
                  Eigen::Matrix<T, 3, 3>& qb) {
  const double th = angle_deg * kDegToRad;
  const double c = std::cos(th);
  const double s = std::sin(th);
  const double c2 = c * c;
  const double s2 = s * s;
  const double c4 = c2 * c2;
  const double s4 = s2 * s2;
  const double s2c2 = s2 * c2;
  qb(0, 0) = q11 * c4 + 2.0 * (q12 + 2.0 * q66) * s2c2 + q22 * s4;
  qb(1, 1) = q11 * s4 + 2.0 * (q12 + 2.0 * q66) * s2c2 + q22 * c4;
  qb(0, 1) = qb(1, 0) = (q11 + q22 - 4.0 * q66) * s2c2 + q12 * (c4 + s4);
  qb(2, 2) = (q11 + q22 - 2.0 * q12 - 2.0 * q66) * s2c2 + q66 * (s4 + c4);
  qb(0, 2) = qb(2, 0) = (q11 - q12 - 2.0 * q66) * (s * c2 * c) +
                        (q12 - q22 + 2.0 * q66) * (s * s2 * c);
  qb(1, 2) = qb(2, 1) = (q11 - q12 - 2.0 * q66) * (s * s2 * c) +
                        (q12 - q22 + 2.0 * q66) * (s * c2 * c);
}

template <typename T>
void reduced(T e11, T e22, T g12, double nu12, T& q11, T& q22, T& q12) {
  const T den = 1.0 - nu12 * nu12 * e22 / e11;
  q11 = e11 / den;
  q22 = e22 / den;
  q12 = nu12 * q22;
  (void)g12;
}

}  // namespace

ReducedStiffness reduced_stiffness(const PlyMaterial& m) {
  ReducedStiffness q;
  reduced<double>(m.e11, m.e22, m.g12, m.nu12, q.q11, q.q22, q.q12);
  q.q66 = m.g12;
  return q;
}

Eigen::Matrix3d rotated_stiffness(const PlyMaterial& m, double angle_deg) {
  const ReducedStiffness q = reduced_stiffness(m);
  Eigen::Matrix3d qb;
  fill_rotated<double>(q.q11, q.q22, q.q12, q.q66, angle_deg, qb);
  return qb;
}

LaminateStiffness build_abd(const StackingSequence& seq) {
  if (seq.empty()) {
    throw std::invalid_argument("stacking sequence must contain a ply");
  }
  LaminateStiffness out;
  out.A.setZero();
  out.B.setZero();
  out.D.setZero();
  out.thickness = sequence_thickness(seq);
  double z = -out.thickness / 2.0;
  for (const Ply& p : seq) {
    const double z1 = z + p.material.t_ply;
    const Eigen::Matrix3d qb = rotated_stiffness(p.material, p.angle_deg);
    out.A += qb * (z1 - z);
    out.B += qb * ((z1 * z1 - z * z) / 2.0);
    out.D += qb * ((z1 * z1 * z1 - z * z * z) / 3.0);
    z = z1;
  }
  Eigen::FullPivLU<Eigen::Matrix3d> lu(out.A);
  if (!lu.isInvertible()) {
    throw std::invalid_argument("degenerate laminate: A is singular");
  }
  out.a = lu.inverse();
  return out;
}

double homogenize_damping(const StackingSequence& seq) {
  using C = std::complex<double>;
  if (seq.empty()) {
    throw std::invalid_argument("stacking sequence must contain a ply");
  }
  Eigen::Matrix3cd a_complex = Eigen::Matrix3cd::Zero();
  double t = 0.0;
  for (const Ply& p : seq) {
    const PlyMaterial& m = p.material;
    const C e11 = m.e11 * C(1.0, m.eta11);
    const C e22 = m.e22 * C(1.0, m.eta22);
    const C g12 = m.g12 * C(1.0, m.eta66);
    C q11, q22, q12;
    reduced<C>(e11, e22, g12, m.nu12, q11, q22, q12);
    Eigen::Matrix3cd qb;
    fill_rotated<C>(q11, q22, q12, g12, p.angle_deg, qb);
    a_complex += qb * m.t_ply;
    t += m.t_ply;
  }
  const Eigen::Matrix3cd inv = a_complex.inverse();
  const C ex = 1.0 / (inv(0, 0) * t);
  return std::abs(ex.imag() / ex.real());
}

HomogenizedShaftMaterial homogenize(const StackingSequence& seq) {
  const LaminateStiffness lam = build_abd(seq);
  HomogenizedShaftMaterial h;
  h.thickness = lam.thickness;
  h.e_long = 1.0 / (lam.a(0, 0) * lam.thickness);
  h.g_shear = 1.0 / (lam.a(2, 2) * lam.thickness);
  h.nu = -lam.a(0, 1) / lam.a(0, 0);
  h.kappa = 2.0 * (1.0 + h.nu) / (4.0 + 3.0 * h.nu);
  double mass_per_area = 0.0;
  for (const Ply& p : seq) mass_per_area += p.material.rho * p.material.t_ply;
  h.rho = mass_per_area / lam.thickness;
  h.eta_i = homogenize_damping(seq);
  return h;
}

HomogenizedShaftMaterial isotropic_wall(double e, double nu, double rho,
                                        double thickness, double eta_i) {
  if (e <= 0 || rho <= 0 || thickness <= 0) {
    throw std::invalid_argument("isotropic wall needs positive E, rho, t");
  }
  HomogenizedShaftMaterial h;
  h.e_long = e;
  h.nu = nu;
  h.g_shear = e / (2.0 * (1.0 + nu));
  h.kappa = 2.0 * (1.0 + nu) / (4.0 + 3.0 * nu);
  h.rho = rho;
  h.thickness = thickness;
  h.eta_i = eta_i;
  return h;
}

}  // namespace driveshaft
