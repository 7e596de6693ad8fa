#include "driveshaft/strength.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace driveshaft {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

/// Per-ply stress factors (Pa per N m of torque) at the worse ply face.
std::vector<PlyStress> stress_factors(const StackingSequence& seq,
                                      double mean_radius,
                                      CouplingTreatment coupling) {
  if (seq.empty()) {
    throw std::invalid_argument("stacking sequence must contain a ply");
  }
  if (mean_radius <= 0) {
    throw std::invalid_argument("mean radius must be positive");
  }
  const LaminateStiffness lam = build_abd(seq);
  const double nxy =
      1.0 / (2.0 * std::numbers::pi * mean_radius * mean_radius);

  Eigen::Vector3d strain0;
  Eigen::Vector3d curvature = Eigen::Vector3d::Zero();
  if (coupling == CouplingTreatment::BZero) {
    strain0 = lam.a * Eigen::Vector3d(0.0, 0.0, nxy);
  } else {
    Eigen::Matrix<double, 6, 6> abd;
    abd.topLeftCorner<3, 3>() = lam.A;
    abd.topRightCorner<3, 3>() = lam.B;
    abd.bottomLeftCorner<3, 3>() = lam.B;
    abd.bottomRightCorner<3, 3>() = lam.D;
    Eigen::Matrix<double, 6, 1> rhs = Eigen::Matrix<double, 6, 1>::Zero();
    rhs(2) = nxy;
    Eigen::FullPivLU<Eigen::Matrix<double, 6, 6>> lu(abd);
    if (!lu.isInvertible()) {
      throw std::invalid_argument("degenerate laminate: ABD is singular");
    }
    const Eigen::Matrix<double, 6, 1> sol = lu.solve(rhs);
    strain0 = sol.head<3>();
    curvature = sol.tail<3>();
  }

  std::vector<PlyStress> out;
  out.reserve(seq.size());
  double z = -lam.thickness / 2.0;
  for (const Ply& p : seq) {
    const double z1 = z + p.material.t_ply;
    const ReducedStiffness q = reduced_stiffness(p.material);
    const double th = p.angle_deg * kDegToRad;
    const double c = std::cos(th);
    const double s = std::sin(th);
    PlyStress worst{};
    double worst_measure = -1.0;
    for (double zz : {z, z1}) {
      const Eigen::Vector3d eps = strain0 + zz * curvature;
      // Laminate-axis strains rotated to ply axes (engineering shear).
      const double e1 = c * c * eps(0) + s * s * eps(1) + s * c * eps(2);
      const double e2 = s * s * eps(0) + c * c * eps(1) - s * c * eps(2);
      const double g12 = -2.0 * s * c * eps(0) + 2.0 * s * c * eps(1) +
                         (c * c - s * s) * eps(2);
      PlyStress st;
      st.sigma11 = q.q11 * e1 + q.q12 * e2;
      st.sigma22 = q.q12 * e1 + q.q22 * e2;
      st.sigma12 = q.q66 * g12;
      const double measure = std::abs(st.sigma11) + std::abs(st.sigma12);
      if (measure > worst_measure) {
        worst_measure = measure;
        worst = st;
      }
    }
    out.push_back(worst);
    z = z1;
  }
  return out;
}

}  // namespace

PlyStressState ply_stresses_under_torsion(const StackingSequence& seq,
                                          double mean_radius, double torque,
                                          CouplingTreatment coupling) {
  PlyStressState state;
  state.torque = torque;
  state.plies = stress_factors(seq, mean_radius, coupling);
  for (PlyStress& st : state.plies) {
    st.sigma11 *= torque;
    st.sigma22 *= torque;
    st.sigma12 *= torque;
  }
  return state;
}

TorqueCapacity torque_capacity(const StackingSequence& seq, double mean_radius,
                               FailureCriterion criterion,
                               CouplingTreatment coupling, int direction,
                               double tsai_wu_interaction) {
  if (direction != 1 && direction != -1) {
    throw std::invalid_argument("torque direction must be +1 or -1");
  }
  const std::vector<PlyStress> factors =
      stress_factors(seq, mean_radius, coupling);

  TorqueCapacity cap;
  cap.criterion = criterion;
  cap.coupling = coupling;
  cap.direction = direction;
  double best = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < factors.size(); ++i) {
    const PlyMaterial& m = seq[i].material;
    const double s11 = direction * factors[i].sigma11;
    const double s22 = direction * factors[i].sigma22;
    const double s12 = direction * factors[i].sigma12;
    double scale = std::numeric_limits<double>::infinity();

    if (criterion == FailureCriterion::MaxStress) {
      // Fiber-direction bound by sign; shear bound by magnitude. Transverse
      // cracking is not treated as tube failure.
      if (s11 > 0.0) {
        scale = std::min(scale, m.xt / s11);
      } else if (s11 < 0.0) {
        scale = std::min(scale, m.xc / (-s11));
      }
      if (s12 != 0.0) scale = std::min(scale, m.s12 / std::abs(s12));
    } else {
      const double f1 = 1.0 / m.xt - 1.0 / m.xc;
      const double f2 = 1.0 / m.yt - 1.0 / m.yc;
      const double f11 = 1.0 / (m.xt * m.xc);
      const double f22 = 1.0 / (m.yt * m.yc);
      const double f66 = 1.0 / (m.s12 * m.s12);
      const double f12 = tsai_wu_interaction * std::sqrt(f11 * f22);
      const double quad = f11 * s11 * s11 + f22 * s22 * s22 +
                          f66 * s12 * s12 + 2.0 * f12 * s11 * s22;
      const double lin = f1 * s11 + f2 * s22;
      if (quad > 0.0) {
        const double disc = lin * lin + 4.0 * quad;
        scale = (-lin + std::sqrt(disc)) / (2.0 * quad);
      } else if (lin > 0.0) {
        scale = 1.0 / lin;
      }
    }

    if (scale < best) {
      best = scale;
      cap.critical_ply = static_cast<int>(i);
    }
  }

  if (!std::isfinite(best)) {
    throw std::invalid_argument(
        "degenerate stress state: unbounded torque capacity");
  }
  cap.torque = best;  // unit reference torque of 1 N m
  return cap;
}

}  // namespace driveshaft
