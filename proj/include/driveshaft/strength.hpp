#pragma once

#include <vector>

#include "driveshaft/clt.hpp"

namespace driveshaft {

enum class FailureCriterion { MaxStress, TsaiWu };

/// Whether the membrane/bending coupling matrix is zeroed before inverting
/// the laminate relation (the classical thin-tube simplification) or kept.
enum class CouplingTreatment { BZero, BAsIs };

/// In-plane ply stresses in ply axes, Pa.
struct PlyStress {
  double sigma11 = 0.0;
  double sigma22 = 0.0;
  double sigma12 = 0.0;
};

/// Worst-face ply stresses under the applied torque, inner ply first.
struct PlyStressState {
  std::vector<PlyStress> plies;
  double torque = 0.0;
};

/// Stress recovery under pure torsion: shear flow N_xy = T / (2 pi r^2);
/// with BZero the mid-plane strain solves A eps = (0, 0, N_xy) at zero
/// curvature, with BAsIs the full plate relation is solved at zero moments
/// and each ply is evaluated at both faces, keeping the worse one.
PlyStressState ply_stresses_under_torsion(const StackingSequence& seq,
                                          double mean_radius, double torque,
                                          CouplingTreatment coupling);

struct TorqueCapacity {
  double torque = 0.0;  // first-ply-failure torque magnitude, N m
  int critical_ply = -1;
  FailureCriterion criterion = FailureCriterion::MaxStress;
  CouplingTreatment coupling = CouplingTreatment::BZero;
  int direction = +1;
};

/// Smallest torque magnitude at which some ply first violates the criterion.
/// Max stress bounds the fiber stress by (xt, xc) by sign and |sigma12| by s12;
/// Tsai-Wu solves the per-ply quadratic q t^2 + l t = 1 for the positive root.
/// The quadratic interaction coefficient is tsai_wu_interaction *
/// sqrt(F11 F22); the default -0.5 reproduces the published tube capacities.
/// Throws std::invalid_argument on degenerate (zero stress) states.
TorqueCapacity torque_capacity(const StackingSequence& seq, double mean_radius,
                               FailureCriterion criterion,
                               CouplingTreatment coupling, int direction = +1,
                               double tsai_wu_interaction = -0.5);

}  // namespace driveshaft
