#include "driveshaft/rotordynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace driveshaft {

namespace {
constexpr double kPi = std::numbers::pi;
}

ModalParameters modal_parameters(const ShaftGeometry& geom,
                                 const SectionProperties& section,
                                 const HomogenizedShaftMaterial& mat,
                                 const SupportProperties& support, int n) {
  if (n < 1) throw std::invalid_argument("harmonic index must be >= 1");
  const double l = geom.length;
  const double n2pi2 = static_cast<double>(n) * n * kPi * kPi;
  ModalParameters p;
  p.n = n;
  p.omega_shaft_sq = n2pi2 * n2pi2 * mat.e_long * section.i_transverse /
                     (mat.rho * section.area * l * l * l * l);
  // The support sees half the shaft mass in the translational (odd) rigid
  // mode and one sixth in the rocking (even) one: m_s / (2 (2 + (-1)^n)).
  const double alternating = (n % 2 == 0) ? 1.0 : -1.0;
  const double support_share =
      section.shaft_mass / (2.0 * (2.0 + alternating));
  p.omega_support_sq = support.stiffness / (support.mass + support_share);
  p.gyro_ratio = n2pi2 * section.i_polar / (section.area * l * l);
  p.flex_ratio = 1.0 + n2pi2 * section.i_transverse / (section.area * l * l) *
                           (1.0 + mat.e_long / (mat.kappa * mat.g_shear));
  p.mass_ratio = section.shaft_mass / (support.mass + support_share);
  p.coupled_ratio = p.flex_ratio - 4.0 / n2pi2 * p.mass_ratio;
  p.modal_stiffness = section.shaft_mass * p.omega_shaft_sq;
  return p;
}

std::optional<CriticalSpeeds> critical_speeds(const ModalParameters& p) {
  CriticalSpeeds out;
  out.n = p.n;
  const double ws2 = p.omega_shaft_sq;
  const double wb2 = p.omega_support_sq;
  // Forward branch carries -Gamma, backward +Gamma.
  for (int branch = 0; branch < 2; ++branch) {
    const double sign = (branch == 0) ? -1.0 : +1.0;
    const double denom = p.coupled_ratio + sign * p.gyro_ratio;
    const double lead = p.flex_ratio + sign * p.gyro_ratio;
    const double radicand = ws2 * ws2 +
                            2.0 * (lead - 2.0 * denom) * ws2 * wb2 +
                            lead * lead * wb2 * wb2;
    if (radicand < 0.0 || denom <= 0.0) return std::nullopt;
    const double root = std::sqrt(radicand);
    const double lo =
        std::max((ws2 + lead * wb2 - root) / (2.0 * denom), 0.0);
    const double hi =
        std::max((ws2 + lead * wb2 + root) / (2.0 * denom), 0.0);
    if (branch == 0) {
      out.forward_low = std::sqrt(lo);
      out.forward_high = std::sqrt(hi);
    } else {
      out.backward_low = -std::sqrt(lo);
      out.backward_high = -std::sqrt(hi);
    }
  }
  return out;
}

double rigid_support_first_critical(const ModalParameters& p) {
  const double denom = p.flex_ratio - p.gyro_ratio;
  if (denom <= 0.0) {
    throw std::invalid_argument(
        "rotary inertia exceeds flexural terms: outside model validity");
  }
  return std::sqrt(p.omega_shaft_sq / denom);
}

std::vector<double> eigen_oracle(const ShaftGeometry& geom,
                                 const SectionProperties& section,
                                 const HomogenizedShaftMaterial& mat,
                                 const SupportProperties& support, int n) {
  // Galerkin projection on one sine mode q plus the rigid support coordinate
  // (translation u_b for odd n, rotation theta_b for even n). Synchronous
  // forward whirl turns the four-speed problem into a quadratic in Omega^2.
  const double l = geom.length;
  const double ms = section.shaft_mass;
  const double mb = support.mass;
  const double ke = support.stiffness;
  const double k2 = (n * kPi / l) * (n * kPi / l);
  const double ws2 = mat.e_long * section.i_transverse /
                     (mat.rho * section.area) * k2 * k2;
  const double flex = 1.0 + k2 * section.i_transverse / section.area *
                                (1.0 + mat.e_long / (mat.kappa * mat.g_shear));
  const double gyro = k2 * section.i_polar / section.area;

  double c, c2, mu, bigk;
  if (n % 2 == 1) {
    c = 4.0 / (n * kPi);
    c2 = 2.0 / (n * kPi) * ms;
    mu = ms + 2.0 * mb;
    bigk = 2.0 * ke;
  } else {
    c = -2.0 * l / (n * kPi);
    c2 = -ms * l / (n * kPi);
    mu = ms * l * l / 12.0 + 2.0 * mb * l * l / 4.0;
    bigk = 2.0 * ke * l * l / 4.0;
  }
  const double a2 = flex - gyro;  // forward synchronous coefficient
  // (-X a2 + ws2)(-X mu + K) - X^2 c c2 = 0, X = Omega^2.
  const double p2 = a2 * mu - c * c2;
  const double p1 = -(a2 * bigk + ws2 * mu);
  const double p0 = ws2 * bigk;

  std::vector<double> roots;
  const double disc = p1 * p1 - 4.0 * p2 * p0;
  if (disc >= 0.0 && p2 != 0.0) {
    const double sq = std::sqrt(disc);
    for (double x : {(-p1 - sq) / (2.0 * p2), (-p1 + sq) / (2.0 * p2)}) {
      if (x > 0.0) roots.push_back(std::sqrt(x));
    }
  } else if (p2 == 0.0 && p1 != 0.0) {
    const double x = -p0 / p1;
    if (x > 0.0) roots.push_back(std::sqrt(x));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::pair<double, double> undamped_whirl_speeds(const ModalParameters& p) {
  const double ws2 = p.omega_shaft_sq;
  const double wb2 = p.omega_support_sq;
  const double radicand =
      ws2 * ws2 +
      2.0 * (p.flex_ratio - 2.0 * p.coupled_ratio) * ws2 * wb2 +
      p.flex_ratio * p.flex_ratio * wb2 * wb2;
  const double root = std::sqrt(std::max(radicand, 0.0));
  const double lo = (ws2 + p.flex_ratio * wb2 - root) / (2.0 * p.coupled_ratio);
  const double hi = (ws2 + p.flex_ratio * wb2 + root) / (2.0 * p.coupled_ratio);
  return {std::sqrt(std::max(lo, 0.0)), std::sqrt(std::max(hi, 0.0))};
}

StabilityResult stability_threshold(const ShaftGeometry& geom,
                                    const SectionProperties& section,
                                    const HomogenizedShaftMaterial& mat,
                                    const SupportProperties& support,
                                    double eta_i, double eta_e, int n_max) {
  if (eta_i < 0 || eta_e < 0 || n_max < 1) {
    throw std::invalid_argument("stability needs eta >= 0 and n_max >= 1");
  }
  StabilityResult out;
  for (int n = 1; n <= n_max; ++n) {
    const ModalParameters p =
        modal_parameters(geom, section, mat, support, n);
    const auto [w_lo, w_hi] = undamped_whirl_speeds(p);
    for (int b = 0; b < 2; ++b) {
      BranchDiagnostic d;
      d.n = n;
      d.branch = (b == 0) ? -1 : +1;
      d.omega0 = (b == 0) ? w_lo : w_hi;
      const double w2 = d.omega0 * d.omega0;
      const double work =
          eta_e * support.stiffness * p.mass_ratio *
              (p.flex_ratio * w2 - p.omega_shaft_sq) -
          eta_i * p.modal_stiffness * (w2 - p.omega_support_sq);
      d.criterion = static_cast<double>(d.branch) * work;
      d.unstable = d.criterion < 0.0;
      if (d.unstable) {
        out.stable_at_all_speeds = false;
        if (!out.threshold || d.omega0 < *out.threshold) {
          out.threshold = d.omega0;
        }
      }
      out.branches.push_back(d);
    }
  }
  return out;
}

}  // namespace driveshaft
