#include "driveshaft/buckling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace driveshaft {

namespace {

constexpr double kPi = std::numbers::pi;

/// One additive term of an equilibrium equation: coefficient * lambda^npr *
/// h^ndot into column var of the row it belongs to.
struct Term {
  int var;   // 0 = axial u, 1 = circumferential v, 2 = radial w
  int npr;   // axial derivative count (power of lambda)
  int ndot;  // circumferential derivative count (power of h)
  double cf;
};

/// Harmonic bookkeeping of the trial field: u and v ride the sine component,
/// w the cosine; d/dx and d/dphi cycle the phase by a quarter period each,
/// so the sign only depends on the total derivative count modulo 4.
constexpr double kSinParity[4] = {+1.0, +1.0, -1.0, -1.0};
constexpr double kCosParity[4] = {+1.0, -1.0, -1.0, +1.0};

/// Term tables of the three shell equilibrium equations, linear in the
/// torque through Tq = T / (pi r^2).
std::array<std::vector<Term>, 3> equation_terms(const LaminateStiffness& lam,
                                                double r, double torque) {
  const double A11 = lam.A(0, 0), A22 = lam.A(1, 1), A12 = lam.A(0, 1);
  const double A66 = lam.A(2, 2), A16 = lam.A(0, 2), A26 = lam.A(1, 2);
  const double B11 = lam.B(0, 0), B22 = lam.B(1, 1), B12 = lam.B(0, 1);
  const double B66 = lam.B(2, 2), B16 = lam.B(0, 2), B26 = lam.B(1, 2);
  const double D11 = lam.D(0, 0), D22 = lam.D(1, 1), D12 = lam.D(0, 1);
  const double D66 = lam.D(2, 2), D16 = lam.D(0, 2), D26 = lam.D(1, 2);
  const double r2 = r * r;
  const double Tq = torque / (kPi * r2);

  std::array<std::vector<Term>, 3> eqs;
  eqs[0] = {
      {0, 2, 0, A11 + B11 / r},
      {0, 1, 1, 2.0 * A16 - Tq},
      {0, 0, 2, A66 - B66 / r + D66 / r2},
      {1, 2, 0, A16 + 2.0 * B16 / r + D16 / r2},
      {1, 1, 1, A12 + B12 / r + A66 + B66 / r},
      {1, 0, 2, A26},
      {2, 3, 0, -(B11 / r + D11 / r2)},
      {2, 1, 0, A12},
      {2, 0, 3, -B26 / r + D26 / r2},
      {2, 0, 1, A26 - B26 / r + D26 / r2},
      {2, 1, 2, -B12 / r - 2.0 * B66 / r + D66 / r2},
      {2, 2, 1, -(3.0 * B16 / r + D16 / r2)},
  };
  eqs[1] = {
      {0, 2, 0, A16 + 2.0 * B16 / r + D16 / r2},
      {0, 1, 1, A12 + B12 / r + A66 + B66 / r - D66 / (2.0 * r2)},
      {0, 0, 2, A26 + 3.0 * D26 / (2.0 * r2)},
      {1, 2, 0, A66 + 3.0 * B66 / r + 5.0 * D66 / (2.0 * r2)},
      {1, 1, 1, 2.0 * A26 + 4.0 * B26 / r + 2.0 * D26 / r2 - Tq},
      {1, 0, 2, A22 + B22 / r},
      {2, 0, 1, A22},
      {2, 3, 0, -(B16 / r + 2.0 * D16 / r2)},
      {2, 1, 0, A26 + B26 / r - Tq},
      {2, 0, 3, -B22 / r},
      {2, 2, 1, -(B12 / r + D12 / r2 + 2.0 * B66 / r + 3.0 * D66 / r2)},
      {2, 1, 2, -3.0 * B26 / r + D26 / r2},
  };
  eqs[2] = {
      {0, 3, 0, B11 / r + D11 / r2},
      {0, 2, 1, 3.0 * B16 / r + D16 / r2},
      {0, 1, 2, 2.0 * B66 / r - D66 / r2 + B12 / r},
      {0, 0, 3, B26 / r - D26 / r2},
      {0, 1, 0, -A12},
      {0, 0, 1, -A26 + B26 / r - D26 / r2},
      {1, 3, 0, B16 / r + 2.0 * D16 / r2},
      {1, 2, 1, 2.0 * B66 / r + 3.0 * D66 / r2 + B12 / r + D12 / r2},
      {1, 1, 2, 3.0 * B26 / r + 2.0 * D26 / r2},
      {1, 0, 3, B22 / r},
      {1, 1, 0, -A26 - B26 / r + Tq},
      {1, 0, 1, -A22},
      {2, 4, 0, -D11 / r2},
      {2, 3, 1, -4.0 * D16 / r2},
      {2, 2, 2, -(4.0 * D66 / r2 + 2.0 * D12 / r2)},
      {2, 1, 3, -4.0 * D26 / r2},
      {2, 0, 4, -D22 / r2},
      {2, 2, 0, 3.0 * B12 / r},
      {2, 1, 1, 4.0 * B26 / r - 2.0 * D26 / r2 - Tq},
      {2, 0, 2, 2.0 * B22 / r - 2.0 * D22 / r2},
      {2, 0, 0, -A22 + B22 / r - D22 / r2},
  };
  return eqs;
}

/// Per-laminate compiled term table: torque-free coefficient plus the signed
/// torque sensitivity (the torque enters each equation only through
/// Tq = T / (pi r^2), linearly).
struct CompiledTerm {
  int row;
  int var;
  int npr;
  int ndot;
  double cf0;  // coefficient at T = 0, parity folded in
  double cfT;  // d(coefficient)/dT, parity folded in
};

std::vector<CompiledTerm> compile_terms(const LaminateStiffness& lam,
                                        double r) {
  const auto eq0 = equation_terms(lam, r, 0.0);
  const auto eq1 = equation_terms(lam, r, 1.0);
  std::vector<CompiledTerm> out;
  out.reserve(45);
  for (int row = 0; row < 3; ++row) {
    const auto& t0 = eq0[static_cast<std::size_t>(row)];
    const auto& t1 = eq1[static_cast<std::size_t>(row)];
    for (std::size_t i = 0; i < t0.size(); ++i) {
      const int d = (t0[i].npr + t0[i].ndot) % 4;
      const double parity = (t0[i].var < 2) ? kSinParity[d] : kCosParity[d];
      out.push_back({row, t0[i].var, t0[i].npr, t0[i].ndot,
                     parity * t0[i].cf, parity * (t1[i].cf - t0[i].cf)});
    }
  }
  return out;
}

/// Torque-free matrix and its torque derivative at one (h, lambda), without
/// allocations: K(T) = K0 + T K1.
void assemble_split(const std::vector<CompiledTerm>& terms, int h,
                    double lambda, Eigen::Matrix3d& k0, Eigen::Matrix3d& k1) {
  double lp[5], hp[5];
  lp[0] = 1.0;
  hp[0] = 1.0;
  const double hd = static_cast<double>(h);
  for (int i = 1; i < 5; ++i) {
    lp[i] = lp[i - 1] * lambda;
    hp[i] = hp[i - 1] * hd;
  }
  k0.setZero();
  k1.setZero();
  for (const CompiledTerm& t : terms) {
    const double basis = lp[t.npr] * hp[t.ndot];
    k0(t.row, t.var) += t.cf0 * basis;
    if (t.cfT != 0.0) k1(t.row, t.var) += t.cfT * basis;
  }
}

Eigen::Matrix3d assemble(const LaminateStiffness& lam, double r, int h,
                         double lambda, double torque) {
  const auto eqs = equation_terms(lam, r, torque);
  Eigen::Matrix3d k = Eigen::Matrix3d::Zero();
  const double hd = static_cast<double>(h);
  for (int row = 0; row < 3; ++row) {
    for (const Term& t : eqs[static_cast<std::size_t>(row)]) {
      const int d = (t.npr + t.ndot) % 4;
      const double parity = (t.var < 2) ? kSinParity[d] : kCosParity[d];
      k(row, t.var) += parity * t.cf * std::pow(lambda, t.npr) *
                       std::pow(hd, t.ndot);
    }
  }
  return k;
}

/// Real roots of c3 x^3 + c2 x^2 + c1 x + c0 = 0, degenerate degrees included.
int real_cubic_roots(double c3, double c2, double c1, double c0,
                     std::array<double, 3>& out) {
  const double scale =
      std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
  if (scale == 0.0) return 0;
  if (std::abs(c3) < 1e-14 * scale) {
    if (std::abs(c2) < 1e-14 * scale) {
      if (std::abs(c1) < 1e-14 * scale) return 0;
      out[0] = -c0 / c1;
      return 1;
    }
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) return 0;
    const double sq = std::sqrt(disc);
    out[0] = (-c1 - sq) / (2.0 * c2);
    out[1] = (-c1 + sq) / (2.0 * c2);
    return 2;
  }
  const double a = c2 / c3;
  const double b = c1 / c3;
  const double c = c0 / c3;
  // Depressed cubic y^3 + p y + q with x = y - a/3.
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double shift = -a / 3.0;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  if (disc > 0.0) {
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + sq);
    const double v = std::cbrt(-q / 2.0 - sq);
    out[0] = u + v + shift;
    return 1;
  }
  const double rad = std::sqrt(std::max(-p / 3.0, 0.0));
  if (rad == 0.0) {
    out[0] = shift;
    return 1;
  }
  const double arg =
      std::clamp((-q / 2.0) / (rad * rad * rad), -1.0, 1.0);
  const double phi = std::acos(arg);
  for (int k = 0; k < 3; ++k) {
    out[static_cast<std::size_t>(k)] =
        2.0 * rad * std::cos((phi - 2.0 * kPi * k) / 3.0) + shift;
  }
  return 3;
}

/// True when the torque-free operator is numerically singular at this point
/// (rigid-body content of the trial field, e.g. h = 1 as lambda -> 0).
bool degenerate(const Eigen::Matrix3d& k0, double tol) {
  double den = 1.0;
  for (int i = 0; i < 3; ++i) den *= k0.row(i).norm();
  if (den <= 0.0) return true;
  return std::abs(k0.determinant()) / den < tol;
}

/// Determinant samples at four torques -> cubic coefficients in the scaled
/// variable s = T / t_scale (fixed nodes -1.5, -0.5, 0.5, 1.5).
void cubic_from_samples(const Eigen::Matrix3d& k0, const Eigen::Matrix3d& k1,
                        double t_scale, std::array<double, 4>& coeffs) {
  const double f1 = (k0 - 1.5 * t_scale * k1).determinant();
  const double f2 = (k0 - 0.5 * t_scale * k1).determinant();
  const double f3 = (k0 + 0.5 * t_scale * k1).determinant();
  const double f4 = (k0 + 1.5 * t_scale * k1).determinant();
  coeffs[0] = (-f1 + 3.0 * f2 - 3.0 * f3 + f4) / 6.0;   // s^3
  coeffs[1] = (f1 - f2 - f3 + f4) / 4.0;                // s^2
  coeffs[2] = (f1 - 27.0 * f2 + 27.0 * f3 - f4) / 24.0; // s
  coeffs[3] = (-f1 + 9.0 * f2 + 9.0 * f3 - f4) / 16.0;  // 1
}

/// Smallest admissible positive root of det(K0 + T K1) at one grid point;
/// +inf when none (or the point is degenerate).
double smallest_root(const Eigen::Matrix3d& k0, const Eigen::Matrix3d& k1,
                     double t_scale, double floor, double degen_tol) {
  if (degenerate(k0, degen_tol)) {
    return std::numeric_limits<double>::infinity();
  }
  std::array<double, 4> c{};
  cubic_from_samples(k0, k1, t_scale, c);
  std::array<double, 3> roots{};
  const int count = real_cubic_roots(c[0], c[1], c[2], c[3], roots);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    const double t = roots[static_cast<std::size_t>(i)] * t_scale;
    if (t > floor && t < best) best = t;
  }
  return best;
}

struct GridBest {
  double torque = std::numeric_limits<double>::infinity();
  int h = 0;
  double p = 0.0;
};

}  // namespace

Eigen::Matrix3d stiffness_matrix(const LaminateStiffness& lam, double radius,
                                 int h, double lambda, double torque) {
  if (radius <= 0) throw std::invalid_argument("radius must be positive");
  return assemble(lam, radius, h, lambda, torque);
}

void stiffness_matrix_split(const LaminateStiffness& lam, double radius, int h,
                            double lambda, Eigen::Matrix3d& k0,
                            Eigen::Matrix3d& k1) {
  k0 = assemble(lam, radius, h, lambda, 0.0);
  k1 = assemble(lam, radius, h, lambda, 1.0) - k0;
}

double hayashi_torque(const LaminateStiffness& lam, double radius) {
  if (radius <= 0) throw std::invalid_argument("radius must be positive");
  return 11.0 * std::sqrt(radius) *
         std::pow(lam.A(0, 0) - lam.A(0, 1) * lam.A(0, 1) / lam.A(1, 1),
                  0.25) *
         std::pow(lam.D(1, 1), 0.75);
}

BucklingResult buckling_torque(const LaminateStiffness& lam,
                               const ShaftGeometry& geom, int direction,
                               const BucklingSearchConfig& cfg) {
  if (direction != 1 && direction != -1) {
    throw std::invalid_argument("buckling direction must be +1 or -1");
  }
  const double r = geom.mean_radius;
  const double l = geom.length;
  if (r <= 0 || l <= 0) {
    throw std::invalid_argument("geometry must be positive");
  }
  const double t = lam.thickness;
  const double p0 =
      l / (kPi * r) * std::pow(48.0 * t * t / (12.0 * r * r), 0.25);
  const double t_scale = std::max(hayashi_torque(lam, r), 1.0);
  const double floor = cfg.root_floor_frac * t_scale;
  const double dir = static_cast<double>(direction);

  std::vector<double> ps(static_cast<std::size_t>(cfg.grid_points));
  const double lo = p0 / cfg.span;
  const double ratio = std::pow(cfg.span * cfg.span,
                                1.0 / (cfg.grid_points - 1));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    ps[i] = lo * std::pow(ratio, static_cast<double>(i));
  }

  const std::vector<CompiledTerm> terms = compile_terms(lam, r);
  auto root_at = [&](int h, double p) {
    Eigen::Matrix3d k0, k1;
    assemble_split(terms, h, p * kPi * r / l, k0, k1);
    // A negative target direction flips the torque axis.
    if (direction < 0) k1 = -k1;
    return smallest_root(k0, k1, t_scale, floor, cfg.degeneracy_tol);
  };

  GridBest best;
  for (int hs = 1; hs <= cfg.h_max; ++hs) {
    for (int h : {hs, -hs}) {
      for (double p : ps) {
        const double root = root_at(h, p);
        if (root < best.torque) best = {root, h, p};
      }
    }
  }
  BucklingResult result;
  if (best.h == 0) return result;

  double refined = best.torque;
  double p_best = best.p;
  if (cfg.refine) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = best.p * cfg.refine_lo;
    double b = best.p * cfg.refine_hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = root_at(best.h, c);
    double fd = root_at(best.h, d);
    for (int i = 0; i < cfg.golden_iterations; ++i) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = root_at(best.h, c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = root_at(best.h, d);
      }
    }
    const double p_mid = (a + b) / 2.0;
    const double t_mid = root_at(best.h, p_mid);
    if (t_mid < refined) {
      refined = t_mid;
      p_best = p_mid;
    }
  }

  result.found = true;
  result.torque = dir * refined;
  result.mode = {best.h, p_best, p_best * kPi * r / l};
  return result;
}

BucklingResult buckling_torque_dense(const LaminateStiffness& lam,
                                     const ShaftGeometry& geom, int direction,
                                     int h_max_dense, int grid_points) {
  if (direction != 1 && direction != -1) {
    throw std::invalid_argument("buckling direction must be +1 or -1");
  }
  const double r = geom.mean_radius;
  const double l = geom.length;
  const double t = lam.thickness;
  const double p0 =
      l / (kPi * r) * std::pow(48.0 * t * t / (12.0 * r * r), 0.25);
  const double t_scale = std::max(hayashi_torque(lam, r), 1.0);
  const double floor = 1e-3 * t_scale;
  const double t_cap = 30.0 * t_scale;
  constexpr int kScanSteps = 240;
  const double growth = std::pow(t_cap / floor, 1.0 / kScanSteps);
  constexpr double kDegenTol = 1e-8;

  GridBest best;
  const double span = 8.0;
  const double p_lo = p0 / span;
  const double ratio =
      std::pow(span * span, 1.0 / (grid_points - 1));

  // Deliberately reuses the reference assembly path (not the compiled table)
  // so the oracle and the seeded search only share the raw term definitions.
  for (int hs = 1; hs <= h_max_dense; ++hs) {
    for (int h : {hs, -hs}) {
      for (int i = 0; i < grid_points; ++i) {
        const double p = p_lo * std::pow(ratio, static_cast<double>(i));
        Eigen::Matrix3d k0, k1;
        stiffness_matrix_split(lam, r, h, p * kPi * r / l, k0, k1);
        if (direction < 0) k1 = -k1;
        if (degenerate(k0, kDegenTol)) continue;
        // Step the determinant multiplicatively in T and bisect the first
        // sign change: an extraction route independent of the cubic fit.
        const double cap = std::min(t_cap, best.torque * 1.05);
        double t_prev = floor;
        double det_prev = (k0 + t_prev * k1).determinant();
        while (t_prev < cap) {
          const double t_next = t_prev * growth;
          const double det_next = (k0 + t_next * k1).determinant();
          if (det_prev * det_next <= 0.0 && det_prev != 0.0) {
            double a = t_prev;
            double b = t_next;
            for (int it = 0; it < 80; ++it) {
              const double m = 0.5 * (a + b);
              const double dm = (k0 + m * k1).determinant();
              if (det_prev * dm <= 0.0) {
                b = m;
              } else {
                a = m;
              }
            }
            const double root = 0.5 * (a + b);
            if (root < best.torque) best = {root, h, p};
            break;
          }
          t_prev = t_next;
          det_prev = det_next;
        }
      }
    }
  }

  BucklingResult result;
  if (best.h == 0) return result;
  result.found = true;
  result.torque = static_cast<double>(direction) * best.torque;
  result.mode = {best.h, best.p, best.p * kPi * r / l};
  return result;
}

}  // namespace driveshaft
