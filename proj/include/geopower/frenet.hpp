#pragma once

#include <span>
#include <vector>

#include "geopower/vecalg.hpp"

namespace geopower {

/// One sampled point of a space curve with derivatives up to third order.
/// d1 is the curve velocity u; d2, d3 are u' and u''.
struct CurveJet {
  Real t{0};
  Vec3 x{Vec3::Zero()};
  Vec3 d1{Vec3::Zero()};
  Vec3 d2{Vec3::Zero()};
  Vec3 d3{Vec3::Zero()};
};

/// Frenet frame and its time-scaled invariants at one jet.
///
/// All quantities are those of the curve traced by `x`, built from the
/// velocity u = d1:
///   omega_kappa = |u x u'| / |u|^2         (azimuthal frequency, >= 0)
///   omega_tau   = u.(u' x u'') / (omega_kappa^2 |u|^3)
///   rho_u       = (u.u') / |u|^2           (radial frequency of u)
///   omega_u     = omega_kappa * B
///   darboux     = omega_tau * T + omega_kappa * B
///   speed       = |u|                      (arc-length rate)
struct FrenetApparatus {
  Vec3 T{Vec3::Zero()};
  Vec3 N{Vec3::Zero()};
  Vec3 B{Vec3::Zero()};
  Real omega_kappa{0};
  Real omega_tau{0};
  Real rho_u{0};
  Vec3 omega_u{Vec3::Zero()};
  Vec3 darboux{Vec3::Zero()};
  Real speed{0};
  bool degenerate{false};
};

inline constexpr Real kDefaultEpsSpeed = 1e-9;
inline constexpr Real kDefaultEpsCurv = 1e-9;

/// Computes the Frenet apparatus of a jet.
///
/// Degeneracy rules:
///  - speed branch: |u| <= eps_speed * speed_scale (with speed_scale <= 0 the
///    test reduces to |u| == 0). Returns a fully zeroed, flagged apparatus.
///  - curvature branch: |u x u'| <= eps_curv * |u|^2, i.e. omega_kappa at or
///    below eps_curv (1/s). T, speed, rho_u stay valid; N, B, omega_u,
///    darboux are zeroed, omega_tau is defined as 0, and the flag is set.
///
/// Series-level callers pass speed_scale = RMS of |d1| over the series.
FrenetApparatus frenet_apparatus(const CurveJet& jet, Real eps_speed = kDefaultEpsSpeed,
                                 Real eps_curv = kDefaultEpsCurv, Real speed_scale = 0.0);

/// Row-major frame matrix F = [T; N; B].
Mat3 frame_matrix(const FrenetApparatus& app);

/// Darboux vector in frame coordinates: F * darboux = (omega_tau, 0, omega_kappa).
Vec3 darboux_frame(const FrenetApparatus& app);

/// Compares the finite-difference frame rate against the skew matrix
/// populated with (omega_kappa, omega_tau):
///
///   residual_i = F_i * (F'_i)^T - [[0, -wk, 0], [wk, 0, -wt], [0, wt, 0]]
///
/// F' uses a central difference, so one residual is produced per interior
/// sample (frames.size() - 2 in total). Throws InsufficientSamplesError for
/// fewer than 3 frames and DegenerateFrameError if any frame is degenerate.
std::vector<Mat3> frame_rotation_rate(std::span<const FrenetApparatus> frames, Real dt);

}  // namespace geopower
