#pragma once

#include "geopower/frenet.hpp"
#include "geopower/mechanics.hpp"
#include "geopower/vecalg.hpp"

namespace geopower {

/// Kinematics re-expressed on the moving Frenet frame. All vectors below are
/// frame coordinates; the Darboux vector in these coordinates is
/// (omega_tau, 0, omega_kappa).
struct RelativeState {
  Vec3 xi{Vec3::Zero()};        ///< F r
  Vec3 xi_prime{Vec3::Zero()};
  Vec3 nu{Vec3::Zero()};        ///< F u
  Vec3 alpha{Vec3::Zero()};     ///< F u'
  Vec3 pi{Vec3::Zero()};        ///< m nu
  Vec3 Lambda{Vec3::Zero()};    ///< m xi x nu
  Vec3 omega_xi{Vec3::Zero()};  ///< (xi x xi') / (xi . xi)
  Vec3 nu_d{Vec3::Zero()};      ///< ((omega_d . xi) / (xi . xi)) xi
};

/// xi' obtained from F' = -Omega_d F, i.e. xi' = F u - omega_d x xi in frame
/// coordinates. Used when analytic jets exist; otherwise finite-difference
/// the xi series and pass the estimate to to_frenet.
Vec3 analytic_xi_prime(const FrenetApparatus& frame, const ParticleState& state);

RelativeState to_frenet(const FrenetApparatus& frame, const ParticleState& state,
                        const Vec3& xi_prime);

/// Velocity recovered from the relative path: xi' + omega_d x xi. Agrees with
/// RelativeState::nu (= F u) up to the error of the supplied xi'.
Vec3 nu_from_relative(const RelativeState& rel, const FrenetApparatus& frame);

/// Relative acceleration from the moving-frame expansion:
///   xi'' + 2 omega_d x xi' + omega_d' x xi + (xi . omega_d) omega_d
///   - |omega_d|^2 xi
/// All arguments in frame coordinates.
Vec3 coriolis_alpha(const Vec3& xi, const Vec3& xi_prime, const Vec3& xi_second,
                    const Vec3& omega_d, const Vec3& omega_d_prime);

/// F omega_r - (omega_xi + omega_d - nu_d); zero up to the xi' error.
Vec3 orbital_identity_residual(const RelativeState& rel, const FrenetApparatus& frame,
                               const MomentumMultivector& mom);

/// T = 1/2 I (|omega_xi + omega_d - nu_d|^2 + rho_r^2).
Real kinetic_energy_relative(const RelativeState& rel, const FrenetApparatus& frame, Real I,
                             Real rho_r);

}  // namespace geopower
