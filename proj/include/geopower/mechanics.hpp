#pragma once

#include <vector>

#include "geopower/frenet.hpp"
#include "geopower/vecalg.hpp"

namespace geopower {

/// Point particle with generalized mass (kg, F or H depending on the domain)
/// and position/velocity jets: u = r', a = u', j = u''.
struct ParticleState {
  Real mass{1};
  Vec3 r{Vec3::Zero()};
  Vec3 u{Vec3::Zero()};
  Vec3 a{Vec3::Zero()};
  Vec3 j{Vec3::Zero()};
};

/// rho + omega of a vector/derivative pair: (a.a')/|a|^2 + (a x a')/|a|^2.
struct GeometricFrequency {
  Real rho{0};
  Vec3 omega{Vec3::Zero()};

  Multivector to_multivector() const { return {rho, omega}; }
};

GeometricFrequency geometric_frequency(const Vec3& a, const Vec3& a_prime, Real eps = 0.0);

/// Momentum density, angular momentum and the quantities entering
/// L_hat = I * Omega_r.
struct MomentumMultivector {
  Real ell{0};        ///< r . p
  Vec3 L{Vec3::Zero()};
  Real I{0};          ///< m |r|^2
  Real rho_r{0};      ///< (r.u)/|r|^2
  Vec3 omega_r{Vec3::Zero()};

  Multivector l_hat() const { return {ell, L}; }
  Multivector omega_hat() const { return {rho_r, omega_r}; }
};

MomentumMultivector momentum_multivector(const ParticleState& state);

struct EnergyMultivector {
  Real scalar_part{0};  ///< 2T - U
  Vec3 torque{Vec3::Zero()};
  Real T{0};
  Real U{0};
  Real lagrangian{0};  ///< T - U

  Multivector e_hat() const { return {scalar_part, torque}; }
};

EnergyMultivector energy_multivector(const ParticleState& state, const Vec3& f);

/// W_hat = S_hat + R_hat with S_hat = (p, Q) and R_hat = (L', R).
struct PowerMultivector {
  Real p{0};                ///< u . f
  Vec3 Q{Vec3::Zero()};     ///< u x f
  Real lagrangian_rate{0};  ///< ell'' - p, with ell'' = m (3 u.u' + r.u'')
  Vec3 R{Vec3::Zero()};     ///< r x f'

  Multivector s_hat() const { return {p, Q}; }
  Multivector r_hat() const { return {lagrangian_rate, R}; }
  Multivector w_hat() const { return s_hat() + r_hat(); }
};

PowerMultivector power_decomposition(const ParticleState& state, const Vec3& f,
                                     const Vec3& f_prime);

/// S_hat from (u.f, u x f) with f = m*a, minus 2T * geometric_frequency(u, a).
/// The contract is a residual at rounding level on every smooth state.
Multivector main_result_residual(const ParticleState& state);

/// Closed form of R_hat = (L', R) on the Frenet frame of the position curve:
///
///   R_hat = I (alpha_u - wk^2) Omega_r - I wk wt (N x Omega_r)
///         + I (wk' + 2 wk rho_u) (B x Omega_r) + 4 T rho_u
///
/// where x is the geometric product, alpha_u and wk' are evaluated
/// analytically from (u, a, j), and the trailing scalar completes the vector
/// expansion (which reproduces r.f' alone) to the Lagrangian rate
/// L' = 2p + r.f' with p = 2 T rho_u.
Multivector residual_closed_form(const ParticleState& state, const FrenetApparatus& frenet);

/// Acceleration split in the frame rotating with omega_r:
///   a = relative + coriolis + euler + centrifugal
/// with relative = alpha_r * r (regular where beta_r * u_par is 0*inf).
struct CoriolisDecomposition {
  Vec3 relative{Vec3::Zero()};
  Vec3 coriolis{Vec3::Zero()};
  Vec3 euler{Vec3::Zero()};
  Vec3 centrifugal{Vec3::Zero()};
  Real alpha_r{0};  ///< |r|''/|r|
  Real beta_r{0};   ///< alpha_r / rho_r; 0 when rho_r vanishes
  Vec3 u_par{Vec3::Zero()};

  Vec3 sum() const { return relative + coriolis + euler + centrifugal; }
};

CoriolisDecomposition coriolis_decomposition(const ParticleState& state);

/// Discrete rigid system for the inertia operator.
struct InertiaSystem {
  struct Body {
    Real mass;
    Vec3 r;
  };
  std::vector<Body> bodies;
};

/// I(omega) = sum_h m_h r_h x (omega x r_h); equals the angular momentum
/// when applied to omega_r.
Vec3 inertia_apply(const InertiaSystem& sys, const Vec3& omega);

/// T = 1/2 omega . I(omega).
Real inertia_kinetic_energy(const InertiaSystem& sys, const Vec3& omega);

}  // namespace geopower
