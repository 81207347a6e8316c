#include "geopower/mechanics.hpp"

#include "geopower/errors.hpp"

namespace geopower {

GeometricFrequency geometric_frequency(const Vec3& a, const Vec3& a_prime, Real eps) {
  const Real n = a.norm();
  if (n <= eps || n == 0) {
    throw ZeroMagnitudeError("geometric_frequency: |a| is zero");
  }
  const Real n2 = n * n;
  return {a.dot(a_prime) / n2, Vec3(a.cross(a_prime) / n2)};
}

MomentumMultivector momentum_multivector(const ParticleState& state) {
  const Real r2 = state.r.squaredNorm();
  if (r2 == 0) {
    throw ZeroRadiusError("momentum_multivector: |r| is zero");
  }
  MomentumMultivector m;
  m.ell = state.mass * state.r.dot(state.u);
  m.L = state.mass * state.r.cross(state.u);
  m.I = state.mass * r2;
  m.rho_r = state.r.dot(state.u) / r2;
  m.omega_r = state.r.cross(state.u) / r2;
  return m;
}

EnergyMultivector energy_multivector(const ParticleState& state, const Vec3& f) {
  EnergyMultivector e;
  e.T = 0.5 * state.mass * state.u.squaredNorm();
  e.U = -f.dot(state.r);
  e.torque = state.r.cross(f);
  e.scalar_part = 2 * e.T - e.U;
  e.lagrangian = e.T - e.U;
  return e;
}

PowerMultivector power_decomposition(const ParticleState& state, const Vec3& f,
                                     const Vec3& f_prime) {
  PowerMultivector w;
  w.p = state.u.dot(f);
  w.Q = state.u.cross(f);
  w.R = state.r.cross(f_prime);
  const Real ell_pp = state.mass * (3 * state.u.dot(state.a) + state.r.dot(state.j));
  w.lagrangian_rate = ell_pp - w.p;
  return w;
}

Multivector main_result_residual(const ParticleState& state) {
  const Vec3 f = state.mass * state.a;
  const Real T = 0.5 * state.mass * state.u.squaredNorm();
  const GeometricFrequency gf = geometric_frequency(state.u, state.a);
  const Multivector direct{state.u.dot(f), state.u.cross(f)};
  return direct - 2 * T * gf.to_multivector();
}

Multivector residual_closed_form(const ParticleState& state, const FrenetApparatus& frenet) {
  if (frenet.degenerate) {
    throw DegenerateFrameError("residual_closed_form: degenerate frame");
  }
  const MomentumMultivector mom = momentum_multivector(state);
  const Real u2 = state.u.squaredNorm();
  const Real rho_u = state.u.dot(state.a) / u2;
  const Real alpha_u = (state.a.squaredNorm() + state.u.dot(state.j)) / u2 - rho_u * rho_u;

  const Vec3 w = state.u.cross(state.a);
  const Real wk = frenet.omega_kappa;
  const Real wk_prime = w.dot(state.u.cross(state.j)) / (w.norm() * u2) - 2 * rho_u * wk;

  const Multivector omega_r_hat = mom.omega_hat();
  const Real T = 0.5 * state.mass * u2;

  Multivector r_hat = mom.I * (alpha_u - wk * wk) * omega_r_hat;
  r_hat = r_hat - mom.I * (wk * frenet.omega_tau) * (Multivector(frenet.N) * omega_r_hat);
  r_hat = r_hat + mom.I * (wk_prime + 2 * wk * rho_u) * (Multivector(frenet.B) * omega_r_hat);
  r_hat.s += 4 * T * rho_u;
  return r_hat;
}

CoriolisDecomposition coriolis_decomposition(const ParticleState& state) {
  const Real r2 = state.r.squaredNorm();
  if (r2 == 0) {
    throw ZeroRadiusError("coriolis_decomposition: |r| is zero");
  }
  const Real rho_r = state.r.dot(state.u) / r2;
  const Vec3 omega_r = state.r.cross(state.u) / r2;
  // Analytic rates: rho' = (|u|^2 + r.a)/|r|^2 - 2 rho^2,
  // omega' = (r x a)/|r|^2 - 2 rho omega.
  const Vec3 omega_r_prime = state.r.cross(state.a) / r2 - 2 * rho_r * omega_r;

  CoriolisDecomposition d;
  d.alpha_r = (state.u.squaredNorm() + state.r.dot(state.a)) / r2 - rho_r * rho_r;
  d.beta_r = rho_r != 0 ? d.alpha_r / rho_r : 0;
  d.u_par = rho_r * state.r;
  d.relative = d.alpha_r * state.r;
  d.coriolis = 2 * omega_r.cross(d.u_par);
  d.euler = omega_r_prime.cross(state.r);
  d.centrifugal = omega_r.cross(omega_r.cross(state.r));
  return d;
}

Vec3 inertia_apply(const InertiaSystem& sys, const Vec3& omega) {
  if (sys.bodies.empty()) {
    throw EmptySystemError("inertia_apply: empty system");
  }
  Vec3 out = Vec3::Zero();
  for (const auto& b : sys.bodies) {
    out += b.mass * b.r.cross(omega.cross(b.r));
  }
  return out;
}

Real inertia_kinetic_energy(const InertiaSystem& sys, const Vec3& omega) {
  return 0.5 * omega.dot(inertia_apply(sys, omega));
}

}  // namespace geopower
