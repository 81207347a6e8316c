#include "geopower/relative.hpp"

#include "geopower/errors.hpp"

namespace geopower {

Vec3 analytic_xi_prime(const FrenetApparatus& frame, const ParticleState& state) {
  if (frame.degenerate) {
    throw DegenerateFrameError("analytic_xi_prime: degenerate frame");
  }
  const Mat3 f = frame_matrix(frame);
  const Vec3 xi = f * state.r;
  return f * state.u - darboux_frame(frame).cross(xi);
}

RelativeState to_frenet(const FrenetApparatus& frame, const ParticleState& state,
                        const Vec3& xi_prime) {
  if (frame.degenerate) {
    throw DegenerateFrameError("to_frenet: degenerate frame");
  }
  const Mat3 f = frame_matrix(frame);
  RelativeState rel;
  rel.xi = f * state.r;
  rel.xi_prime = xi_prime;
  rel.nu = f * state.u;
  rel.alpha = f * state.a;
  rel.pi = state.mass * rel.nu;
  rel.Lambda = state.mass * rel.xi.cross(rel.nu);
  const Real xi2 = rel.xi.squaredNorm();
  if (xi2 == 0) {
    throw ZeroRadiusError("to_frenet: |xi| is zero");
  }
  rel.omega_xi = rel.xi.cross(xi_prime) / xi2;
  const Vec3 omega_d = darboux_frame(frame);
  rel.nu_d = (omega_d.dot(rel.xi) / xi2) * rel.xi;
  return rel;
}

Vec3 nu_from_relative(const RelativeState& rel, const FrenetApparatus& frame) {
  return rel.xi_prime + darboux_frame(frame).cross(rel.xi);
}

Vec3 coriolis_alpha(const Vec3& xi, const Vec3& xi_prime, const Vec3& xi_second,
                    const Vec3& omega_d, const Vec3& omega_d_prime) {
  return xi_second + 2 * omega_d.cross(xi_prime) + omega_d_prime.cross(xi) +
         xi.dot(omega_d) * omega_d - omega_d.squaredNorm() * xi;
}

Vec3 orbital_identity_residual(const RelativeState& rel, const FrenetApparatus& frame,
                               const MomentumMultivector& mom) {
  if (frame.degenerate) {
    throw DegenerateFrameError("orbital_identity_residual: degenerate frame");
  }
  return frame_matrix(frame) * mom.omega_r - (rel.omega_xi + darboux_frame(frame) - rel.nu_d);
}

Real kinetic_energy_relative(const RelativeState& rel, const FrenetApparatus& frame, Real I,
                             Real rho_r) {
  const Vec3 w = rel.omega_xi + darboux_frame(frame) - rel.nu_d;
  return 0.5 * I * (w.squaredNorm() + rho_r * rho_r);
}

}  // namespace geopower
