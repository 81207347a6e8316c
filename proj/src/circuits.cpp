#include "geopower/circuits.hpp"

#include "geopower/errors.hpp"

namespace geopower {

DomainPowerReport capacitor_report(const ElectricalState& state, const ElementParams& params) {
  if (params.C <= 0) {
    throw ConfigError("capacitor_report: C must be > 0");
  }
  DomainPowerReport rep;
  rep.p = state.v.dot(state.i);
  rep.Q = state.v.cross(state.i);
  rep.N = state.phi.cross(state.i);
  rep.R_resid = state.phi.cross(state.i_prime);
  rep.T = 0.5 * params.C * state.v.squaredNorm();
  rep.U = -state.i.dot(state.phi);
  rep.I_gen = params.C * state.phi.squaredNorm();
  rep.L_hat = {params.C * state.phi.dot(state.v), Vec3(params.C * state.phi.cross(state.v))};
  rep.E_hat = {2 * rep.T - rep.U, rep.N};
  // ell'' = 3 v.i + phi.i' given i = C v'.
  rep.lagrangian_rate = 2 * state.v.dot(state.i) + state.phi.dot(state.i_prime);
  const Multivector r_hat{rep.lagrangian_rate, rep.R_resid};
  if (state.v.squaredNorm() == 0) {
    // 2T Omega_v -> (p, Q) = 0 in the zero-velocity limit.
    rep.W_hat = Multivector{rep.p, rep.Q} + r_hat;
    return rep;
  }
  const GeometricFrequency gf = geometric_frequency(state.v, state.i / params.C);
  rep.W_hat = 2 * rep.T * gf.to_multivector() + r_hat;
  return rep;
}

DomainPowerReport inductor_report(const MagneticState& state, const ElementParams& params) {
  if (params.L_ind <= 0) {
    throw ConfigError("inductor_report: L must be > 0");
  }
  DomainPowerReport rep;
  rep.p = state.i.dot(state.v);
  rep.Q = state.i.cross(state.v);
  rep.N = state.q.cross(state.v);
  rep.R_resid = state.q.cross(state.v_prime);
  rep.T = 0.5 * params.L_ind * state.i.squaredNorm();
  rep.U = -state.v.dot(state.q);
  rep.I_gen = params.L_ind * state.q.squaredNorm();
  rep.L_hat = {params.L_ind * state.q.dot(state.i), Vec3(params.L_ind * state.q.cross(state.i))};
  rep.E_hat = {2 * rep.T - rep.U, rep.N};
  rep.lagrangian_rate = 2 * state.i.dot(state.v) + state.q.dot(state.v_prime);
  const Multivector r_hat{rep.lagrangian_rate, rep.R_resid};
  if (state.i.squaredNorm() == 0) {
    rep.W_hat = Multivector{rep.p, rep.Q} + r_hat;
    return rep;
  }
  const GeometricFrequency gf = geometric_frequency(state.i, state.v / params.L_ind);
  rep.W_hat = 2 * rep.T * gf.to_multivector() + r_hat;
  return rep;
}

namespace {

CoriolisDecomposition scaled_components(const CurveJet& jet, Real gain) {
  ParticleState state;
  state.r = jet.x;
  state.u = jet.d1;
  state.a = jet.d2;
  // u_par, alpha_r, beta_r stay kinematic; only the force terms carry the gain.
  CoriolisDecomposition d = coriolis_decomposition(state);
  d.relative *= gain;
  d.coriolis *= gain;
  d.euler *= gain;
  d.centrifugal *= gain;
  return d;
}

}  // namespace

CoriolisDecomposition current_apparent_components(const CurveJet& phi_jet,
                                                  const ElementParams& params) {
  return scaled_components(phi_jet, params.C);
}

CoriolisDecomposition voltage_apparent_components(const CurveJet& q_jet,
                                                  const ElementParams& params) {
  return scaled_components(q_jet, params.L_ind);
}

Vec3 lossy_force(const ElectricalState& state, const ElementParams& params) {
  return state.i - params.G * state.v;
}

Vec3 lossy_force(const MagneticState& state, const ElementParams& params) {
  return state.v - params.R * state.i;
}

RlgcReport rlgc_circuit_report(const Vec3& phi, const CurveJet& v_jet,
                               const ElementParams& params) {
  const Vec3& v = v_jet.x;
  const Vec3& v1 = v_jet.d1;
  const Vec3& v2 = v_jet.d2;
  const Vec3& v3 = v_jet.d3;

  RlgcReport rep;
  rep.i_c = params.C * v1;
  rep.i = rep.i_c + params.G * v;
  const Vec3 i1 = params.C * v2 + params.G * v1;
  const Vec3 i2 = params.C * v3 + params.G * v2;
  rep.v_l = params.L_ind * i1;
  rep.v_rl = rep.v_l + params.R * rep.i;

  ElectricalState cap;
  cap.phi = phi;
  cap.v = v;
  cap.i = rep.i_c;
  cap.i_prime = params.C * v2;
  rep.capacitor = capacitor_report(cap, params);
  rep.i_c_components = current_apparent_components({v_jet.t, phi, v, v1, v2}, params);

  if (params.L_ind > 0) {
    MagneticState ind;
    ind.q = params.C * v + params.G * phi;  // primitive of i
    ind.i = rep.i;
    ind.v = rep.v_l;
    ind.v_prime = params.L_ind * i2;
    rep.inductor = inductor_report(ind, params);
    rep.v_l_components = voltage_apparent_components({v_jet.t, ind.q, rep.i, i1, i2}, params);
  }

  rep.p_conductance = v.dot(params.G * v);
  rep.p_resistance = rep.i.dot(params.R * rep.i);
  rep.p_total = params.G * v.squaredNorm() + params.R * rep.i.squaredNorm();
  rep.Q_total = v.cross(rep.i_c) + rep.i.cross(rep.v_rl);
  return rep;
}

}  // namespace geopower
