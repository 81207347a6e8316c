#pragma once

#include "geopower/frenet.hpp"
#include "geopower/mechanics.hpp"
#include "geopower/vecalg.hpp"

namespace geopower {

/// Per-phase element values; only the fields an element uses are read.
struct ElementParams {
  Real C{0};      ///< farad
  Real G{0};      ///< siemens
  Real L_ind{0};  ///< henry
  Real R{0};      ///< ohm
};

/// Capacitive viewpoint: flux as position, voltage as velocity, current as
/// force. The jets must be mutually consistent (i = C v', i' = C v'').
struct ElectricalState {
  Vec3 phi{Vec3::Zero()};
  Vec3 v{Vec3::Zero()};
  Vec3 i{Vec3::Zero()};
  Vec3 i_prime{Vec3::Zero()};
};

/// Inductive viewpoint: charge as position, current as velocity, voltage as
/// force (v = L i', v' = L i'').
struct MagneticState {
  Vec3 q{Vec3::Zero()};
  Vec3 i{Vec3::Zero()};
  Vec3 v{Vec3::Zero()};
  Vec3 v_prime{Vec3::Zero()};
};

/// Momentum/energy/power multivectors of one storage element.
struct DomainPowerReport {
  Real p{0};
  Vec3 Q{Vec3::Zero()};
  Vec3 N{Vec3::Zero()};
  Vec3 R_resid{Vec3::Zero()};
  Multivector L_hat;
  Multivector E_hat;
  Multivector W_hat;
  Real T{0};
  Real U{0};
  Real I_gen{0};
  Real lagrangian_rate{0};
};

DomainPowerReport capacitor_report(const ElectricalState& state, const ElementParams& params);

DomainPowerReport inductor_report(const MagneticState& state, const ElementParams& params);

/// Four apparent components of the capacitor current i = C v', built on the
/// flux jet (x = phi, d1 = v, d2 = v'). Sum closes to C v'.
CoriolisDecomposition current_apparent_components(const CurveJet& phi_jet,
                                                  const ElementParams& params);

/// Four apparent components of the inductor voltage v = L i', built on the
/// charge jet (x = q, d1 = i, d2 = i').
CoriolisDecomposition voltage_apparent_components(const CurveJet& q_jet,
                                                  const ElementParams& params);

/// Generalized force seen by the storage element once the shunt/series loss
/// is deducted: f_e = i - G v.
Vec3 lossy_force(const ElectricalState& state, const ElementParams& params);

/// f_m = v - R i.
Vec3 lossy_force(const MagneticState& state, const ElementParams& params);

/// Series R-L feeding the parallel C-G pair, instrumented open-loop from the
/// node voltage v: i = C v' + G v, v_L = L i', v_RL = v_L + R i.
struct RlgcReport {
  Real p_total{0};   ///< G|v|^2 + R|i|^2
  Vec3 Q_total{Vec3::Zero()};  ///< v x i_C + i x v_RL
  DomainPowerReport capacitor;
  DomainPowerReport inductor;
  Real p_conductance{0};
  Real p_resistance{0};
  Vec3 i{Vec3::Zero()};
  Vec3 i_c{Vec3::Zero()};
  Vec3 v_l{Vec3::Zero()};
  Vec3 v_rl{Vec3::Zero()};
  CoriolisDecomposition i_c_components;
  CoriolisDecomposition v_l_components;
};

/// phi is the flux of the node voltage; v_jet carries (v, v', v'', v''').
RlgcReport rlgc_circuit_report(const Vec3& phi, const CurveJet& v_jet,
                               const ElementParams& params);

}  // namespace geopower
