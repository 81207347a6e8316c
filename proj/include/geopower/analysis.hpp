#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "geopower/circuits.hpp"
#include "geopower/signals.hpp"

namespace geopower {

struct AnalysisOptions {
  ElementParams element{.C = 10e-6};
  Real eps_speed{kDefaultEpsSpeed};  ///< relative to the series RMS of |d1|
  Real eps_curv{kDefaultEpsCurv};
};

/// One output sample of the capacitor analysis of a flux series.
struct SampleRow {
  Real t{0};
  Real p{0};
  Vec3 Q{Vec3::Zero()};
  Real lagrangian_rate{0};
  Vec3 R{Vec3::Zero()};
  Real omega_kappa{0};
  Real omega_tau{0};
  Real rho{0};  ///< radial frequency of the velocity
  Real T_kinetic{0};
  Vec3 relative{Vec3::Zero()};
  Vec3 coriolis{Vec3::Zero()};
  Vec3 euler{Vec3::Zero()};
  Vec3 centrifugal{Vec3::Zero()};
  Vec3 omega_xi{Vec3::Zero()};
  Vec3 nu_d{Vec3::Zero()};
  Real orbital_residual{0};
  bool degenerate{false};
};

struct AnalysisResult {
  std::vector<SampleRow> rows;
  std::size_t degenerate_count{0};
};

/// Rebuilds the flux from a sampled voltage series (corrected trapezoid on
/// the d1 jets, then zero-mean) and shifts the jets one derivative down:
/// output jets are (x = phi, d1 = v, d2 = v', d3 = v'').
SampledSeries reconstruct_flux(const SampledSeries& voltage);

/// Flux series for any scenario, including CSV-backed ones.
SampledSeries scenario_flux_series(const Scenario& s, Real t_start, Real t_end, Real dt);

/// Flux jets (phi, v, v', v'') plus voltage jets (v, v', v'', v''') for the
/// composite-circuit paths that need the third voltage derivative.
struct ScenarioSeries {
  SampledSeries flux;
  SampledSeries voltage;
};

ScenarioSeries scenario_series(const Scenario& s, Real t_start, Real t_end, Real dt);

/// Per-sample capacitor analysis of a flux series (jets x = phi, d1 = v,
/// d2 = v', d3 = v''). Degenerate frames reuse the last valid frame for the
/// frame-dependent columns and are flagged.
AnalysisResult analyze_series(const SampledSeries& flux, const AnalysisOptions& opt);

struct IdentityReport {
  std::string name;
  Real max_residual{0};
  Real threshold{0};
  bool pass{false};
  std::size_t skipped{0};  ///< degenerate samples excluded
};

/// Evaluates the scale-relative residual of every per-sample identity over
/// the series. All identities are algebraic in the jets, so they hold for
/// finite-difference (CSV) jets as well.
std::vector<IdentityReport> run_identity_suite(const SampledSeries& flux,
                                               const AnalysisOptions& opt);

}  // namespace geopower
