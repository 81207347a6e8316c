#include "geopower/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "geopower/errors.hpp"
#include "geopower/relative.hpp"

namespace geopower {

SampledSeries reconstruct_flux(const SampledSeries& voltage) {
  const auto& jets = voltage.jets;
  if (jets.size() < 2) {
    throw InsufficientSamplesError("reconstruct_flux: need at least 2 samples");
  }
  const Real dt = voltage.dt;
  std::vector<Vec3> phi(jets.size());
  phi[0] = Vec3::Zero();
  for (std::size_t i = 0; i + 1 < jets.size(); ++i) {
    // Trapezoid with the Euler-Maclaurin endpoint correction; O(dt^4) global.
    phi[i + 1] = phi[i] + 0.5 * dt * (jets[i].x + jets[i + 1].x) -
                 dt * dt / 12.0 * (jets[i + 1].d1 - jets[i].d1);
  }
  // Integral (trapezoid-weighted) average: exact zero-mean for whole periods.
  Vec3 mean = 0.5 * (phi.front() + phi.back());
  for (std::size_t i = 1; i + 1 < phi.size(); ++i) mean += phi[i];
  mean /= static_cast<Real>(phi.size() - 1);

  SampledSeries flux;
  flux.dt = dt;
  flux.jets.resize(jets.size());
  for (std::size_t i = 0; i < jets.size(); ++i) {
    flux.jets[i] = {jets[i].t, Vec3(phi[i] - mean), jets[i].x, jets[i].d1, jets[i].d2};
  }
  return flux;
}

SampledSeries scenario_flux_series(const Scenario& s, Real t_start, Real t_end, Real dt) {
  if (const auto* csv = std::get_if<FromCsv>(&s)) {
    const CsvData data = ingest_csv(csv->path, csv->dt);
    return reconstruct_flux(data.voltage);
  }
  return flux_series(s, t_start, t_end, dt);
}

ScenarioSeries scenario_series(const Scenario& s, Real t_start, Real t_end, Real dt) {
  if (const auto* csv = std::get_if<FromCsv>(&s)) {
    const CsvData data = ingest_csv(csv->path, csv->dt);
    return {reconstruct_flux(data.voltage), data.voltage};
  }
  return {flux_series(s, t_start, t_end, dt), voltage_series(s, t_start, t_end, dt)};
}

namespace {

Real series_speed_rms(const SampledSeries& flux) {
  Real acc = 0;
  for (const CurveJet& jet : flux.jets) acc += jet.d1.squaredNorm();
  return std::sqrt(acc / static_cast<Real>(std::max<std::size_t>(1, flux.jets.size())));
}

}  // namespace

AnalysisResult analyze_series(const SampledSeries& flux, const AnalysisOptions& opt) {
  const Real C = opt.element.C;
  if (C <= 0) {
    throw ConfigError("analyze_series: element C must be > 0");
  }
  const Real rms = series_speed_rms(flux);

  AnalysisResult result;
  result.rows.reserve(flux.jets.size());
  FrenetApparatus last_valid;
  bool have_valid = false;

  for (const CurveJet& jet : flux.jets) {
    SampleRow row;
    row.t = jet.t;

    ParticleState state{C, jet.x, jet.d1, jet.d2, jet.d3};
    const Vec3 f = C * jet.d2;        // i = C v'
    const Vec3 f_prime = C * jet.d3;  // i' = C v''
    const PowerMultivector pw = power_decomposition(state, f, f_prime);
    row.p = pw.p;
    row.Q = pw.Q;
    row.lagrangian_rate = pw.lagrangian_rate;
    row.R = pw.R;
    row.T_kinetic = 0.5 * C * jet.d1.squaredNorm();

    FrenetApparatus app = frenet_apparatus(jet, opt.eps_speed, opt.eps_curv, rms);
    row.omega_kappa = app.omega_kappa;
    row.omega_tau = app.omega_tau;
    row.rho = app.rho_u;
    row.degenerate = app.degenerate;
    if (app.degenerate) {
      ++result.degenerate_count;
      if (have_valid) {
        app.T = last_valid.T;
        app.N = last_valid.N;
        app.B = last_valid.B;
        app.omega_u = last_valid.omega_u;
        app.darboux = last_valid.darboux;
      }
    } else {
      last_valid = app;
      have_valid = true;
    }

    if (jet.x.squaredNorm() > 0) {
      const CoriolisDecomposition comps =
          current_apparent_components({jet.t, jet.x, jet.d1, jet.d2, jet.d3}, opt.element);
      row.relative = comps.relative;
      row.coriolis = comps.coriolis;
      row.euler = comps.euler;
      row.centrifugal = comps.centrifugal;

      if (!row.degenerate) {
        const RelativeState rel = to_frenet(app, state, analytic_xi_prime(app, state));
        row.omega_xi = rel.omega_xi;
        row.nu_d = rel.nu_d;
        const MomentumMultivector mom = momentum_multivector(state);
        row.orbital_residual = orbital_identity_residual(rel, app, mom).norm();
      }
    }
    result.rows.push_back(row);
  }
  return result;
}

namespace {

struct ResidualTracker {
  const char* name;
  Real threshold;
  Real worst{0};
  std::size_t skipped{0};

  void update(Real residual, Real scale) {
    if (scale > 0) worst = std::max(worst, std::abs(residual) / scale);
  }
};

}  // namespace

std::vector<IdentityReport> run_identity_suite(const SampledSeries& flux,
                                               const AnalysisOptions& opt) {
  const Real C = opt.element.C;
  if (C <= 0) {
    throw ConfigError("run_identity_suite: element C must be > 0");
  }
  const Real rms = series_speed_rms(flux);

  ResidualTracker main_result{"main_result_S_hat", 1e-10};
  ResidualTracker kinetic_chain{"kinetic_energy_chain", 1e-12};
  ResidualTracker kinetic_relative{"kinetic_energy_relative", 1e-10};
  ResidualTracker coriolis_closure{"coriolis_sum_closure", 1e-10};
  ResidualTracker orbital{"orbital_identity", 1e-9};
  ResidualTracker lambda_routes{"relative_angular_momentum", 1e-10};
  ResidualTracker frame_ortho{"frame_orthonormality", 1e-12};
  ResidualTracker length_pres{"length_preservation", 1e-12};
  ResidualTracker rotatum_split{"rotatum_split", 1e-13};
  ResidualTracker closed_form{"residual_closed_form", 1e-8};
  ResidualTracker w_hat_split{"power_multivector_split", 1e-10};

  for (const CurveJet& jet : flux.jets) {
    ParticleState state{C, jet.x, jet.d1, jet.d2, jet.d3};
    const Vec3 f = C * jet.d2;
    const Vec3 f_prime = C * jet.d3;
    const PowerMultivector pw = power_decomposition(state, f, f_prime);
    const Real power_scale =
        std::max({norm(pw.s_hat()), norm(pw.r_hat()), Real(1e-30)});

    main_result.update(norm(main_result_residual(state)), power_scale);

    const Real T = 0.5 * C * jet.d1.squaredNorm();
    if (jet.x.squaredNorm() > 0) {
      const MomentumMultivector mom = momentum_multivector(state);
      kinetic_chain.update(0.5 * norm_sq(mom.l_hat()) / mom.I - T, T);

      const CoriolisDecomposition dec = coriolis_decomposition(state);
      coriolis_closure.update((dec.sum() - state.a).norm(), state.a.norm());

      rotatum_split.update(
          (pw.Q + pw.R - C * (jet.d1.cross(jet.d2) + jet.x.cross(jet.d3))).norm(),
          std::max(pw.Q.norm(), pw.R.norm()));
    }

    const FrenetApparatus app = frenet_apparatus(jet, opt.eps_speed, opt.eps_curv, rms);
    if (app.degenerate || jet.x.squaredNorm() == 0) {
      for (ResidualTracker* t :
           {&kinetic_relative, &orbital, &lambda_routes, &frame_ortho, &length_pres,
            &closed_form, &w_hat_split}) {
        ++t->skipped;
      }
      continue;
    }

    frame_ortho.update(std::abs(app.T.norm() - 1), 1);
    frame_ortho.update(std::abs(app.N.norm() - 1), 1);
    frame_ortho.update(std::abs(app.B.norm() - 1), 1);
    frame_ortho.update(std::abs(app.T.dot(app.N)), 1);
    frame_ortho.update(std::abs(app.T.dot(app.B)), 1);
    frame_ortho.update(std::abs(app.N.dot(app.B)), 1);
    frame_ortho.update((app.T.cross(app.N) - app.B).norm(), 1);

    const MomentumMultivector mom = momentum_multivector(state);
    const RelativeState rel = to_frenet(app, state, analytic_xi_prime(app, state));
    length_pres.update(rel.xi.norm() - state.r.norm(), state.r.norm());
    orbital.update(orbital_identity_residual(rel, app, mom).norm(),
                   std::max(mom.omega_r.norm(), Real(1e-30)));
    kinetic_relative.update(kinetic_energy_relative(rel, app, mom.I, mom.rho_r) - T, T);
    lambda_routes.update(
        (rel.Lambda - mom.I * (rel.omega_xi + darboux_frame(app) - rel.nu_d)).norm(),
        rel.Lambda.norm() > 0 ? rel.Lambda.norm() : mom.I * app.omega_kappa);

    closed_form.update(norm(residual_closed_form(state, app) - pw.r_hat()), power_scale);

    ElectricalState es{jet.x, jet.d1, f, f_prime};
    const DomainPowerReport rep = capacitor_report(es, opt.element);
    w_hat_split.update(norm(rep.W_hat - (pw.s_hat() + pw.r_hat())), power_scale);
  }

  std::vector<IdentityReport> out;
  for (const ResidualTracker* t :
       {&main_result, &kinetic_chain, &kinetic_relative, &coriolis_closure, &orbital,
        &lambda_routes, &frame_ortho, &length_pres, &rotatum_split, &closed_form,
        &w_hat_split}) {
    out.push_back({t->name, t->worst, t->threshold, t->worst <= t->threshold, t->skipped});
  }
  return out;
}

}  // namespace geopower
