#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geopower/errors.hpp"
#include "geopower/mechanics.hpp"
#include "geopower/signals.hpp"

using namespace geopower;

namespace {

constexpr Real kW0 = 100 * M_PI;
constexpr Real kCap = 10e-6;

std::mt19937 rng(987123);

Vec3 random_vec(Real scale = 1.0) {
  std::uniform_real_distribution<Real> dist(-scale, scale);
  return {dist(rng), dist(rng), dist(rng)};
}

// Smooth trigonometric test curve with exact jets.
ParticleState smooth_state(Real t) {
  const Vec3 A(0.7, -1.1, 0.4), B(0.2, 0.9, -1.3), Coff(1.1, 0.3, 0.8);
  const Real w1 = 1.3, w2 = 2.7;
  ParticleState s;
  s.mass = 1.7;
  s.r = A * std::sin(w1 * t) + B * std::cos(w2 * t) + Coff;
  s.u = A * w1 * std::cos(w1 * t) - B * w2 * std::sin(w2 * t);
  s.a = -A * w1 * w1 * std::sin(w1 * t) - B * w2 * w2 * std::cos(w2 * t);
  s.j = -A * w1 * w1 * w1 * std::cos(w1 * t) + B * w2 * w2 * w2 * std::sin(w2 * t);
  return s;
}

// Electrical mapping of the capacitor: flux as position, voltage as velocity.
ParticleState capacitor_state(const CurveJet& flux_jet) {
  return {kCap, flux_jet.x, flux_jet.d1, flux_jet.d2, flux_jet.d3};
}

}  // namespace

TEST_CASE("geometric frequency") {
  const BalancedSin scenario{20e3, kW0};
  const SampledSeries flux = flux_series(scenario, 0.0, 0.001, 1e-4);
  for (const CurveJet& jet : flux.jets) {
    const GeometricFrequency gf = geometric_frequency(jet.x, jet.d1);
    CHECK(std::abs(gf.rho) <= 1e-9 * kW0);
    CHECK(gf.omega.norm() == doctest::Approx(kW0).epsilon(1e-12));
    CHECK((gf.omega - kW0 * Vec3(1, 1, 1).normalized()).norm() <= 1e-9 * kW0);
  }

  // Parallel derivative: pure radial stretch.
  const Vec3 a(0.3, -2.0, 1.1);
  const GeometricFrequency gf = geometric_frequency(a, 3.5 * a);
  CHECK(gf.rho == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(gf.omega.norm() <= 1e-14);

  // Reconstruction a' = rho a + omega x a.
  for (int i = 0; i < 200; ++i) {
    const Vec3 x = random_vec();
    const Vec3 xp = random_vec();
    if (x.norm() < 1e-6) continue;
    const GeometricFrequency g = geometric_frequency(x, xp);
    CHECK((g.rho * x + g.omega.cross(x) - xp).norm() <= 1e-12 * xp.norm() + 1e-15);
  }

  CHECK_THROWS_AS(geometric_frequency(Vec3::Zero(), a), ZeroMagnitudeError);
}

TEST_CASE("momentum multivector") {
  const BalancedSin scenario{20e3, kW0};
  const SampledSeries flux = flux_series(scenario, 0.0, 0.001, 1e-4);
  for (const CurveJet& jet : flux.jets) {
    const MomentumMultivector m = momentum_multivector(capacitor_state(jet));
    // Constant flux magnitude: no momentum density, L = I omega.
    CHECK(std::abs(m.ell) <= 1e-12 * m.I * kW0);
    CHECK((m.L - m.I * m.omega_r).norm() <= 1e-12 * m.L.norm());
    CHECK(m.I == doctest::Approx(kCap * jet.x.squaredNorm()).epsilon(1e-14));
  }

  // Radial motion: u = lambda r has no angular momentum.
  ParticleState s;
  s.mass = 2.0;
  s.r = {1.0, -0.5, 2.0};
  s.u = 0.7 * s.r;
  const MomentumMultivector m = momentum_multivector(s);
  CHECK(m.L.norm() == 0.0);
  CHECK(m.ell == doctest::Approx(2.0 * 0.7 * s.r.squaredNorm()).epsilon(1e-14));

  // |L_hat|^2 / I = 2T.
  for (int i = 0; i < 200; ++i) {
    ParticleState st;
    st.mass = 0.5 + std::abs(random_vec().x());
    st.r = random_vec(2.0);
    st.u = random_vec(3.0);
    if (st.r.norm() < 1e-3) continue;
    const MomentumMultivector mm = momentum_multivector(st);
    const Real T = 0.5 * st.mass * st.u.squaredNorm();
    CHECK(std::abs(norm_sq(mm.l_hat()) / mm.I - 2 * T) <= 1e-12 * 2 * T + 1e-300);
  }

  ParticleState origin;
  origin.r = Vec3::Zero();
  CHECK_THROWS_AS(momentum_multivector(origin), ZeroRadiusError);
}

TEST_CASE("energy multivector") {
  const BalancedSin scenario{20e3, kW0};
  const SampledSeries flux = flux_series(scenario, 0.0, 0.001, 1e-4);
  for (const CurveJet& jet : flux.jets) {
    const ParticleState s = capacitor_state(jet);
    const Vec3 i = kCap * jet.d2;
    const EnergyMultivector e = energy_multivector(s, i);
    // Balanced capacitor: zero torque.
    CHECK(e.torque.norm() <= 1e-12 * s.r.norm() * i.norm());
    CHECK(e.scalar_part == doctest::Approx(2 * e.T - e.U));
  }

  // Free particle.
  ParticleState s = smooth_state(0.4);
  const EnergyMultivector e = energy_multivector(s, Vec3::Zero());
  CHECK(e.U == 0.0);
  CHECK(e.torque == Vec3::Zero());
  CHECK(e.scalar_part == doctest::Approx(s.mass * s.u.squaredNorm()));

  // d(ell)/dt == 2T - U, finite-difference oracle at 20 kHz, O(dt^2).
  auto fd_residual = [](Real dt) {
    Real worst = 0;
    for (int i = 1; i < 20; ++i) {
      const Real t = 0.1 + i * dt;
      auto ell = [](const ParticleState& st) { return st.mass * st.r.dot(st.u); };
      const Real dell = (ell(smooth_state(t + dt)) - ell(smooth_state(t - dt))) / (2 * dt);
      const ParticleState st = smooth_state(t);
      const EnergyMultivector em = energy_multivector(st, st.mass * st.a);
      worst = std::max(worst, std::abs(dell - em.scalar_part));
    }
    return worst;
  };
  const Real r1 = fd_residual(5e-5);
  const Real r2 = fd_residual(2.5e-5);
  CHECK(r1 <= 1e-6);  // curve has unit-scale frequencies
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("power decomposition reproduces the reference reactive powers") {
  SUBCASE("balanced") {
    const BalancedSin scenario{20e3, kW0};
    const SampledSeries flux = flux_series(scenario, 0.0, 0.02, 5e-5);
    for (const CurveJet& jet : flux.jets) {
      const ParticleState s = capacitor_state(jet);
      const PowerMultivector w = power_decomposition(s, kCap * jet.d2, kCap * jet.d3);
      CHECK(std::abs(w.p) <= 1e-9 * w.Q.norm());
      for (int k = 0; k < 3; ++k) {
        CHECK(w.Q[k] == doctest::Approx(1.08827962e6).epsilon(1e-6));
      }
    }
  }
  SUBCASE("unbalanced") {
    const UnbalancedSin scenario;  // 20/19/23 kV with the +1.6pi/3 phase-c shift
    const SampledSeries flux = flux_series(scenario, 0.0, 0.02, 5e-5);
    for (const CurveJet& jet : flux.jets) {
      const ParticleState s = capacitor_state(jet);
      const PowerMultivector w = power_decomposition(s, kCap * jet.d2, kCap * jet.d3);
      CHECK(w.Q[0] == doctest::Approx(0.80695626e6).epsilon(1e-6));
      CHECK(w.Q[1] == doctest::Approx(1.43721603e6).epsilon(1e-6));
      CHECK(w.Q[2] == doctest::Approx(1.03386564e6).epsilon(1e-6));
      // The torque vanishes (phi x v' = 0 phase-wise), so Q = -R holds even
      // though the scalar side oscillates (ell'' = 4p here).
      CHECK((w.Q + w.R).norm() <= 1e-8 * w.Q.norm());
      CHECK(std::abs(w.p + w.lagrangian_rate - 4 * w.p) <= 1e-8 * w.Q.norm());
    }
  }
  SUBCASE("pure drag force") {
    const ParticleState s = smooth_state(1.1);
    const Real k = 0.8;
    const PowerMultivector w = power_decomposition(s, -k * s.u, -k * s.a);
    CHECK(w.Q.norm() <= 1e-14 * s.u.squaredNorm());
    CHECK(w.p == doctest::Approx(-k * s.u.squaredNorm()).epsilon(1e-14));
  }
}

TEST_CASE("main result: S_hat = 2T Omega_u") {
  for (Real t = 0.0; t < 3.0; t += 0.017) {
    const ParticleState s = smooth_state(t);
    const Multivector res = main_result_residual(s);
    const Real scale = s.mass * s.u.norm() * s.a.norm();
    CHECK(norm(res) <= 1e-10 * scale);
  }
  ParticleState stopped = smooth_state(0.2);
  stopped.u = Vec3::Zero();
  CHECK_THROWS_AS(main_result_residual(stopped), ZeroMagnitudeError);
}

TEST_CASE("closed-form residual multivector") {
  SUBCASE("matches the direct route on a generic smooth curve") {
    for (Real t = 0.05; t < 3.0; t += 0.13) {
      const ParticleState s = smooth_state(t);
      const FrenetApparatus app = frenet_apparatus({t, s.r, s.u, s.a, s.j});
      if (app.degenerate) continue;
      const PowerMultivector w = power_decomposition(s, s.mass * s.a, s.mass * s.j);
      const Multivector closed = residual_closed_form(s, app);
      const Real scale = std::max(norm(w.r_hat()), norm(w.s_hat()));
      CHECK(norm(closed - w.r_hat()) <= 1e-10 * scale);
    }
  }
  SUBCASE("stationary identity R_hat = -S_hat on the balanced scenario") {
    const BalancedSin scenario{20e3, kW0};
    const SampledSeries flux = flux_series(scenario, 0.0, 0.01, 1e-4);
    for (const CurveJet& jet : flux.jets) {
      const ParticleState s = capacitor_state(jet);
      const FrenetApparatus app = frenet_apparatus(jet);
      const PowerMultivector w = power_decomposition(s, kCap * jet.d2, kCap * jet.d3);
      const Multivector closed = residual_closed_form(s, app);
      CHECK(norm(closed + w.s_hat()) <= 1e-10 * norm(w.s_hat()));
    }
  }
  SUBCASE("harmonic scenario against the direct (L', R) route") {
    const HarmonicSin scenario;
    const SampledSeries flux = flux_series(scenario, 0.0, 0.02, 5e-5);
    for (const CurveJet& jet : flux.jets) {
      const ParticleState s = capacitor_state(jet);
      const FrenetApparatus app = frenet_apparatus(jet);
      const PowerMultivector w = power_decomposition(s, kCap * jet.d2, kCap * jet.d3);
      const Multivector closed = residual_closed_form(s, app);
      const Real scale = std::max(norm(w.r_hat()), norm(w.s_hat()));
      CHECK(norm(closed - w.r_hat()) <= 1e-8 * scale);
    }
  }
  SUBCASE("degenerate frame is rejected") {
    const ParticleState s = smooth_state(0.3);
    FrenetApparatus app;
    app.degenerate = true;
    CHECK_THROWS_AS(residual_closed_form(s, app), DegenerateFrameError);
  }
}

TEST_CASE("coriolis decomposition") {
  SUBCASE("balanced capacitor: purely centrifugal") {
    const BalancedSin scenario{20e3, kW0};
    const SampledSeries flux = flux_series(scenario, 0.0, 0.01, 1e-4);
    for (const CurveJet& jet : flux.jets) {
      const CoriolisDecomposition d = coriolis_decomposition(capacitor_state(jet));
      const Real scale = d.centrifugal.norm();
      CHECK(d.relative.norm() <= 1e-9 * scale);
      CHECK(d.coriolis.norm() <= 1e-9 * scale);
      CHECK(d.euler.norm() <= 1e-9 * scale);
      CHECK((d.centrifugal - jet.d2).norm() <= 1e-12 * scale);
    }
  }
  SUBCASE("unbalanced: Coriolis and Euler cancel") {
    const UnbalancedSin scenario;
    const SampledSeries flux = flux_series(scenario, 0.0, 0.02, 5e-5);
    for (const CurveJet& jet : flux.jets) {
      const CoriolisDecomposition d = coriolis_decomposition(capacitor_state(jet));
      const Real scale = std::max(d.coriolis.norm(), d.euler.norm());
      if (scale > 0) {
        CHECK((d.coriolis + d.euler).norm() <= 1e-9 * scale);
      }
    }
  }
  SUBCASE("harmonic: all four components alive") {
    const HarmonicSin scenario;
    const SampledSeries flux = flux_series(scenario, 0.0, 0.02, 5e-5);
    Real rel = 0, cor = 0, eul = 0, cen = 0;
    for (const CurveJet& jet : flux.jets) {
      const CoriolisDecomposition d = coriolis_decomposition(capacitor_state(jet));
      rel = std::max(rel, d.relative.norm());
      cor = std::max(cor, d.coriolis.norm());
      eul = std::max(eul, d.euler.norm());
      cen = std::max(cen, d.centrifugal.norm());
    }
    CHECK(rel > 0.01 * cen);
    CHECK(cor > 0.01 * cen);
    CHECK(eul > 0.01 * cen);
  }
  SUBCASE("sum closure on random smooth states") {
    for (Real t = 0.0; t < 3.0; t += 0.09) {
      const ParticleState s = smooth_state(t);
      const CoriolisDecomposition d = coriolis_decomposition(s);
      CHECK((d.sum() - s.a).norm() <= 1e-10 * s.a.norm());
    }
  }
  SUBCASE("zero radius") {
    ParticleState s;
    s.r = Vec3::Zero();
    s.u = {1, 0, 0};
    CHECK_THROWS_AS(coriolis_decomposition(s), ZeroRadiusError);
  }
}

TEST_CASE("inertia operator") {
  const Vec3 r(1.0, 2.0, -0.5);
  const Vec3 omega_perp = r.cross(Vec3(0, 0, 1)).normalized() * 3.0;
  InertiaSystem one{{{2.5, r}}};
  CHECK((inertia_apply(one, omega_perp) - 2.5 * r.squaredNorm() * omega_perp).norm() <=
        1e-12 * 2.5 * r.squaredNorm() * omega_perp.norm());

  InertiaSystem two{{{2.5, r}, {2.5, Vec3(-r)}}};
  const Vec3 omega(0.3, -1.0, 0.7);
  CHECK((inertia_apply(two, omega) - 2.0 * inertia_apply(one, omega)).norm() <= 1e-12);

  // Kinetic-energy oracle: sum of per-body 1/2 m |omega x r|^2.
  InertiaSystem three{{{1.1, random_vec(2.0)}, {0.7, random_vec(2.0)}, {2.9, random_vec(2.0)}}};
  for (int i = 0; i < 50; ++i) {
    const Vec3 w = random_vec(3.0);
    Real expected = 0;
    for (const auto& b : three.bodies) expected += 0.5 * b.mass * w.cross(b.r).squaredNorm();
    CHECK(inertia_kinetic_energy(three, w) ==
          doctest::Approx(expected).epsilon(1e-12));
  }

  CHECK_THROWS_AS(inertia_apply(InertiaSystem{}, omega), EmptySystemError);
}

TEST_CASE("second finite difference of the momentum series") {
  // d^2/dt^2 (ell, L) == (p + L', Q + R) with O(dt^2) convergence.
  const UnbalancedSin scenario;
  auto worst_for_dt = [&](Real dt) {
    const SampledSeries flux = flux_series(scenario, 0.0, 40 * dt, dt);
    Real worst = 0;
    for (std::size_t i = 1; i + 1 < flux.jets.size(); ++i) {
      auto ell = [](const CurveJet& j) { return kCap * j.x.dot(j.d1); };
      auto ang = [](const CurveJet& j) { return Vec3(kCap * j.x.cross(j.d1)); };
      const Real ddell = (ell(flux.jets[i - 1]) - 2 * ell(flux.jets[i]) +
                          ell(flux.jets[i + 1])) / (dt * dt);
      const Vec3 ddL = (ang(flux.jets[i - 1]) - 2 * ang(flux.jets[i]) +
                        ang(flux.jets[i + 1])) / (dt * dt);
      const CurveJet& jet = flux.jets[i];
      const ParticleState s = capacitor_state(jet);
      const PowerMultivector w = power_decomposition(s, kCap * jet.d2, kCap * jet.d3);
      worst = std::max(worst, std::abs(ddell - (w.p + w.lagrangian_rate)));
      worst = std::max(worst, (ddL - (w.Q + w.R)).cwiseAbs().maxCoeff());
    }
    return worst;
  };
  const Real e20 = worst_for_dt(5e-5);
  const Real e40 = worst_for_dt(2.5e-5);
  CHECK(e20 <= 2.5e-4 * 1.8e6);  // fraction of the Q scale
  CHECK(e20 / e40 == doctest::Approx(4.0).epsilon(0.15));
}
