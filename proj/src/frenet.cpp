#include "geopower/frenet.hpp"

#include <algorithm>

#include "geopower/errors.hpp"

namespace geopower {

FrenetApparatus frenet_apparatus(const CurveJet& jet, Real eps_speed, Real eps_curv,
                                 Real speed_scale) {
  FrenetApparatus app;
  const Vec3& u = jet.d1;
  const Vec3& up = jet.d2;
  const Vec3& upp = jet.d3;

  const Real speed = u.norm();
  if (speed <= eps_speed * std::max(speed_scale, Real(0))) {
    app.degenerate = true;
    return app;
  }
  app.speed = speed;
  const Real speed_sq = speed * speed;
  app.T = u / speed;
  app.rho_u = u.dot(up) / speed_sq;

  const Vec3 w = u.cross(up);
  const Real w_norm = w.norm();
  app.omega_kappa = w_norm / speed_sq;
  if (app.omega_kappa <= eps_curv) {
    // Straight segment: the normal plane is undefined and the omega_kappa^2
    // divisor of the torsion vanishes; omega_tau is taken as its zero limit.
    app.omega_tau = 0;
    app.degenerate = true;
    return app;
  }
  app.B = w / w_norm;
  app.N = app.B.cross(app.T);
  app.omega_tau = u.dot(up.cross(upp)) / (app.omega_kappa * app.omega_kappa * speed_sq * speed);
  app.omega_u = app.omega_kappa * app.B;
  app.darboux = app.omega_tau * app.T + app.omega_kappa * app.B;
  return app;
}

Mat3 frame_matrix(const FrenetApparatus& app) {
  Mat3 f;
  f.row(0) = app.T;
  f.row(1) = app.N;
  f.row(2) = app.B;
  return f;
}

Vec3 darboux_frame(const FrenetApparatus& app) {
  return {app.omega_tau, 0.0, app.omega_kappa};
}

std::vector<Mat3> frame_rotation_rate(std::span<const FrenetApparatus> frames, Real dt) {
  if (frames.size() < 3) {
    throw InsufficientSamplesError("frame_rotation_rate needs at least 3 frames");
  }
  for (const auto& f : frames) {
    if (f.degenerate) {
      throw DegenerateFrameError("frame_rotation_rate: degenerate frame in window");
    }
  }
  std::vector<Mat3> residuals;
  residuals.reserve(frames.size() - 2);
  for (std::size_t i = 1; i + 1 < frames.size(); ++i) {
    const Mat3 f = frame_matrix(frames[i]);
    const Mat3 fp = (frame_matrix(frames[i + 1]) - frame_matrix(frames[i - 1])) / (2 * dt);
    Mat3 expected;
    const Real wk = frames[i].omega_kappa;
    const Real wt = frames[i].omega_tau;
    expected << 0, -wk, 0,  //
        wk, 0, -wt,         //
        0, wt, 0;
    residuals.push_back(f * fp.transpose() - expected);
  }
  return residuals;
}

}  // namespace geopower
