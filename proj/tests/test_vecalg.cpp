#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "geopower/vecalg.hpp"

using namespace geopower;

namespace {

std::mt19937 rng(20240611);

Vec3 random_vec(Real lo = -1.0, Real hi = 1.0) {
  std::uniform_real_distribution<Real> dist(lo, hi);
  return {dist(rng), dist(rng), dist(rng)};
}

Multivector random_mv() {
  std::uniform_real_distribution<Real> dist(-1.0, 1.0);
  return {dist(rng), random_vec()};
}

Mat3 random_rotation() {
  std::uniform_real_distribution<Real> dist(-1.0, 1.0);
  Vec3 axis = random_vec();
  while (axis.norm() < 1e-3) axis = random_vec();
  return Eigen::AngleAxis<Real>(dist(rng) * M_PI, axis.normalized()).toRotationMatrix();
}

Real mv_dist(const Multivector& a, const Multivector& b) { return norm(a - b); }

}  // namespace

TEST_CASE("dot product basics") {
  CHECK(dot(Vec3(1, 2, 3), Vec3(4, 5, 6)) == 32.0);
  CHECK(dot(Vec3::Zero(), Vec3::Zero()) == 0.0);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 a = random_vec();
    const Vec3 b = random_vec();
    CHECK(dot(a, b) == dot(b, a));  // bitwise, same summation order
  }
}

TEST_CASE("cross product basics") {
  const Vec3 e1(1, 0, 0), e2(0, 1, 0), e3(0, 0, 1);
  CHECK(cross(e1, e2) == e3);
  const Vec3 a = random_vec();
  CHECK(cross(a, a) == Vec3::Zero());
  for (int i = 0; i < 1000; ++i) {
    const Vec3 x = random_vec();
    const Vec3 y = random_vec();
    CHECK(cross(x, y) == Vec3(-cross(y, x)));
  }
}

TEST_CASE("geometric product is the Hamiltonian product") {
  const Multivector i{0, Vec3(1, 0, 0)};
  const Multivector j{0, Vec3(0, 1, 0)};
  const Multivector k{0, Vec3(0, 0, 1)};
  CHECK(mv_dist(i * j, k) == 0.0);
  CHECK(mv_dist(i * i, Multivector{-1.0}) == 0.0);

  const Multivector one{1.0};
  for (int n = 0; n < 100; ++n) {
    const Multivector y = random_mv();
    CHECK(mv_dist(one * y, y) == 0.0);
    CHECK(mv_dist(y * one, y) == 0.0);
  }
}

TEST_CASE("conjugate") {
  const Multivector x{1, Vec3(1, 0, 0)};
  const Multivector xc = conjugate(x);
  CHECK(xc.s == 1.0);
  CHECK(xc.v == Vec3(-1, 0, 0));

  for (int n = 0; n < 200; ++n) {
    const Multivector a = random_mv();
    const Multivector b = random_mv();
    CHECK(mv_dist(conjugate(conjugate(a)), a) == 0.0);

    // norm law: X (X*) = |X|^2
    const Multivector nl = a * conjugate(a);
    CHECK(std::abs(nl.s - norm_sq(a)) <= 1e-15 * norm_sq(a) + 1e-300);
    CHECK(nl.v.norm() <= 1e-16);

    // reversal law
    const Real scale = norm(a) * norm(b) + 1e-30;
    CHECK(mv_dist(conjugate(a * b), conjugate(b) * conjugate(a)) <= 1e-14 * scale);
  }
}

TEST_CASE("vector identity suite over 1000 random draws") {
  Real lagrange = 0, jacobi = 0, triple = 0, quad = 0, rot = 0;
  for (int n = 0; n < 1000; ++n) {
    const Vec3 a = random_vec(), b = random_vec(), c = random_vec(), d = random_vec();

    lagrange = std::max(lagrange,
                        (cross(a, cross(b, c)) - (dot(a, c) * b - dot(a, b) * c)).norm());
    jacobi = std::max(jacobi, (cross(a, cross(b, c)) + cross(b, cross(c, a)) +
                               cross(c, cross(a, b)))
                                  .norm());

    const Real t1 = dot(a, cross(b, c));
    const Real t2 = dot(c, cross(a, b));
    const Real t3 = dot(b, cross(c, a));
    const Real tscale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), Real(1e-30)});
    triple = std::max(triple, std::max(std::abs(t1 - t2), std::abs(t1 - t3)) / tscale);

    const Real q1 = dot(cross(a, b), cross(c, d));
    const Real q2 = dot(a, c) * dot(b, d) - dot(a, d) * dot(b, c);
    quad = std::max(quad, std::abs(q1 - q2) / std::max(std::abs(q1), Real(1e-30)));

    const Mat3 rmat = random_rotation();
    rot = std::max(rot,
                   (Vec3(rmat * a).cross(Vec3(rmat * b)) - Vec3(rmat * cross(a, b))).norm());
  }
  CHECK(lagrange <= 1e-13);
  CHECK(jacobi <= 1e-13);
  CHECK(triple <= 1e-12);
  CHECK(quad <= 1e-12);
  CHECK(rot <= 1e-12);
}

TEST_CASE("geometric product associativity") {
  Real worst = 0;
  for (int n = 0; n < 1000; ++n) {
    const Multivector x = random_mv(), y = random_mv(), z = random_mv();
    const Real scale = norm(x) * norm(y) * norm(z) + 1e-30;
    worst = std::max(worst, mv_dist((x * y) * z, x * (y * z)) / scale);
  }
  CHECK(worst <= 1e-12);
}
