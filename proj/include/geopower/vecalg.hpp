#pragma once

#include <Eigen/Dense>

#include <cmath>

namespace geopower {

using Real = double;
using Vec3 = Eigen::Matrix<Real, 3, 1>;
using Mat3 = Eigen::Matrix<Real, 3, 3>;

inline Real dot(const Vec3& a, const Vec3& b) { return a.dot(b); }

inline Vec3 cross(const Vec3& a, const Vec3& b) { return a.cross(b); }

/// Scalar + 3-vector pair with the Hamiltonian (quaternion) product.
/// Pseudovectors share the vector slot; Hodge duality is implicit.
struct Multivector {
  Real s{0};
  Vec3 v{Vec3::Zero()};

  Multivector() = default;
  Multivector(Real scalar, const Vec3& vector) : s(scalar), v(vector) {}
  explicit Multivector(Real scalar) : s(scalar), v(Vec3::Zero()) {}
  explicit Multivector(const Vec3& vector) : s(0), v(vector) {}

  Multivector operator+(const Multivector& o) const { return {s + o.s, Vec3(v + o.v)}; }
  Multivector operator-(const Multivector& o) const { return {s - o.s, Vec3(v - o.v)}; }
  Multivector operator-() const { return {-s, Vec3(-v)}; }

  friend Multivector operator*(Real k, const Multivector& x) { return {k * x.s, Vec3(k * x.v)}; }
  friend Multivector operator*(const Multivector& x, Real k) { return k * x; }
};

inline Multivector geometric_product(const Multivector& x, const Multivector& y) {
  return {x.s * y.s - x.v.dot(y.v), Vec3(x.s * y.v + y.s * x.v + x.v.cross(y.v))};
}

inline Multivector operator*(const Multivector& x, const Multivector& y) {
  return geometric_product(x, y);
}

inline Multivector conjugate(const Multivector& x) { return {x.s, Vec3(-x.v)}; }

inline Real norm_sq(const Multivector& x) { return x.s * x.s + x.v.squaredNorm(); }

inline Real norm(const Multivector& x) { return std::sqrt(norm_sq(x)); }

}  // namespace geopower
