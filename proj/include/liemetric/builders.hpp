#pragma once

// Convenience constructors for rotation elements used by built-in scenarios.

#include <liemetric/group.hpp>

#include <cmath>

namespace liemetric {

namespace detail {
inline Eigen::Vector3d unit_axis(const Eigen::Vector3d& axis) {
  if (!(axis.norm() > 1e-150))
    throw std::invalid_argument("rotation axis must be nonzero");
  return axis.normalized();
}
}  // namespace detail

/// SO(3) rotation about a (not necessarily unit) axis by the given angle.
inline GroupElement so3_rotation(const Eigen::Vector3d& axis, double angle) {
  const Eigen::Vector3d n = detail::unit_axis(axis);
  RMat k(3, 3);
  k << 0, -n.z(), n.y(), n.z(), 0, -n.x(), -n.y(), n.x(), 0;
  const RMat r = RMat::Identity(3, 3) + std::sin(angle) * k + (1.0 - std::cos(angle)) * (k * k);
  return make_group_element(r.cast<Complex>(), GroupKind::so(3));
}

inline GroupElement so3_rotation_x(double angle) {
  return so3_rotation(Eigen::Vector3d::UnitX(), angle);
}
inline GroupElement so3_rotation_y(double angle) {
  return so3_rotation(Eigen::Vector3d::UnitY(), angle);
}
inline GroupElement so3_rotation_z(double angle) {
  return so3_rotation(Eigen::Vector3d::UnitZ(), angle);
}

/// SU(2) element exp(-i angle/2 n.sigma); its operator norm equals |angle|
/// for angle in [0, pi].
inline GroupElement su2_rotation(const Eigen::Vector3d& axis, double angle) {
  const Eigen::Vector3d n = detail::unit_axis(axis);
  const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle);
  CMat m(2, 2);
  m(0, 0) = Complex(c, -s * n.z());
  m(0, 1) = Complex(-s * n.y(), -s * n.x());
  m(1, 0) = Complex(s * n.y(), -s * n.x());
  m(1, 1) = Complex(c, s * n.z());
  return make_group_element(std::move(m), GroupKind::su(2));
}

/// Diagonal su(d) element with the given eigenphases (must sum to ~0 mod 2pi).
inline GroupElement su_diagonal(const std::vector<double>& phases) {
  const int d = static_cast<int>(phases.size());
  CMat m = CMat::Zero(d, d);
  for (int j = 0; j < d; ++j) m(j, j) = std::exp(Complex(0.0, phases[j]));
  return make_group_element(std::move(m), GroupKind::su(d));
}

}  // namespace liemetric
