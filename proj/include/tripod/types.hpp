#pragma once

#include <complex>

#include <Eigen/Dense>

namespace tripod {

using cd = std::complex<double>;

using Vec2 = Eigen::Vector2d;
using Mat2c = Eigen::Matrix2cd;
using Vec3c = Eigen::Vector3cd;
using Vec5c = Eigen::Matrix<cd, 5, 1>;
using Mat5c = Eigen::Matrix<cd, 5, 5>;

/// Cartesian pair of 2x2 matrices, e.g. the two components of a
/// matrix-valued vector potential.
struct MatrixVector2 {
  Mat2c x = Mat2c::Zero();
  Mat2c y = Mat2c::Zero();

  const Mat2c& operator[](int axis) const { return axis == 0 ? x : y; }
  Mat2c& operator[](int axis) { return axis == 0 ? x : y; }
};

inline const Mat2c& pauli_x() {
  static const Mat2c m = (Mat2c() << 0, 1, 1, 0).finished();
  return m;
}
inline const Mat2c& pauli_y() {
  static const Mat2c m = (Mat2c() << 0, cd(0, -1), cd(0, 1), 0).finished();
  return m;
}
inline const Mat2c& pauli_z() {
  static const Mat2c m = (Mat2c() << 1, 0, 0, -1).finished();
  return m;
}

}  // namespace tripod
