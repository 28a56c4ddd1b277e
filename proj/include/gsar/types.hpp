#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

namespace gsar {

template <typename T> using Vec3T = Eigen::Matrix<T, 3, 1>;
template <typename T> using QuatT = Eigen::Quaternion<T>;
template <typename T> using Mat3T = Eigen::Matrix<T, 3, 3>;
template <typename T> using VectorX = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using Vec3 = Vec3T<double>;
using Quat = QuatT<double>;
using Mat3 = Mat3T<double>;

/// Euler angles in degrees. `pitch` rotates about x, `roll` about y,
/// `yaw` about z; composition order is fixed project-wide (see rotation.hpp).
struct EulerAngles {
    double pitch = 0.0;
    double roll = 0.0;
    double yaw = 0.0;
};

using Rgb = std::array<std::uint8_t, 3>;

} // namespace gsar
