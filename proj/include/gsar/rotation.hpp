#pragma once

#include "gsar/types.hpp"

namespace gsar {

constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

/// Wraps an angle in degrees into [-180, 180].
double wrapDegrees(double deg);

/// Decomposes a unit quaternion into Euler angles in degrees:
///   pitch = atan2(2(yz + wx), 1 - 2(x^2 + y^2))
///   roll  = asin(2(wy - xz)), argument clamped to [-1, 1]
///   yaw   = atan2(2(xy + wz), 1 - 2(y^2 + z^2))
EulerAngles quatToEuler(const Quat& q);

/// Rotation matrix for Euler angles, composed as Rz(yaw) * Ry(roll) * Rx(pitch)
/// -- the inverse of quatToEuler's decomposition, so the pair round-trips.
Mat3 eulerToRotation(const EulerAngles& e);

Quat eulerToQuat(const EulerAngles& e);

} // namespace gsar
