#include "gsar/rotation.hpp"

#include <algorithm>
#include <cmath>

namespace gsar {

double wrapDegrees(double deg) {
    double w = deg - 360.0 * std::round(deg / 360.0);
    if (w < -180.0) w += 360.0;
    if (w > 180.0) w -= 360.0;
    return w;
}

EulerAngles quatToEuler(const Quat& q) {
    const double x = q.x(), y = q.y(), z = q.z(), w = q.w();
    // Both arctangent arguments vanish together only at gimbal lock; resolve
    // that point the way atan2(0, +0) = 0 would in exact arithmetic.
    const auto arctan = [](double a, double b) {
        if (std::abs(a) < 1e-12 && std::abs(b) < 1e-12) return 0.0;
        return std::atan2(a, b);
    };
    const double sp = 2.0 * (y * z + w * x);
    const double cp = 1.0 - 2.0 * (x * x + y * y);
    const double sr = std::clamp(2.0 * (w * y - x * z), -1.0, 1.0);
    const double sy = 2.0 * (x * y + w * z);
    const double cy = 1.0 - 2.0 * (y * y + z * z);
    return {rad2deg(arctan(sp, cp)), rad2deg(std::asin(sr)), rad2deg(arctan(sy, cy))};
}

Mat3 eulerToRotation(const EulerAngles& e) {
    const Eigen::AngleAxisd rx(deg2rad(e.pitch), Vec3::UnitX());
    const Eigen::AngleAxisd ry(deg2rad(e.roll), Vec3::UnitY());
    const Eigen::AngleAxisd rz(deg2rad(e.yaw), Vec3::UnitZ());
    return (rz * ry * rx).toRotationMatrix();
}

Quat eulerToQuat(const EulerAngles& e) {
    return Quat(eulerToRotation(e)).normalized();
}

} // namespace gsar
