#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsar/rng.hpp"
#include "gsar/rotation.hpp"

using namespace gsar;

namespace {
const double kSqrt2Half = std::sqrt(0.5);

Quat randomUnitQuat(Rng& rng) {
    Quat q(rng.normal(), rng.normal(), rng.normal(), rng.normal());
    q.normalize();
    return q;
}
} // namespace

TEST_CASE("identity quaternion decomposes to zero angles") {
    const auto e = quatToEuler(Quat::Identity());
    CHECK(e.pitch == doctest::Approx(0.0));
    CHECK(e.roll == doctest::Approx(0.0));
    CHECK(e.yaw == doctest::Approx(0.0));
}

TEST_CASE("90-degree x rotation gives pitch 90") {
    const auto e = quatToEuler(Quat(kSqrt2Half, kSqrt2Half, 0, 0)); // w, x, y, z
    CHECK(e.pitch == doctest::Approx(90.0));
    CHECK(e.roll == doctest::Approx(0.0));
    CHECK(e.yaw == doctest::Approx(0.0));
}

TEST_CASE("90-degree y rotation gives roll 90 with clamped arcsin") {
    const auto e = quatToEuler(Quat(kSqrt2Half, 0, kSqrt2Half, 0));
    CHECK(e.pitch == doctest::Approx(0.0));
    CHECK(e.roll == doctest::Approx(90.0));
    CHECK(e.yaw == doctest::Approx(0.0));
}

TEST_CASE("euler rotation basics") {
    CHECK(eulerToRotation({0, 0, 0}).isApprox(Mat3::Identity(), 1e-12));

    const Vec3 v = eulerToRotation({90, 0, 0}) * Vec3(0, 1, 0);
    CHECK(v.x() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(v.y() == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(v.z() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("quat->euler->rotation round-trips away from gimbal lock") {
    Rng rng(42);
    int tested = 0;
    while (tested < 1000) {
        const Quat q = randomUnitQuat(rng);
        const double arg = 2.0 * (q.w() * q.y() - q.x() * q.z());
        if (std::abs(arg) >= 0.99) continue;
        ++tested;
        const Mat3 viaEuler = eulerToRotation(quatToEuler(q));
        const Mat3 direct = q.toRotationMatrix(); // oracle
        CHECK((viaEuler - direct).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("euler rotations are orthonormal with determinant +1") {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const EulerAngles e{rng.uniform(-180, 180), rng.uniform(-180, 180),
                            rng.uniform(-180, 180)};
        const Mat3 r = eulerToRotation(e);
        CHECK((r * r.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("degree wrapping lands in [-180, 180]") {
    CHECK(wrapDegrees(0.0) == doctest::Approx(0.0));
    CHECK(wrapDegrees(190.0) == doctest::Approx(-170.0));
    CHECK(wrapDegrees(-190.0) == doctest::Approx(170.0));
    CHECK(wrapDegrees(720.0) == doctest::Approx(0.0));
    CHECK(wrapDegrees(539.0) == doctest::Approx(179.0));
    Rng rng(3);
    for (int i = 0; i < 500; ++i) {
        const double w = wrapDegrees(rng.uniform(-2000, 2000));
        CHECK(w >= -180.0);
        CHECK(w <= 180.0);
    }
}
