#include "gsar/recovery.hpp"

#include "gsar/rotation.hpp"

#include <stdexcept>

namespace gsar {

GsarRecovery recoverPoseGsar(const ReceivedFrame& rx, const BaseKnowledge& bk) {
    if (rx.kind != Framework::Gsar)
        throw std::invalid_argument("received frame is not a GSAR payload");
    const int joints = bk.restPose.size();
    if (rx.scalars.size() != static_cast<std::size_t>(joints) * 7)
        throw std::invalid_argument("GSAR scalar count mismatch");

    GsarRecovery out;
    out.pose.positions.resize(joints);
    out.pose.rotations.resize(joints);
    for (int i = 0; i < joints; ++i) {
        const double* s = rx.scalars.data() + static_cast<std::size_t>(i) * 7;
        out.pose.positions[i] = Vec3(s[0], s[1], s[2]);
        Quat q(s[6], s[3], s[4], s[5]); // w, x, y, z
        if (q.norm() < 1e-12) {
            q = Quat::Identity();
            ++out.zeroNormQuats;
        } else {
            q.normalize();
        }
        out.pose.rotations[i] = q;
    }
    return out;
}

Pose recoverPoseEgsar(const ReceivedFrame& rx, const BaseKnowledge& bk) {
    if (!usesEuler(rx.kind))
        throw std::invalid_argument("received frame is not an Euler payload");
    if (!bk.graph || !bk.avatarInitialPosition)
        throw std::invalid_argument("E-GSAR requires skeleton graph");
    const int joints = bk.graph->size();
    if (rx.scalars.size() != static_cast<std::size_t>(joints) * 3)
        throw std::invalid_argument("Euler scalar count mismatch");

    std::vector<EulerAngles> eulers(joints);
    for (int i = 0; i < joints; ++i) {
        const double* s = rx.scalars.data() + static_cast<std::size_t>(i) * 3;
        eulers[i] = {wrapDegrees(s[0]), wrapDegrees(s[1]), wrapDegrees(s[2])};
    }
    return forwardKinematics(*bk.graph, *bk.avatarInitialPosition, eulers);
}

PointCloud recoverSceneSemantic(const Pose& pose, const BaseKnowledge& bk) {
    PointCloud scene = skinPose(bk.avatarBinding, pose);
    scene.reserve(scene.size() + bk.stationaryCloud.size());
    for (const auto& p : bk.stationaryCloud)
        scene.push_back({p.pos + bk.stationaryPosition, p.rgb});
    return scene;
}

PointCloud recoverSceneBaseline(const PointCloud& receivedCloud, int upsampleTarget) {
    return upsampleInterpolate(receivedCloud, upsampleTarget);
}

} // namespace gsar
