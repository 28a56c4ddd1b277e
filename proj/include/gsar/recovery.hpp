#pragma once

#include "gsar/base_knowledge.hpp"

namespace gsar {

/// Dequantized per-frame payload on the receiver side, possibly corrupted.
struct ReceivedFrame {
    Framework kind = Framework::Gsar;
    std::vector<double> scalars; // matches semanticLayout(kind, joints)
    int clampCount = 0;
    int sanitizedCount = 0;

    int joints() const {
        return static_cast<int>(scalars.size() / (usesEuler(kind) ? 3u : 7u));
    }
};

struct GsarRecovery {
    Pose pose;
    int zeroNormQuats = 0; // quaternions replaced by the identity rotation
};

/// Direct attach: joint positions and rotations come straight from the
/// received values. Quaternions are renormalized (zero norm -> identity) and
/// no reachability constraint is applied.
GsarRecovery recoverPoseGsar(const ReceivedFrame& rx, const BaseKnowledge& bk);

/// Euler recovery: wraps angles into [-180, 180] and rebuilds every joint by
/// forward kinematics from the base-knowledge graph and initial position, so
/// each joint stays within skeleton reach regardless of corruption.
Pose recoverPoseEgsar(const ReceivedFrame& rx, const BaseKnowledge& bk);

/// Skins the recovered pose and merges the stationary model at its initial
/// position; colors come from base knowledge, never from the channel.
PointCloud recoverSceneSemantic(const Pose& pose, const BaseKnowledge& bk);

/// Point-cloud baseline: interpolation upsampling of the received cloud.
PointCloud recoverSceneBaseline(const PointCloud& receivedCloud, int upsampleTarget);

} // namespace gsar
