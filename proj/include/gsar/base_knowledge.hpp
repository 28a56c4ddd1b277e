#pragma once

#include "gsar/pointcloud.hpp"
#include "gsar/semantics.hpp"

#include <optional>
#include <string>

namespace gsar {

/// Assets shared once before streaming. The GSAR variant carries the avatar
/// and stationary models with their appearance bindings; the Euler variants
/// additionally carry the skeleton graph and the avatar initial position,
/// which the GSAR variant must not rely on.
struct BaseKnowledge {
    Framework framework = Framework::Gsar;
    SkinBinding avatarBinding;        // avatar appearance, rigidly bound
    Pose restPose;                    // avatar model rest state
    PointCloud stationaryCloud;       // stationary model, local coordinates
    Vec3 stationaryPosition = Vec3::Zero();
    std::optional<SkeletonGraph> graph;          // E-GSAR / EC-GSAR only
    std::optional<Vec3> avatarInitialPosition;   // E-GSAR / EC-GSAR only
};

BaseKnowledge buildBaseKnowledge(Framework framework, const SkeletonGraph& graph,
                                 const SkinBinding& binding, const Pose& rest,
                                 const Vec3& avatarInitial, const PointCloud& stationary,
                                 const Vec3& stationaryPosition);

/// JSON bundle with the stationary cloud stored as a sibling PLY file.
void writeBaseKnowledge(const BaseKnowledge& bk, const std::string& jsonPath);
BaseKnowledge readBaseKnowledge(const std::string& jsonPath);

} // namespace gsar
