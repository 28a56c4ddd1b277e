#pragma once

#include "gsar/skeleton.hpp"
#include "gsar/types.hpp"

#include <vector>

namespace gsar {

struct Point {
    Vec3 pos = Vec3::Zero();
    Rgb rgb{0, 0, 0};
};

inline bool operator==(const Point& a, const Point& b) {
    return a.pos.x() == b.pos.x() && a.pos.y() == b.pos.y() && a.pos.z() == b.pos.z() &&
           a.rgb == b.rgb;
}

using PointCloud = std::vector<Point>;

struct BoundPoint {
    int node = 0;   // skeleton node the point rides on
    Vec3 offset;    // rest-pose offset from that node, identity frame
    Rgb rgb{0, 0, 0};
};

/// Rigid per-point attachment of an appearance cloud to the skeleton,
/// computed once in the rest pose.
struct SkinBinding {
    std::vector<BoundPoint> points;
};

/// Binds each point to the nearest bone segment in the rest pose (each
/// non-root node owns the segment from its parent; the root owns its own
/// position). Ties break to the lower node id.
SkinBinding bindToBones(const PointCloud& restCloud, const SkeletonGraph& graph,
                        const Pose& rest);

/// Places every bound point at node position + node rotation * offset.
PointCloud skinPose(const SkinBinding& binding, const Pose& pose);

/// Farthest point sampling: greedy max-min selection starting at startIndex,
/// ties broken to the lowest index. Output preserves selection order.
std::vector<int> fpsDownsampleIndices(const PointCloud& cloud, int target, int startIndex = 0);
PointCloud fpsDownsample(const PointCloud& cloud, int target, int startIndex = 0);

/// Grows the cloud to `target` points by cycling over the original points in
/// index order and emitting the midpoint between each and its nearest
/// neighbour in the cloud built so far. Colors average per channel, rounded
/// half up. Output is the original points followed by the generated ones.
PointCloud upsampleInterpolate(const PointCloud& cloud, int target);

} // namespace gsar
