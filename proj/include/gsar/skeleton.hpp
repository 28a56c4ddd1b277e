#pragma once

#include "gsar/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gsar {

struct SkeletonNode {
    int id = 0;
    std::optional<int> parent;
    /// Offset from the parent joint in the rest pose, meters. For the root
    /// this holds the avatar's initial position anchor instead of a bone.
    Vec3 restOffset = Vec3::Zero();
};

/// Joint tree of the avatar. Node index equals node id; edges are implied by
/// the parent links.
struct SkeletonGraph {
    std::vector<SkeletonNode> nodes;

    int size() const { return static_cast<int>(nodes.size()); }
};

/// Checks single root, acyclicity, connectivity, id consistency and positive
/// bone lengths. Returns the list of violations; empty means valid.
std::vector<std::string> validateGraph(const SkeletonGraph& graph);

/// Root node index; graph must have exactly one root.
int rootIndex(const SkeletonGraph& graph);

/// Parent-before-child ordering starting at the root.
std::vector<int> topologicalOrder(const SkeletonGraph& graph);

/// Sum of bone lengths on the root-to-node path, per node.
std::vector<double> pathBoneLengths(const SkeletonGraph& graph);

/// Radius of the root-anchored sphere that bounds every reachable joint.
double reachRadius(const SkeletonGraph& graph);

/// Node degrees in the undirected joint tree.
std::vector<int> nodeDegrees(const SkeletonGraph& graph);

struct Pose {
    std::vector<Vec3> positions;  // world, meters
    std::vector<Quat> rotations;  // world orientation per joint

    int size() const { return static_cast<int>(positions.size()); }
};

/// Places every joint from per-node orientations: the root sits at rootPos and
/// each child at parent + R(e_i) * restOffset_i, walking the tree top-down.
/// Each entry of `eulers` is the node's absolute (root-composed) orientation,
/// so bone lengths are preserved exactly for any input. Throws on an invalid
/// graph (cycles, multiple roots, ...).
Pose forwardKinematics(const SkeletonGraph& graph, const Vec3& rootPos,
                       std::span<const EulerAngles> eulers);

/// Rest pose: zero rotations, root at the graph's anchor (root restOffset).
Pose restPose(const SkeletonGraph& graph);

struct AnimationTrace {
    double fps = 60.0;
    std::vector<Pose> frames;
};

struct TraceStats {
    std::array<double, 3> minDisp{};         // per-axis min |l_t - l_{t-1}|
    std::array<double, 3> maxDisp{};         // per-axis max |l_t - l_{t-1}|
    std::array<std::vector<int>, 3> histogram;
    std::array<double, 3> binWidth{};
};

/// Per-axis adjacent-frame displacement extrema and histograms over all joints
/// and transitions. Throws "insufficient frames" on traces shorter than 2.
TraceStats traceStats(const AnimationTrace& trace, int bins = 32);

} // namespace gsar
