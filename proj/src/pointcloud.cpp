#include "gsar/pointcloud.hpp"

#include "gsar/nearest.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gsar {

namespace {

double distToSegment2(const Vec3& p, const Vec3& a, const Vec3& b) {
    const Vec3 ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 <= 0.0) return (p - a).squaredNorm();
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return (p - (a + t * ab)).squaredNorm();
}

} // namespace

SkinBinding bindToBones(const PointCloud& restCloud, const SkeletonGraph& graph,
                        const Pose& rest) {
    if (rest.size() != graph.size())
        throw std::invalid_argument("rest pose does not match skeleton size");
    SkinBinding binding;
    binding.points.reserve(restCloud.size());
    for (const auto& pt : restCloud) {
        int bestNode = -1;
        double bestD2 = std::numeric_limits<double>::infinity();
        for (int i = 0; i < graph.size(); ++i) {
            const auto& parent = graph.nodes[i].parent;
            const Vec3& end = rest.positions[i];
            const Vec3& start = parent ? rest.positions[*parent] : end;
            const double d2 = distToSegment2(pt.pos, start, end);
            if (d2 < bestD2) {
                bestD2 = d2;
                bestNode = i;
            }
        }
        binding.points.push_back({bestNode, pt.pos - rest.positions[bestNode], pt.rgb});
    }
    return binding;
}

PointCloud skinPose(const SkinBinding& binding, const Pose& pose) {
    PointCloud out;
    out.reserve(binding.points.size());
    for (const auto& bp : binding.points) {
        if (bp.node < 0 || bp.node >= pose.size())
            throw std::invalid_argument("binding references unknown node " +
                                        std::to_string(bp.node));
        out.push_back({pose.positions[bp.node] + pose.rotations[bp.node] * bp.offset, bp.rgb});
    }
    return out;
}

std::vector<int> fpsDownsampleIndices(const PointCloud& cloud, int target, int startIndex) {
    const int n = static_cast<int>(cloud.size());
    if (target < 1) throw std::invalid_argument("fps target must be at least 1");
    if (target > n) throw std::invalid_argument("fps target exceeds cloud size");
    if (startIndex < 0 || startIndex >= n)
        throw std::invalid_argument("fps start index out of range");

    std::vector<int> selected;
    selected.reserve(target);
    selected.push_back(startIndex);
    std::vector<double> minD2(n);
    for (int i = 0; i < n; ++i)
        minD2[i] = (cloud[i].pos - cloud[startIndex].pos).squaredNorm();
    minD2[startIndex] = -1.0; // selected markers can never win again

    while (static_cast<int>(selected.size()) < target) {
        int bestIdx = -1;
        double bestD2 = -1.0;
        for (int i = 0; i < n; ++i) {
            if (minD2[i] > bestD2) {
                bestD2 = minD2[i];
                bestIdx = i;
            }
        }
        selected.push_back(bestIdx);
        minD2[bestIdx] = -1.0;
        const Vec3& np = cloud[bestIdx].pos;
        for (int i = 0; i < n; ++i) {
            if (minD2[i] < 0) continue;
            const double d2 = (cloud[i].pos - np).squaredNorm();
            if (d2 < minD2[i]) minD2[i] = d2;
        }
    }
    return selected;
}

PointCloud fpsDownsample(const PointCloud& cloud, int target, int startIndex) {
    PointCloud out;
    out.reserve(target);
    for (int i : fpsDownsampleIndices(cloud, target, startIndex)) out.push_back(cloud[i]);
    return out;
}

PointCloud upsampleInterpolate(const PointCloud& cloud, int target) {
    const int n = static_cast<int>(cloud.size());
    if (n < 2) throw std::invalid_argument("upsampling needs at least 2 points");
    if (target < n) throw std::invalid_argument("upsample target below cloud size");

    PointCloud out = cloud;
    out.reserve(target);
    std::vector<Vec3> positions;
    positions.reserve(target);
    for (const auto& p : cloud) positions.push_back(p.pos);
    GridIndex grid(positions);

    int cursor = 0;
    while (static_cast<int>(out.size()) < target) {
        const int src = cursor % n;
        ++cursor;
        const auto hit = grid.nearest(out[src].pos, src);
        const auto& a = out[src];
        const auto& b = out[hit.index];
        Point mid;
        mid.pos = 0.5 * (a.pos + b.pos);
        for (int c = 0; c < 3; ++c)
            mid.rgb[c] = static_cast<std::uint8_t>((static_cast<int>(a.rgb[c]) +
                                                    static_cast<int>(b.rgb[c]) + 1) /
                                                   2);
        out.push_back(mid);
        grid.insert(mid.pos);
    }
    return out;
}

} // namespace gsar
