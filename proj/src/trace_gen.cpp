#include "gsar/trace_gen.hpp"

#include "gsar/rng.hpp"
#include "gsar/rotation.hpp"

#include <cmath>
#include <stdexcept>

namespace gsar {

TraceKind parseTraceKind(const std::string& name) {
    if (name == "upper_body") return TraceKind::UpperBody;
    if (name == "slight_shaking") return TraceKind::SlightShaking;
    if (name == "full_body") return TraceKind::FullBody;
    throw std::invalid_argument("unknown trace kind '" + name +
                                "' (upper_body | slight_shaking | full_body)");
}

const char* traceKindName(TraceKind kind) {
    switch (kind) {
        case TraceKind::UpperBody: return "upper_body";
        case TraceKind::SlightShaking: return "slight_shaking";
        case TraceKind::FullBody: return "full_body";
    }
    return "?";
}

SkeletonGraph defaultSkeleton25() {
    SkeletonGraph g;
    const auto add = [&](int id, std::optional<int> parent, double x, double y, double z) {
        g.nodes.push_back({id, parent, Vec3(x, y, z)});
    };
    add(0, std::nullopt, 0.0, 0.78, 0.0); // hips; offset anchors standing height
    add(1, 0, 0.0, 0.12, 0.0);            // spine
    add(2, 1, 0.0, 0.12, 0.0);            // spine1
    add(3, 2, 0.0, 0.12, 0.0);            // spine2
    add(4, 3, 0.0, 0.10, 0.0);            // neck
    add(5, 4, 0.0, 0.09, 0.0);            // head
    add(6, 5, 0.0, 0.15, 0.0);            // head top
    add(7, 3, 0.08, 0.05, 0.0);           // left shoulder
    add(8, 7, 0.12, 0.0, 0.0);            // left arm
    add(9, 8, 0.26, 0.0, 0.0);            // left forearm
    add(10, 9, 0.25, 0.0, 0.0);           // left hand
    add(11, 10, 0.09, 0.0, 0.0);          // left hand tip
    add(12, 3, -0.08, 0.05, 0.0);         // right shoulder
    add(13, 12, -0.12, 0.0, 0.0);         // right arm
    add(14, 13, -0.26, 0.0, 0.0);         // right forearm
    add(15, 14, -0.25, 0.0, 0.0);         // right hand
    add(16, 15, -0.09, 0.0, 0.0);         // right hand tip
    add(17, 0, 0.09, -0.06, 0.0);         // left up leg
    add(18, 17, 0.0, -0.42, 0.0);         // left leg
    add(19, 18, 0.0, -0.40, 0.0);         // left foot
    add(20, 19, 0.0, -0.07, 0.14);        // left toe
    add(21, 0, -0.09, -0.06, 0.0);        // right up leg
    add(22, 21, 0.0, -0.42, 0.0);         // right leg
    add(23, 22, 0.0, -0.40, 0.0);         // right foot
    add(24, 23, 0.0, -0.07, 0.14);        // right toe
    return g;
}

namespace {

struct JointMotion {
    std::array<double, 3> amp{};   // degrees per axis
    std::array<double, 3> freq{};  // Hz
    std::array<double, 3> phase{};
};

struct KindParams {
    double maxAmpDeg;
    double freqLo, freqHi;
    bool upperOnly;
    double rootAmpDeg;
};

KindParams kindParams(TraceKind kind) {
    switch (kind) {
        case TraceKind::UpperBody: return {22.0, 0.3, 1.2, true, 0.0};
        case TraceKind::SlightShaking: return {2.5, 0.3, 1.5, false, 0.0};
        case TraceKind::FullBody: return {28.0, 0.3, 1.3, false, 8.0};
    }
    throw std::logic_error("unknown trace kind");
}

bool upperBodyJoint(int id) { return id >= 3 && id <= 16; }

} // namespace

AnimationTrace genTrace(TraceKind kind, int frames, std::uint64_t seed,
                        const SkeletonGraph& graph, double fps) {
    if (frames < 2) throw std::invalid_argument("trace needs at least 2 frames");
    const auto violations = validateGraph(graph);
    if (!violations.empty()) throw std::invalid_argument("invalid skeleton graph");

    const KindParams params = kindParams(kind);
    const int n = graph.size();
    Rng rng(deriveSeed(seed, 0x7472, static_cast<std::uint64_t>(kind)));

    std::vector<JointMotion> motion(n);
    for (int i = 0; i < n; ++i) {
        double amp = params.maxAmpDeg;
        if (i == rootIndex(graph)) amp = params.rootAmpDeg;
        if (params.upperOnly && !upperBodyJoint(i) && i != rootIndex(graph)) amp = 0.0;
        for (int a = 0; a < 3; ++a) {
            motion[i].amp[a] = amp * rng.uniform(0.4, 1.0);
            motion[i].freq[a] = rng.uniform(params.freqLo, params.freqHi);
            motion[i].phase[a] = rng.uniform(0.0, 2.0 * kPi);
        }
    }

    const auto order = topologicalOrder(graph);
    const Vec3 anchor = graph.nodes[rootIndex(graph)].restOffset;

    AnimationTrace trace;
    trace.fps = fps;
    trace.frames.reserve(frames);
    std::vector<Mat3> world(n);
    for (int f = 0; f < frames; ++f) {
        const double t = static_cast<double>(f) / fps;
        Pose pose;
        pose.positions.resize(n);
        pose.rotations.resize(n);
        for (int i : order) {
            EulerAngles local;
            local.pitch = motion[i].amp[0] * std::sin(2.0 * kPi * motion[i].freq[0] * t +
                                                      motion[i].phase[0]);
            local.roll = motion[i].amp[1] * std::sin(2.0 * kPi * motion[i].freq[1] * t +
                                                     motion[i].phase[1]);
            local.yaw = motion[i].amp[2] * std::sin(2.0 * kPi * motion[i].freq[2] * t +
                                                    motion[i].phase[2]);
            const Mat3 localRot = eulerToRotation(local);
            const auto& parent = graph.nodes[i].parent;
            world[i] = parent ? Mat3(world[*parent] * localRot) : localRot;
            pose.rotations[i] = Quat(world[i]).normalized();
            pose.positions[i] =
                parent ? Vec3(pose.positions[*parent] + world[i] * graph.nodes[i].restOffset)
                       : anchor;
        }
        trace.frames.push_back(std::move(pose));
    }
    return trace;
}

AnimationTrace genTrace(TraceKind kind, int frames, std::uint64_t seed) {
    return genTrace(kind, frames, seed, defaultSkeleton25());
}

namespace {

// Near-constant-luminance palette (BT.601 luma about 147..153) so received
// color fidelity is dominated by what the channel does to the color bits,
// not by which body part a nearest-neighbour match lands on.
constexpr std::array<Rgb, 8> kPalette{{{190, 135, 140},
                                       {130, 165, 120},
                                       {155, 140, 200},
                                       {180, 150, 95},
                                       {120, 160, 170},
                                       {205, 125, 115},
                                       {110, 170, 130},
                                       {165, 145, 160}}};

constexpr double kGoldenAngle = 2.39996322972865332;

void orthonormalBasis(const Vec3& dir, Vec3& u, Vec3& v) {
    const Vec3 axis = std::abs(dir.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    u = dir.cross(axis).normalized();
    v = dir.cross(u).normalized();
}

} // namespace

PointCloud avatarRestCloud(const SkeletonGraph& graph, const Pose& rest, int count) {
    const int n = graph.size();
    if (count < 2 * n) throw std::invalid_argument("avatar cloud needs at least 2 points per joint");

    PointCloud cloud;
    cloud.reserve(count);
    // One marker point per joint; they ride exactly on the joint in any pose.
    for (int i = 0; i < n; ++i)
        cloud.push_back({rest.positions[i], kPalette[i % kPalette.size()]});

    double totalLen = 0.0;
    for (const auto& node : graph.nodes)
        if (node.parent) totalLen += node.restOffset.norm();

    const int ringPoints = count - n;
    int emitted = 0;
    std::vector<std::pair<int, int>> boneCounts; // node id, points
    for (const auto& node : graph.nodes) {
        if (!node.parent) continue;
        const double len = node.restOffset.norm();
        int share = static_cast<int>(std::floor(ringPoints * len / totalLen));
        boneCounts.emplace_back(node.id, share);
        emitted += share;
    }
    for (std::size_t i = 0; emitted < ringPoints; ++i, ++emitted)
        ++boneCounts[i % boneCounts.size()].second;

    for (const auto& [nodeId, points] : boneCounts) {
        const auto& node = graph.nodes[nodeId];
        const Vec3 a = rest.positions[*node.parent];
        const Vec3 b = rest.positions[nodeId];
        const Vec3 dir = (b - a).normalized();
        Vec3 u, v;
        orthonormalBasis(dir, u, v);
        const double len = (b - a).norm();
        const double radius = std::clamp(0.16 * len, 0.015, 0.055);
        const Rgb color = kPalette[nodeId % kPalette.size()];
        for (int i = 0; i < points; ++i) {
            const double t = (i + 0.5) / points;
            const double ang = i * kGoldenAngle + nodeId * 0.7;
            const Vec3 p = a + t * (b - a) + radius * (std::cos(ang) * u + std::sin(ang) * v);
            cloud.push_back({p, color});
        }
    }
    return cloud;
}

PointCloud stationaryModelCloud(int count) {
    if (count < 2) throw std::invalid_argument("stationary cloud needs at least 2 points");
    PointCloud cloud;
    cloud.reserve(count);
    const int floorPoints = count * 55 / 100;
    const Rgb floorColor{140, 145, 160};
    const Rgb wallColor{160, 145, 135};

    // Stage disc in the local y=0 plane, golden-angle spiral.
    for (int i = 0; i < floorPoints; ++i) {
        const double r = 1.7 * std::sqrt((i + 0.5) / floorPoints);
        const double ang = i * kGoldenAngle;
        cloud.push_back({Vec3(r * std::cos(ang), 0.0, r * std::sin(ang)), floorColor});
    }
    // Back wall arc behind the avatar.
    const int wallPoints = count - floorPoints;
    const int rows = std::max(2, static_cast<int>(std::sqrt(wallPoints / 3.0)));
    const int cols = (wallPoints + rows - 1) / rows;
    int emitted = 0;
    for (int r = 0; r < rows && emitted < wallPoints; ++r) {
        for (int c = 0; c < cols && emitted < wallPoints; ++c, ++emitted) {
            const double ang = kPi * (0.6 + 0.8 * (c + 0.5) / cols); // arc span
            const double y = 1.25 * (r + 0.5) / rows;
            cloud.push_back(
                {Vec3(1.85 * std::cos(ang), y, 1.85 * std::sin(ang)), wallColor});
        }
    }
    return cloud;
}

} // namespace gsar
