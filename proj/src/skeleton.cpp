#include "gsar/skeleton.hpp"

#include "gsar/rotation.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gsar {

std::vector<std::string> validateGraph(const SkeletonGraph& graph) {
    std::vector<std::string> violations;
    const int n = graph.size();
    if (n == 0) {
        violations.push_back("empty graph");
        return violations;
    }

    int roots = 0;
    for (int i = 0; i < n; ++i) {
        const auto& node = graph.nodes[i];
        if (node.id != i)
            violations.push_back("node id " + std::to_string(node.id) + " does not match index " +
                                 std::to_string(i));
        if (!node.restOffset.allFinite())
            violations.push_back("non-finite rest offset at node " + std::to_string(i));
        if (!node.parent) {
            ++roots;
        } else {
            const int p = *node.parent;
            if (p < 0 || p >= n)
                violations.push_back("parent of node " + std::to_string(i) + " out of range");
            else if (p == i)
                violations.push_back("node " + std::to_string(i) + " is its own parent");
            if (node.restOffset.norm() <= 0.0)
                violations.push_back("zero-length bone at node " + std::to_string(i));
        }
    }
    if (roots == 0) violations.push_back("no root");
    if (roots > 1) violations.push_back("multiple roots");

    // Cycle detection: follow parent chains, marking the pass each node was
    // first seen in. A chain revisiting a node from the same pass is a cycle.
    std::vector<int> seenPass(n, -1);
    for (int i = 0; i < n; ++i) {
        int cur = i;
        while (cur >= 0 && seenPass[cur] == -1) {
            seenPass[cur] = i;
            const auto& p = graph.nodes[cur].parent;
            if (!p || *p < 0 || *p >= n) break;
            cur = *p;
            if (seenPass[cur] == i) {
                violations.push_back("cycle involving node " + std::to_string(cur));
                break;
            }
        }
    }

    // With one root and no cycles every chain ends at the root, so
    // connectivity only needs an explicit check when those hold.
    if (roots == 1 && violations.empty()) {
        const int r = rootIndex(graph);
        for (int i = 0; i < n; ++i) {
            int cur = i;
            int steps = 0;
            while (graph.nodes[cur].parent && steps++ <= n) cur = *graph.nodes[cur].parent;
            if (cur != r) {
                violations.push_back("node " + std::to_string(i) + " not connected to root");
                break;
            }
        }
    }
    return violations;
}

int rootIndex(const SkeletonGraph& graph) {
    for (int i = 0; i < graph.size(); ++i)
        if (!graph.nodes[i].parent) return i;
    throw std::invalid_argument("skeleton graph has no root");
}

std::vector<int> topologicalOrder(const SkeletonGraph& graph) {
    const int n = graph.size();
    std::vector<std::vector<int>> children(n);
    int root = -1;
    for (int i = 0; i < n; ++i) {
        if (graph.nodes[i].parent)
            children[*graph.nodes[i].parent].push_back(i);
        else
            root = i;
    }
    std::vector<int> order;
    order.reserve(n);
    std::vector<int> stack{root};
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        order.push_back(cur);
        for (auto it = children[cur].rbegin(); it != children[cur].rend(); ++it)
            stack.push_back(*it);
    }
    if (static_cast<int>(order.size()) != n)
        throw std::invalid_argument("skeleton graph is not a connected tree");
    return order;
}

std::vector<double> pathBoneLengths(const SkeletonGraph& graph) {
    std::vector<double> len(graph.size(), 0.0);
    for (int i : topologicalOrder(graph)) {
        const auto& p = graph.nodes[i].parent;
        if (p) len[i] = len[*p] + graph.nodes[i].restOffset.norm();
    }
    return len;
}

double reachRadius(const SkeletonGraph& graph) {
    const auto len = pathBoneLengths(graph);
    return *std::max_element(len.begin(), len.end());
}

std::vector<int> nodeDegrees(const SkeletonGraph& graph) {
    std::vector<int> deg(graph.size(), 0);
    for (const auto& node : graph.nodes) {
        if (node.parent) {
            ++deg[node.id];
            ++deg[*node.parent];
        }
    }
    return deg;
}

Pose forwardKinematics(const SkeletonGraph& graph, const Vec3& rootPos,
                       std::span<const EulerAngles> eulers) {
    const auto violations = validateGraph(graph);
    if (!violations.empty()) {
        std::ostringstream oss;
        oss << "invalid skeleton graph:";
        for (const auto& v : violations) oss << " " << v << ";";
        throw std::invalid_argument(oss.str());
    }
    if (static_cast<int>(eulers.size()) != graph.size())
        throw std::invalid_argument("euler count does not match skeleton size");

    Pose pose;
    pose.positions.resize(graph.size());
    pose.rotations.resize(graph.size());
    for (int i : topologicalOrder(graph)) {
        const Mat3 rot = eulerToRotation(eulers[i]);
        pose.rotations[i] = Quat(rot).normalized();
        const auto& parent = graph.nodes[i].parent;
        if (!parent)
            pose.positions[i] = rootPos;
        else
            pose.positions[i] = pose.positions[*parent] + rot * graph.nodes[i].restOffset;
    }
    return pose;
}

Pose restPose(const SkeletonGraph& graph) {
    std::vector<EulerAngles> zeros(graph.size());
    return forwardKinematics(graph, graph.nodes[rootIndex(graph)].restOffset, zeros);
}

TraceStats traceStats(const AnimationTrace& trace, int bins) {
    if (trace.frames.size() < 2) throw std::invalid_argument("insufficient frames");
    if (bins < 1) throw std::invalid_argument("bins must be positive");

    TraceStats stats;
    std::array<std::vector<double>, 3> disp;
    const int joints = trace.frames.front().size();
    for (size_t t = 1; t < trace.frames.size(); ++t) {
        if (trace.frames[t].size() != joints)
            throw std::invalid_argument("joint count varies across frames");
        for (int j = 0; j < joints; ++j) {
            const Vec3 d = trace.frames[t].positions[j] - trace.frames[t - 1].positions[j];
            for (int a = 0; a < 3; ++a) disp[a].push_back(std::abs(d[a]));
        }
    }
    for (int a = 0; a < 3; ++a) {
        const auto [mn, mx] = std::minmax_element(disp[a].begin(), disp[a].end());
        stats.minDisp[a] = *mn;
        stats.maxDisp[a] = *mx;
        stats.histogram[a].assign(bins, 0);
        stats.binWidth[a] = stats.maxDisp[a] > 0 ? stats.maxDisp[a] / bins : 0.0;
        for (double v : disp[a]) {
            int b = stats.binWidth[a] > 0 ? static_cast<int>(v / stats.binWidth[a]) : 0;
            if (b >= bins) b = bins - 1;
            ++stats.histogram[a][b];
        }
    }
    return stats;
}

} // namespace gsar
