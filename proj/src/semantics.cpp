#include "gsar/semantics.hpp"

#include "gsar/rotation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gsar {

const char* frameworkName(Framework f) {
    switch (f) {
        case Framework::PointCloud: return "pointcloud";
        case Framework::Gsar: return "gsar";
        case Framework::Egsar: return "egsar";
        case Framework::Ecgsar: return "ecgsar";
    }
    return "?";
}

Framework parseFramework(const std::string& name) {
    if (name == "pointcloud") return Framework::PointCloud;
    if (name == "gsar") return Framework::Gsar;
    if (name == "egsar") return Framework::Egsar;
    if (name == "ecgsar") return Framework::Ecgsar;
    throw std::invalid_argument("unknown framework '" + name +
                                "' (pointcloud | gsar | egsar | ecgsar)");
}

SemanticFrame extractSemantics(const Pose& pose, Framework framework) {
    if (!isSemantic(framework))
        throw std::invalid_argument("point-cloud baseline has no semantic extraction");
    SemanticFrame frame;
    frame.kind = framework;
    if (usesEuler(framework)) {
        frame.eulers.reserve(pose.size());
        for (const auto& q : pose.rotations) frame.eulers.push_back(quatToEuler(q.normalized()));
    } else {
        frame.positions = pose.positions;
        frame.rotations.reserve(pose.size());
        for (const auto& q : pose.rotations) frame.rotations.push_back(q.normalized());
    }
    return frame;
}

PayloadLayout semanticLayout(Framework framework, int joints) {
    PayloadLayout layout;
    layout.items = joints;
    if (usesEuler(framework)) {
        layout.fields = {Field::EulerDeg, Field::EulerDeg, Field::EulerDeg};
    } else {
        layout.fields = {Field::Position, Field::Position, Field::Position,
                         Field::QuatComponent, Field::QuatComponent, Field::QuatComponent,
                         Field::QuatComponent};
    }
    return layout;
}

std::vector<double> semanticScalars(const SemanticFrame& frame) {
    std::vector<double> s;
    s.reserve(frame.scalarCount());
    if (usesEuler(frame.kind)) {
        for (const auto& e : frame.eulers) {
            s.push_back(e.pitch);
            s.push_back(e.roll);
            s.push_back(e.yaw);
        }
    } else {
        for (int i = 0; i < frame.joints(); ++i) {
            const auto& p = frame.positions[i];
            const auto& q = frame.rotations[i];
            s.insert(s.end(), {p.x(), p.y(), p.z(), q.x(), q.y(), q.z(), q.w()});
        }
    }
    return s;
}

WeightVector absrWeights(const SkeletonGraph& graph, double alpha, double epsilon, int maxIter) {
    if (alpha <= 0.0 || alpha >= 1.0) throw std::invalid_argument("alpha must lie in (0, 1)");
    const auto violations = validateGraph(graph);
    if (!violations.empty())
        throw std::invalid_argument("absr requires a valid connected skeleton graph");

    const int n = graph.size();
    Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(n, n);
    for (const auto& node : graph.nodes) {
        if (!node.parent) continue;
        const double len = node.restOffset.norm();
        adjacency(node.id, *node.parent) = len;
        adjacency(*node.parent, node.id) = len;
    }
    const auto degrees = nodeDegrees(graph);
    Eigen::VectorXd base(n);
    for (int i = 0; i < n; ++i) base[i] = degrees[i] / (1.0 - alpha);

    WeightVector w = WeightVector::Constant(n, 1.0 / n);
    for (int iter = 0; iter < maxIter; ++iter) {
        WeightVector next = base + adjacency * w;
        next /= next.lpNorm<1>();
        const double delta = (next - w).norm();
        w = next;
        if (delta < epsilon) return w;
    }
    throw AbsrNonConvergence(w);
}

std::vector<int> channelMap(const WeightVector& weights, const ChannelRealization& channel) {
    const int items = static_cast<int>(weights.size());
    const int nc = channel.n();
    if (items == 0) throw std::invalid_argument("empty weight vector");
    if (nc == 0) throw std::invalid_argument("empty channel");

    std::vector<int> itemRank(items);
    std::iota(itemRank.begin(), itemRank.end(), 0);
    std::stable_sort(itemRank.begin(), itemRank.end(),
                     [&](int a, int b) { return weights[a] > weights[b]; });

    std::vector<int> subRank(nc);
    std::iota(subRank.begin(), subRank.end(), 0);
    std::stable_sort(subRank.begin(), subRank.end(), [&](int a, int b) {
        return channel.snrLinear(a) > channel.snrLinear(b);
    });

    std::vector<int> map(items);
    for (int r = 0; r < items; ++r) map[itemRank[r]] = subRank[r % nc];
    return map;
}

} // namespace gsar
