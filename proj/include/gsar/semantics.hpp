#pragma once

#include "gsar/channel.hpp"
#include "gsar/quantize.hpp"
#include "gsar/skeleton.hpp"

#include <string>
#include <vector>

namespace gsar {

enum class Framework { PointCloud, Gsar, Egsar, Ecgsar };

const char* frameworkName(Framework f);
Framework parseFramework(const std::string& name);
inline bool isSemantic(Framework f) { return f != Framework::PointCloud; }
inline bool usesEuler(Framework f) { return f == Framework::Egsar || f == Framework::Ecgsar; }

/// Per-frame transmissible skeleton payload. The GSAR variant carries
/// position + quaternion per joint; the Euler variants carry one angle triple.
struct SemanticFrame {
    Framework kind = Framework::Gsar;
    std::vector<Vec3> positions;      // GSAR
    std::vector<Quat> rotations;      // GSAR
    std::vector<EulerAngles> eulers;  // E-GSAR / EC-GSAR

    int joints() const {
        return static_cast<int>(usesEuler(kind) ? eulers.size() : positions.size());
    }
    std::size_t scalarCount() const { return joints() * (usesEuler(kind) ? 3u : 7u); }
};

/// Ground-truth extraction oracle: copies joint positions and quaternions for
/// GSAR, converts each joint quaternion to Euler angles for the Euler
/// variants. Deterministic.
SemanticFrame extractSemantics(const Pose& pose, Framework framework);

/// Payload layout for a framework's per-frame data (item = joint).
PayloadLayout semanticLayout(Framework framework, int joints);

/// Flattens a frame into item-major scalars matching semanticLayout.
std::vector<double> semanticScalars(const SemanticFrame& frame);

using WeightVector = Eigen::VectorXd;

/// Avatar-based semantic ranking: fixed point of
///   w_i <- deg(i)/(1-alpha) + sum_{j in N(i)} |bone(i,j)| * w_j
/// with L1 normalization after each sweep, stopping when the normalized
/// iterates move less than epsilon. Weights are nonnegative and sum to 1.
WeightVector absrWeights(const SkeletonGraph& graph, double alpha = 0.7, double epsilon = 1e-9,
                         int maxIter = 10000);

/// Raised when the weight iteration fails to converge; carries the last
/// normalized iterate.
struct AbsrNonConvergence : std::runtime_error {
    explicit AbsrNonConvergence(WeightVector last)
        : std::runtime_error("absr weight iteration did not converge"), lastIterate(std::move(last)) {}
    WeightVector lastIterate;
};

/// Rank-to-rank pairing of items sorted by weight (descending) with
/// subchannels sorted by SNR (descending); ties break to the lower index.
/// With more items than subchannels the subchannel ranks wrap cyclically.
/// Returns item -> subchannel.
std::vector<int> channelMap(const WeightVector& weights, const ChannelRealization& channel);

} // namespace gsar
