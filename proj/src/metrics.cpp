#include "gsar/metrics.hpp"

#include "gsar/nearest.hpp"

#include <cmath>
#include <stdexcept>

namespace gsar {

double mpjpe(const Pose& tx, const Pose& rx) {
    if (tx.size() != rx.size()) throw std::invalid_argument("pose joint counts differ");
    if (tx.size() == 0) throw std::invalid_argument("empty pose");
    double sum = 0.0;
    for (int i = 0; i < tx.size(); ++i) sum += (tx.positions[i] - rx.positions[i]).norm();
    return sum / tx.size();
}

AdjacentStats adjacentMpjpe(std::span<const Pose> frames) {
    if (frames.size() < 2) throw std::invalid_argument("adjacent MPJPE needs at least 2 frames");
    AdjacentStats stats;
    stats.perTransition.reserve(frames.size() - 1);
    for (std::size_t t = 1; t < frames.size(); ++t)
        stats.perTransition.push_back(mpjpe(frames[t - 1], frames[t]));
    double sum = 0.0;
    for (double v : stats.perTransition) {
        sum += v;
        stats.max = std::max(stats.max, v);
    }
    stats.mean = sum / stats.perTransition.size();
    return stats;
}

double weightedSemanticError(std::span<const Vec3> txPositions, std::span<const Vec3> rxPositions,
                             const WeightVector& weights) {
    if (txPositions.size() != rxPositions.size() ||
        static_cast<Eigen::Index>(txPositions.size()) != weights.size())
        throw std::invalid_argument("weighted error layout mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < txPositions.size(); ++i)
        sum += (txPositions[i] - rxPositions[i]).norm() * weights[static_cast<Eigen::Index>(i)];
    return sum;
}

namespace detail {

double directedRms(const PointCloud& from, const PointCloud& to, bool forceGrid) {
    std::vector<Vec3> toPos;
    toPos.reserve(to.size());
    for (const auto& p : to) toPos.push_back(p.pos);

    double sum = 0.0;
    if (forceGrid || to.size() > 4096) {
        GridIndex grid(toPos);
        for (const auto& p : from) sum += grid.nearest(p.pos).dist2;
    } else {
        for (const auto& p : from) sum += bruteNearest(toPos, p.pos).dist2;
    }
    return std::sqrt(sum / static_cast<double>(from.size()));
}

} // namespace detail

double p2point(const PointCloud& tx, const PointCloud& rx) {
    if (tx.empty() || rx.empty()) throw std::invalid_argument("p2point requires nonempty clouds");
    return std::max(detail::directedRms(tx, rx, false), detail::directedRms(rx, tx, false));
}

namespace {
double luminance(const Rgb& c) { return 0.299 * c[0] + 0.587 * c[1] + 0.114 * c[2]; }
} // namespace

double psnrY(const PointCloud& tx, const PointCloud& rx) {
    if (tx.empty() || rx.empty()) throw std::invalid_argument("psnr requires nonempty clouds");
    std::vector<Vec3> rxPos;
    rxPos.reserve(rx.size());
    for (const auto& p : rx) rxPos.push_back(p.pos);

    double mse = 0.0;
    if (rx.size() > 4096) {
        GridIndex grid(rxPos);
        for (const auto& p : tx) {
            const auto hit = grid.nearest(p.pos);
            const double dy = luminance(p.rgb) - luminance(rx[hit.index].rgb);
            mse += dy * dy;
        }
    } else {
        for (const auto& p : tx) {
            const auto hit = bruteNearest(rxPos, p.pos);
            const double dy = luminance(p.rgb) - luminance(rx[hit.index].rgb);
            mse += dy * dy;
        }
    }
    mse /= static_cast<double>(tx.size());
    const double peak2 = 255.0 * 255.0;
    if (mse < peak2 * 1e-10) return kPsnrCapDb;
    return 10.0 * std::log10(peak2 / mse);
}

double wirelessLatency(std::size_t payloadBits, double codeRate, int nSubchannels,
                       double symbolRatePerSubchannel, int bitsPerSymbol) {
    if (codeRate <= 0.0 || nSubchannels < 1 || symbolRatePerSubchannel <= 0.0 ||
        bitsPerSymbol < 1)
        throw std::invalid_argument("wireless latency requires positive rates");
    const double codedBits = static_cast<double>(payloadBits) / codeRate;
    return codedBits / (static_cast<double>(nSubchannels) * symbolRatePerSubchannel *
                        static_cast<double>(bitsPerSymbol));
}

} // namespace gsar
