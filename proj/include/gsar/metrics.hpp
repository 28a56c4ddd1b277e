#pragma once

#include "gsar/pointcloud.hpp"
#include "gsar/semantics.hpp"

#include <span>

namespace gsar {

/// Mean per-joint position error, meters.
double mpjpe(const Pose& tx, const Pose& rx);

struct AdjacentStats {
    std::vector<double> perTransition; // mpjpe(frame_{t-1}, frame_t)
    double mean = 0.0;
    double max = 0.0;
};

/// MPJPE between consecutive frames of a recovered sequence; a fluency proxy.
AdjacentStats adjacentMpjpe(std::span<const Pose> frames);

/// Sum of per-joint position errors weighted by the semantic importance
/// vector. For Euler variants the positions are the FK-recovered ones.
double weightedSemanticError(std::span<const Vec3> txPositions, std::span<const Vec3> rxPositions,
                             const WeightVector& weights);

/// Symmetric max of directed RMS nearest-neighbour distances. Brute-force
/// matching up to 4096 points, grid-accelerated above with identical results.
double p2point(const PointCloud& tx, const PointCloud& rx);

constexpr double kPsnrCapDb = 100.0;

/// Luminance PSNR over nearest-neighbour point pairs (BT.601 weights),
/// capped at 100 dB for vanishing MSE.
double psnrY(const PointCloud& tx, const PointCloud& rx);

struct LatencyBreakdown {
    double ts = 0.0; // semantic extraction, seconds
    double tw = 0.0; // wireless transmission
    double tr = 0.0; // pose recovery and rendering

    double total() const { return ts + tw + tr; }
};

/// Serial airtime of a payload over the FDM channel:
/// payloadBits / codeRate / (nSubchannels * symbolRate * bitsPerSymbol).
double wirelessLatency(std::size_t payloadBits, double codeRate, int nSubchannels,
                       double symbolRatePerSubchannel, int bitsPerSymbol = 1);

// Internals exposed for the oracle-equivalence tests.
namespace detail {
double directedRms(const PointCloud& from, const PointCloud& to, bool forceGrid);
}

} // namespace gsar
