#pragma once

#include "gsar/base_knowledge.hpp"
#include "gsar/config.hpp"
#include "gsar/metrics.hpp"
#include "gsar/recovery.hpp"

#include <map>
#include <string>
#include <vector>

namespace gsar {

/// Everything loaded or generated once per experiment.
struct ExperimentAssets {
    SkeletonGraph graph;
    Pose rest;
    SkinBinding binding;
    PointCloud stationary; // local coordinates
    Vec3 stationaryPosition = Vec3::Zero();
    Vec3 avatarInitial = Vec3::Zero();
    AnimationTrace trace;
    WeightVector weights;
    std::map<Framework, BaseKnowledge> baseKnowledge;
    QuantizationScheme scheme;
    ChannelCoder coder;
};

ExperimentAssets prepareAssets(const ExperimentConfig& cfg);

/// Transmitter-side per-frame artifacts, shared across SNR points and
/// frameworks (the transmit side does not depend on the channel draw).
struct TxFrame {
    int frameIndex = 0;
    Pose txPose;
    PointCloud sceneRef; // semantic reference scene
    SemanticFrame gsarFrame;
    SerializedPayload gsarBits;
    SemanticFrame eulerFrame;
    SerializedPayload eulerBits;
    PointCloud fpsCloud;               // downsampled scene awaiting transmission
    SerializedPayload cloudBits;
    PointCloud baselineRef;            // upsampled noiseless reconstruction
    std::vector<int> nodeOfTransmitted; // binding node per fps point, -1 stationary
    double extractSeconds = 0.0;
    double downsampleSeconds = 0.0;
};

TxFrame buildTxFrame(int frameIndex, const ExperimentAssets& assets,
                     const ExperimentConfig& cfg);

struct MetricsRow {
    int frame = 0;
    Framework framework = Framework::Gsar;
    double snrDb = 0.0;
    std::uint64_t seed = 0;
    double mpjpe = 0.0;
    double adjMpjpe = 0.0; // nan on the first frame
    double weightedErr = 0.0; // nan for the point-cloud baseline
    double p2point = 0.0;
    double psnrY = 0.0;
    double ts = 0.0, tw = 0.0, tr = 0.0;
};

struct FrameOutcome {
    MetricsRow row;
    Pose rxPose; // for the adjacent-frame pass
};

/// One frame of one framework through extract -> rank/map -> serialize ->
/// code -> transmit -> decode -> recover -> skin -> measure (the baseline
/// runs skin -> downsample -> serialize -> transmit -> upsample -> measure).
FrameOutcome runFrame(Framework fw, double snrDb, const TxFrame& tx,
                      const ExperimentAssets& assets, const ExperimentConfig& cfg);

struct ExperimentResult {
    std::vector<MetricsRow> rows; // framework-major, then SNR, then frame
};

/// Full cross product frameworks x SNR x frames with paired channel seeds per
/// frame. Frames run in parallel; per-frame random streams derive from
/// (seed, frame), so results are schedule-independent.
ExperimentResult runExperiment(const ExperimentConfig& cfg);

std::string resultsCsv(const ExperimentResult& result);
void writeResultsCsv(const ExperimentResult& result, const std::string& path);
nlohmann::ordered_json summaryJson(const ExperimentConfig& cfg, const ExperimentResult& result);

/// Long-format plot table (snr_db, framework, mean, std) for one figure id:
/// mpjpe | adjacent_mpjpe | p2point | psnr_y | latency.
std::string emitPlotData(const std::string& resultsCsvText, const std::string& figureId);

/// Channel/noise substream ids for one frame; shared by every framework and
/// SNR point so comparisons stay paired.
std::uint64_t gainSeed(std::uint64_t master, int frame);
std::uint64_t noiseSeed(std::uint64_t master, int frame);

} // namespace gsar
