#pragma once

#include "gsar/coder.hpp"
#include "gsar/semantics.hpp"
#include "gsar/trace_gen.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace gsar {

struct ChannelConfig {
    int nSubchannels = 64;
    std::string coder = "identity"; // identity | repetition:k
    int bitsPerScalar = 16;
    bool floatLayout = false;
    double symbolRatePerSubchannel = 250000.0;
};

struct LatencyConfig {
    enum class Mode { Measured, Analytic };
    Mode mode = Mode::Measured;
    /// Analytic extraction cost per input point of the semantic extractor.
    double extractCostPerPoint = 5e-6;
    /// Analytic recovery/render cost per placed element (point or joint).
    double renderCostPerElement = 25e-6;
};

struct CloudSizes {
    int generated = 8192;   // scene points produced at the transmitter
    int transmitted = 2048; // farthest-point downsample target
    int recovered = 8192;   // interpolation upsample target
};

struct ExperimentConfig {
    std::vector<Framework> frameworks{Framework::PointCloud, Framework::Gsar, Framework::Egsar,
                                      Framework::Ecgsar};
    std::vector<double> snrDb{0.5, 1, 3, 5, 8, 10, 13};
    int frames = 200;
    double fps = 60.0;
    std::uint64_t seed = 1;
    std::string tracePath;                        // empty -> procedural trace
    TraceKind traceKind = TraceKind::FullBody;
    std::string skeletonPath;                     // empty -> built-in skeleton
    CloudSizes clouds;
    ChannelConfig channel;
    LatencyConfig latency;
    std::string outDir = "out";

    void validate() const; // throws on empty framework/SNR sets or frames < 1
};

/// Loads a config from JSON or the TOML subset (chosen by extension, .toml
/// vs anything else). Unknown keys raise errors.
ExperimentConfig loadConfig(const std::string& path);
ExperimentConfig configFromJson(const nlohmann::json& j);

/// Full resolved config as JSON, echoed into the run summary for provenance.
nlohmann::ordered_json configToJson(const ExperimentConfig& cfg);

QuantizationScheme schemeFromConfig(const ChannelConfig& cc);

} // namespace gsar
