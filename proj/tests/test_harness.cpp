#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsar/experiment.hpp"
#include "gsar/toml_lite.hpp"

#include <filesystem>
#include <fstream>

using namespace gsar;

namespace {

ExperimentConfig smallConfig() {
    ExperimentConfig cfg;
    cfg.frameworks = {Framework::PointCloud, Framework::Gsar, Framework::Egsar,
                      Framework::Ecgsar};
    cfg.snrDb = {5.0, 13.0};
    cfg.frames = 6;
    cfg.seed = 21;
    cfg.traceKind = TraceKind::SlightShaking;
    cfg.clouds = {1024, 256, 1024};
    cfg.latency.mode = LatencyConfig::Mode::Analytic;
    return cfg;
}

} // namespace

TEST_CASE("trace generator: determinism, kinds and bounds") {
    const auto a = genTrace(TraceKind::FullBody, 40, 9);
    const auto b = genTrace(TraceKind::FullBody, 40, 9);
    REQUIRE(a.frames.size() == b.frames.size());
    for (std::size_t f = 0; f < a.frames.size(); ++f)
        for (int j = 0; j < a.frames[f].size(); ++j)
            CHECK((a.frames[f].positions[j] - b.frames[f].positions[j]).norm() == 0.0);

    // slight shaking stays under 0.1 m per frame
    const auto shake = genTrace(TraceKind::SlightShaking, 90, 5);
    const auto shakeStats = traceStats(shake);
    for (int axis = 0; axis < 3; ++axis) CHECK(shakeStats.maxDisp[axis] < 0.1);

    // full body stays within the reference movement ranges but does move
    const auto full = genTrace(TraceKind::FullBody, 240, 5);
    const auto fullStats = traceStats(full);
    const std::array<double, 3> tableRange{0.52, 0.76, 0.74};
    for (int axis = 0; axis < 3; ++axis) {
        CHECK(fullStats.maxDisp[axis] <= tableRange[axis]);
        CHECK(fullStats.maxDisp[axis] > 0.005);
    }

    // upper body moves arms but keeps legs still
    const auto upper = genTrace(TraceKind::UpperBody, 60, 5);
    const auto g = defaultSkeleton25();
    double legMove = 0.0, armMove = 0.0;
    for (std::size_t f = 1; f < upper.frames.size(); ++f) {
        legMove += (upper.frames[f].positions[19] - upper.frames[f - 1].positions[19]).norm();
        armMove += (upper.frames[f].positions[10] - upper.frames[f - 1].positions[10]).norm();
    }
    CHECK(legMove == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(armMove > 0.01);

    CHECK_THROWS_AS(parseTraceKind("tango"), std::invalid_argument);
    CHECK_THROWS_AS(genTrace(TraceKind::FullBody, 1, 5), std::invalid_argument);
    (void)g;
}

TEST_CASE("config: JSON and TOML forms agree") {
    const std::string json = R"({
      "frameworks": ["gsar", "egsar"],
      "snr_db": [0.5, 10],
      "frames": 12,
      "seed": 5,
      "trace": {"kind": "upper_body"},
      "clouds": {"generated": 512, "transmitted": 128, "recovered": 512},
      "channel": {"n_subchannels": 32, "coder": "repetition:3", "bits_per_scalar": 12},
      "latency": {"mode": "analytic"}
    })";
    const std::string toml = R"(
      frameworks = ["gsar", "egsar"]
      snr_db = [0.5, 10]
      frames = 12
      seed = 5
      [trace]
      kind = "upper_body"
      [clouds]
      generated = 512
      transmitted = 128
      recovered = 512
      [channel]
      n_subchannels = 32
      coder = "repetition:3"
      bits_per_scalar = 12
      [latency]
      mode = "analytic"
    )";
    const auto a = configFromJson(nlohmann::json::parse(json));
    const auto b = configFromJson(parseTomlLite(toml));
    CHECK(configToJson(a) == configToJson(b));
    CHECK(a.channel.nSubchannels == 32);
    CHECK(a.channel.coder == "repetition:3");
    CHECK(a.traceKind == TraceKind::UpperBody);

    CHECK_THROWS_AS(configFromJson(nlohmann::json::parse(R"({"frameworks": []})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(configFromJson(nlohmann::json::parse(R"({"typo_key": 1})")),
                    std::invalid_argument);
}

TEST_CASE("experiment: schema, determinism and paired noiseless exactness") {
    auto cfg = smallConfig();
    const auto result = runExperiment(cfg);
    CHECK(result.rows.size() == 4 * 2 * 6);

    // fixed column order
    const std::string csv = resultsCsv(result);
    CHECK(csv.rfind("frame,framework,snr_db,seed,mpjpe,adj_mpjpe,weighted_err,p2point,psnr_y,"
                    "t_s,t_w,t_r\n",
                    0) == 0);

    // byte-identical reruns
    const auto again = runExperiment(cfg);
    CHECK(csv == resultsCsv(again));

    // first frame has no adjacent transition; later frames do
    CHECK(std::isnan(result.rows.front().adjMpjpe));
    CHECK(!std::isnan(result.rows[1].adjMpjpe));

    // baseline rows have no weighted error; semantic rows do
    for (const auto& row : result.rows) {
        if (row.framework == Framework::PointCloud)
            CHECK(std::isnan(row.weightedErr));
        else
            CHECK(!std::isnan(row.weightedErr));
    }
}

TEST_CASE("noiseless frames reproduce the transmitter scene for all frameworks") {
    auto cfg = smallConfig();
    cfg.snrDb = {300.0}; // effectively noiseless
    cfg.frames = 3;
    const auto result = runExperiment(cfg);
    const QuantizationScheme scheme;
    const double posBound = std::sqrt(3.0) * halfStep(scheme, Field::Position);
    for (const auto& row : result.rows) {
        if (row.framework == Framework::Gsar || row.framework == Framework::PointCloud)
            CHECK(row.mpjpe <= posBound + 1e-12);
        else
            CHECK(row.mpjpe <= 2e-4); // FK-propagated angle quantization
        CHECK(row.psnrY == kPsnrCapDb);
        CHECK(row.p2point <= 2e-4);
    }
}

TEST_CASE("32-bit float layout stays noiseless-exact end to end") {
    auto cfg = smallConfig();
    cfg.snrDb = {300.0};
    cfg.frames = 2;
    cfg.channel.floatLayout = true;
    const auto result = runExperiment(cfg);
    for (const auto& row : result.rows) {
        CHECK(row.mpjpe <= 1e-5); // float32 round-trip of meter-scale values
        CHECK(row.psnrY == kPsnrCapDb);
    }
}

TEST_CASE("plot emission: figures, series and errors") {
    auto cfg = smallConfig();
    cfg.frames = 4;
    const auto result = runExperiment(cfg);
    const std::string csv = resultsCsv(result);

    const auto table = emitPlotData(csv, "mpjpe");
    CHECK(table.rfind("snr_db,framework,mean,std\n", 0) == 0);
    int lines = -1; // header
    for (char c : table) lines += c == '\n';
    CHECK(lines == 8); // 2 SNRs x 4 frameworks

    for (const std::string fig : {"adjacent_mpjpe", "p2point", "psnr_y", "latency"})
        CHECK_NOTHROW((void)emitPlotData(csv, fig));

    CHECK_THROWS_WITH_AS((void)emitPlotData(csv, "spectrogram"), doctest::Contains("valid"),
                         std::invalid_argument);
    CHECK_THROWS_AS(
        (void)emitPlotData("frame,framework,snr_db,seed,mpjpe,adj_mpjpe,weighted_err,p2point,"
                           "psnr_y,t_s,t_w,t_r\n",
                           "mpjpe"),
        std::invalid_argument);
}

TEST_CASE("EC-GSAR mapping helps the weighted error at usable SNR") {
    auto cfg = smallConfig();
    cfg.frameworks = {Framework::Egsar, Framework::Ecgsar};
    cfg.snrDb = {8.0};
    cfg.frames = 40;
    cfg.traceKind = TraceKind::FullBody;
    const auto result = runExperiment(cfg);

    double sumE = 0.0, sumEc = 0.0;
    for (const auto& row : result.rows) {
        if (row.framework == Framework::Egsar) sumE += row.weightedErr;
        if (row.framework == Framework::Ecgsar) sumEc += row.weightedErr;
    }
    CHECK(sumEc <= sumE);
}

TEST_CASE("base knowledge and skeleton files land in the output directory") {
    namespace fs = std::filesystem;
    auto cfg = smallConfig();
    cfg.frames = 2;
    cfg.snrDb = {13.0};
    const auto assets = prepareAssets(cfg);
    CHECK(assets.trace.frames.size() == 2);
    CHECK(assets.baseKnowledge.count(Framework::Gsar) == 1);
    CHECK(assets.baseKnowledge.count(Framework::Ecgsar) == 1);
    CHECK(!assets.baseKnowledge.at(Framework::Gsar).graph.has_value());
    CHECK(assets.baseKnowledge.at(Framework::Ecgsar).graph.has_value());
    CHECK(assets.weights.size() == 25);
}
