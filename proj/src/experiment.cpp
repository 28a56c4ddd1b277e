#include "gsar/experiment.hpp"

#include "gsar/io.hpp"
#include "gsar/rng.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace gsar {

std::uint64_t gainSeed(std::uint64_t master, int frame) {
    return deriveSeed(master, 0xC4A1, static_cast<std::uint64_t>(frame));
}

std::uint64_t noiseSeed(std::uint64_t master, int frame) {
    return deriveSeed(master, 0x401E, static_cast<std::uint64_t>(frame));
}

namespace {

double seconds(std::chrono::steady_clock::time_point from) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - from).count();
}

PayloadLayout cloudLayout(int points) {
    PayloadLayout layout;
    layout.items = points;
    layout.fields = {Field::Position, Field::Position, Field::Position,
                     Field::Color8, Field::Color8, Field::Color8};
    return layout;
}

std::vector<double> cloudScalars(const PointCloud& cloud) {
    std::vector<double> s;
    s.reserve(cloud.size() * 6);
    for (const auto& p : cloud) {
        s.insert(s.end(), {p.pos.x(), p.pos.y(), p.pos.z(), static_cast<double>(p.rgb[0]),
                           static_cast<double>(p.rgb[1]), static_cast<double>(p.rgb[2])});
    }
    return s;
}

PointCloud cloudFromScalars(std::span<const double> scalars, int points) {
    PointCloud cloud;
    cloud.reserve(points);
    const auto channel = [](double v) {
        return static_cast<std::uint8_t>(std::clamp<long long>(std::llround(v), 0, 255));
    };
    for (int i = 0; i < points; ++i) {
        const double* s = scalars.data() + static_cast<std::size_t>(i) * 6;
        cloud.push_back({Vec3(s[0], s[1], s[2]), {channel(s[3]), channel(s[4]), channel(s[5])}});
    }
    return cloud;
}

/// Receiver-side keypoint readout for the point-cloud baseline (the learned
/// extractor stand-in used for scoring). Each joint is re-read from the
/// received cloud through the points bound to it; the estimate follows the
/// worst-displaced of those local features, since one wrecked feature is
/// enough to mislead keypoint detection. Exact on a noiseless channel.
Pose baselinePoseEstimate(const Pose& txPose, const PointCloud& txCloud,
                          const PointCloud& rxCloud, std::span<const int> nodeOf) {
    const int joints = txPose.size();
    std::vector<double> worst2(joints, -1.0);
    std::vector<Vec3> disp(joints, Vec3::Zero());
    for (std::size_t i = 0; i < txCloud.size(); ++i) {
        const int k = nodeOf[i];
        if (k < 0) continue;
        const Vec3 d = rxCloud[i].pos - txCloud[i].pos;
        const double d2 = d.squaredNorm();
        if (d2 > worst2[k]) {
            worst2[k] = d2;
            disp[k] = d;
        }
    }
    // Joints whose bound points were all dropped by the downsampler read the
    // nearest surviving avatar point instead.
    for (int k = 0; k < joints; ++k) {
        if (worst2[k] >= 0.0) continue;
        double bestD2 = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < txCloud.size(); ++i) {
            if (nodeOf[i] < 0) continue;
            const double d2 = (txCloud[i].pos - txPose.positions[k]).squaredNorm();
            if (d2 < bestD2) {
                bestD2 = d2;
                disp[k] = rxCloud[i].pos - txCloud[i].pos;
            }
        }
    }
    Pose est = txPose;
    for (int k = 0; k < joints; ++k) est.positions[k] = txPose.positions[k] + disp[k];
    return est;
}

PointCloud composeScene(const Pose& pose, const ExperimentAssets& assets) {
    PointCloud scene = skinPose(assets.binding, pose);
    scene.reserve(scene.size() + assets.stationary.size());
    for (const auto& p : assets.stationary)
        scene.push_back({p.pos + assets.stationaryPosition, p.rgb});
    return scene;
}

} // namespace

ExperimentAssets prepareAssets(const ExperimentConfig& cfg) {
    ExperimentAssets assets;
    assets.graph = cfg.skeletonPath.empty() ? defaultSkeleton25() : readSkeleton(cfg.skeletonPath);
    const auto violations = validateGraph(assets.graph);
    if (!violations.empty()) {
        std::ostringstream oss;
        oss << "invalid skeleton:";
        for (const auto& v : violations) oss << " " << v << ";";
        throw std::runtime_error(oss.str());
    }
    assets.rest = restPose(assets.graph);
    assets.avatarInitial = assets.graph.nodes[rootIndex(assets.graph)].restOffset;

    const int avatarPoints = cfg.clouds.generated / 2;
    const PointCloud avatarCloud = avatarRestCloud(assets.graph, assets.rest, avatarPoints);
    assets.binding = bindToBones(avatarCloud, assets.graph, assets.rest);
    assets.stationary = stationaryModelCloud(cfg.clouds.generated - avatarPoints);
    assets.stationaryPosition = Vec3(0.0, -0.32, 0.0);

    if (cfg.tracePath.empty()) {
        assets.trace = genTrace(cfg.traceKind, cfg.frames, deriveSeed(cfg.seed, 0x7467),
                                assets.graph, cfg.fps);
    } else {
        assets.trace = readTrace(cfg.tracePath);
        if (!assets.trace.frames.empty() &&
            assets.trace.frames.front().size() != assets.graph.size())
            throw std::runtime_error("trace joint count does not match skeleton");
        if (static_cast<int>(assets.trace.frames.size()) > cfg.frames)
            assets.trace.frames.resize(cfg.frames);
    }
    if (assets.trace.frames.size() < 2)
        throw std::runtime_error("trace must provide at least 2 frames");

    assets.weights = absrWeights(assets.graph);
    assets.scheme = schemeFromConfig(cfg.channel);
    assets.coder = parseCoder(cfg.channel.coder);

    for (Framework fw : cfg.frameworks) {
        if (!isSemantic(fw)) continue;
        assets.baseKnowledge.emplace(
            fw, buildBaseKnowledge(fw, assets.graph, assets.binding, assets.rest,
                                   assets.avatarInitial, assets.stationary,
                                   assets.stationaryPosition));
    }
    return assets;
}

TxFrame buildTxFrame(int frameIndex, const ExperimentAssets& assets,
                     const ExperimentConfig& cfg) {
    TxFrame tx;
    tx.frameIndex = frameIndex;
    tx.txPose = assets.trace.frames[frameIndex];

    bool wantSemantic = false;
    bool wantBaseline = false;
    for (Framework fw : cfg.frameworks) (isSemantic(fw) ? wantSemantic : wantBaseline) = true;

    const int joints = tx.txPose.size();
    if (wantSemantic) {
        const auto t0 = std::chrono::steady_clock::now();
        tx.gsarFrame = extractSemantics(tx.txPose, Framework::Gsar);
        tx.eulerFrame = extractSemantics(tx.txPose, Framework::Egsar);
        tx.extractSeconds = seconds(t0);
        tx.gsarBits = quantizeSerialize(semanticScalars(tx.gsarFrame),
                                        semanticLayout(Framework::Gsar, joints), assets.scheme);
        tx.eulerBits = quantizeSerialize(semanticScalars(tx.eulerFrame),
                                         semanticLayout(Framework::Egsar, joints), assets.scheme);
    }
    tx.sceneRef = composeScene(tx.txPose, assets);

    if (wantBaseline) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto indices = fpsDownsampleIndices(tx.sceneRef, cfg.clouds.transmitted);
        tx.downsampleSeconds = seconds(t0);
        tx.fpsCloud.reserve(indices.size());
        tx.nodeOfTransmitted.reserve(indices.size());
        const int avatarPoints = static_cast<int>(assets.binding.points.size());
        for (int idx : indices) {
            tx.fpsCloud.push_back(tx.sceneRef[idx]);
            tx.nodeOfTransmitted.push_back(idx < avatarPoints ? assets.binding.points[idx].node
                                                             : -1);
        }
        tx.cloudBits = quantizeSerialize(cloudScalars(tx.fpsCloud),
                                         cloudLayout(cfg.clouds.transmitted), assets.scheme);
        const auto noiseless = deserializeDequantize(
            tx.cloudBits.stream, cloudLayout(cfg.clouds.transmitted), assets.scheme);
        tx.baselineRef = upsampleInterpolate(
            cloudFromScalars(noiseless.scalars, cfg.clouds.transmitted), cfg.clouds.recovered);
    }
    return tx;
}

FrameOutcome runFrame(Framework fw, double snrDb, const TxFrame& tx,
                      const ExperimentAssets& assets, const ExperimentConfig& cfg) {
    FrameOutcome out;
    MetricsRow& row = out.row;
    row.frame = tx.frameIndex;
    row.framework = fw;
    row.snrDb = snrDb;
    row.seed = cfg.seed;
    row.adjMpjpe = std::numeric_limits<double>::quiet_NaN();

    const auto channel =
        sampleChannel(cfg.channel.nSubchannels, snrDb, gainSeed(cfg.seed, tx.frameIndex));
    const std::uint64_t nseed = noiseSeed(cfg.seed, tx.frameIndex);
    const bool analytic = cfg.latency.mode == LatencyConfig::Mode::Analytic;

    if (fw == Framework::PointCloud) {
        const std::size_t payloadBits = tx.cloudBits.stream.size();
        const BitStream coded = coderEncode(tx.cloudBits.stream, assets.coder);
        const auto t0 = std::chrono::steady_clock::now();
        const auto received = transmit(coded, channel, {}, nseed);
        const BitStream decoded = coderDecode(received.received, assets.coder);
        const auto payload =
            deserializeDequantize(decoded, cloudLayout(cfg.clouds.transmitted), assets.scheme);
        const PointCloud rxDown = cloudFromScalars(payload.scalars, cfg.clouds.transmitted);
        const PointCloud rxScene = recoverSceneBaseline(rxDown, cfg.clouds.recovered);
        out.rxPose = baselinePoseEstimate(tx.txPose, tx.fpsCloud, rxDown, tx.nodeOfTransmitted);
        const double recoverSeconds = seconds(t0);

        row.mpjpe = mpjpe(tx.txPose, out.rxPose);
        row.weightedErr = std::numeric_limits<double>::quiet_NaN();
        row.p2point = p2point(tx.baselineRef, rxScene);
        row.psnrY = psnrY(tx.baselineRef, rxScene);
        row.ts = analytic ? 0.0 : tx.downsampleSeconds;
        row.tw = wirelessLatency(payloadBits, assets.coder.codeRate(), cfg.channel.nSubchannels,
                                 cfg.channel.symbolRatePerSubchannel);
        row.tr = analytic ? cfg.latency.renderCostPerElement * cfg.clouds.recovered
                          : recoverSeconds;
        return out;
    }

    const bool euler = usesEuler(fw);
    const SerializedPayload& bits = euler ? tx.eulerBits : tx.gsarBits;
    const std::size_t payloadBits = bits.stream.size();
    std::vector<int> mapping;
    if (fw == Framework::Ecgsar) mapping = channelMap(assets.weights, channel);

    const BitStream coded = coderEncode(bits.stream, assets.coder);
    const auto t0 = std::chrono::steady_clock::now();
    const auto received = transmit(coded, channel, mapping, nseed);
    const BitStream decoded = coderDecode(received.received, assets.coder);
    const int joints = tx.txPose.size();
    const auto payload = deserializeDequantize(decoded, semanticLayout(fw, joints), assets.scheme);

    ReceivedFrame rf;
    rf.kind = fw;
    rf.scalars = payload.scalars;
    rf.clampCount = bits.clampCount;
    rf.sanitizedCount = payload.sanitizedCount;

    const BaseKnowledge& bk = assets.baseKnowledge.at(fw);
    out.rxPose = euler ? recoverPoseEgsar(rf, bk) : recoverPoseGsar(rf, bk).pose;
    const PointCloud rxScene = recoverSceneSemantic(out.rxPose, bk);
    const double recoverSeconds = seconds(t0);

    row.mpjpe = mpjpe(tx.txPose, out.rxPose);
    row.weightedErr =
        weightedSemanticError(tx.txPose.positions, out.rxPose.positions, assets.weights);
    row.p2point = p2point(tx.sceneRef, rxScene);
    row.psnrY = psnrY(tx.sceneRef, rxScene);
    row.ts = analytic ? cfg.latency.extractCostPerPoint * cfg.clouds.transmitted
                      : tx.extractSeconds;
    row.tw = wirelessLatency(payloadBits, assets.coder.codeRate(), cfg.channel.nSubchannels,
                             cfg.channel.symbolRatePerSubchannel);
    row.tr = analytic ? cfg.latency.renderCostPerElement * joints : recoverSeconds;
    return out;
}

ExperimentResult runExperiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const ExperimentAssets assets = prepareAssets(cfg);
    const int frames = static_cast<int>(assets.trace.frames.size());
    const int nfw = static_cast<int>(cfg.frameworks.size());
    const int nsnr = static_cast<int>(cfg.snrDb.size());

    std::vector<FrameOutcome> outcomes(static_cast<std::size_t>(nfw) * nsnr * frames);
    const auto slot = [&](int fwIdx, int snrIdx, int frame) {
        return (static_cast<std::size_t>(fwIdx) * nsnr + snrIdx) * frames + frame;
    };

    std::atomic<int> nextFrame{0};
    const unsigned workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(),
                              static_cast<unsigned>(frames)));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                int f;
                while ((f = nextFrame.fetch_add(1)) < frames) {
                    const TxFrame tx = buildTxFrame(f, assets, cfg);
                    for (int fwIdx = 0; fwIdx < nfw; ++fwIdx) {
                        for (int snrIdx = 0; snrIdx < nsnr; ++snrIdx) {
                            FrameOutcome& out = outcomes[slot(fwIdx, snrIdx, f)];
                            try {
                                out = runFrame(cfg.frameworks[fwIdx], cfg.snrDb[snrIdx], tx,
                                               assets, cfg);
                            } catch (const std::exception& e) {
                                // Tag the frame failed and keep the run going.
                                const double nan = std::numeric_limits<double>::quiet_NaN();
                                out.row = MetricsRow{f,   cfg.frameworks[fwIdx],
                                                     cfg.snrDb[snrIdx], cfg.seed,
                                                     nan, nan, nan, nan, nan, nan, nan, nan};
                                out.rxPose = tx.txPose;
                                std::fprintf(stderr, "frame %d %s @%g dB failed: %s\n", f,
                                             frameworkName(cfg.frameworks[fwIdx]),
                                             cfg.snrDb[snrIdx], e.what());
                            }
                        }
                    }
                }
            } catch (...) {
                errors[w] = std::current_exception(); // asset-level failure aborts
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    ExperimentResult result;
    result.rows.reserve(outcomes.size());
    for (int fwIdx = 0; fwIdx < nfw; ++fwIdx) {
        for (int snrIdx = 0; snrIdx < nsnr; ++snrIdx) {
            for (int f = 0; f < frames; ++f) {
                FrameOutcome& cur = outcomes[slot(fwIdx, snrIdx, f)];
                if (f > 0 && !std::isnan(cur.row.mpjpe))
                    cur.row.adjMpjpe =
                        mpjpe(outcomes[slot(fwIdx, snrIdx, f - 1)].rxPose, cur.rxPose);
                result.rows.push_back(cur.row);
            }
        }
    }
    return result;
}

namespace {

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

struct Running {
    double sum = 0.0, sum2 = 0.0;
    int n = 0;
    void add(double v) {
        if (std::isnan(v)) return;
        sum += v;
        sum2 += v * v;
        ++n;
    }
    double mean() const { return n ? sum / n : std::numeric_limits<double>::quiet_NaN(); }
    double stddev() const {
        if (n < 2) return 0.0;
        const double m = mean();
        return std::sqrt(std::max(0.0, (sum2 - n * m * m) / (n - 1)));
    }
};

} // namespace

std::string resultsCsv(const ExperimentResult& result) {
    std::string csv =
        "frame,framework,snr_db,seed,mpjpe,adj_mpjpe,weighted_err,p2point,psnr_y,t_s,t_w,t_r\n";
    for (const auto& r : result.rows) {
        csv += std::to_string(r.frame);
        csv += ',';
        csv += frameworkName(r.framework);
        csv += ',';
        csv += fmt(r.snrDb);
        csv += ',';
        csv += std::to_string(r.seed);
        for (double v : {r.mpjpe, r.adjMpjpe, r.weightedErr, r.p2point, r.psnrY, r.ts, r.tw, r.tr}) {
            csv += ',';
            csv += fmt(v);
        }
        csv += '\n';
    }
    return csv;
}

void writeResultsCsv(const ExperimentResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << resultsCsv(result);
}

nlohmann::ordered_json summaryJson(const ExperimentConfig& cfg, const ExperimentResult& result) {
    nlohmann::ordered_json j;
    j["config"] = configToJson(cfg);
    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    for (Framework fw : cfg.frameworks) {
        for (double snr : cfg.snrDb) {
            Running mp, adj, werr, p2p, psnr, lat;
            for (const auto& r : result.rows) {
                if (r.framework != fw || r.snrDb != snr) continue;
                mp.add(r.mpjpe);
                adj.add(r.adjMpjpe);
                werr.add(r.weightedErr);
                p2p.add(r.p2point);
                psnr.add(r.psnrY);
                lat.add(r.ts + r.tw + r.tr);
            }
            nlohmann::ordered_json cell;
            cell["framework"] = frameworkName(fw);
            cell["snr_db"] = snr;
            cell["frames"] = mp.n;
            cell["mpjpe_mean"] = mp.mean();
            cell["mpjpe_std"] = mp.stddev();
            cell["adj_mpjpe_mean"] = adj.mean();
            cell["adj_mpjpe_std"] = adj.stddev();
            cell["weighted_err_mean"] = werr.n ? werr.mean() : 0.0;
            cell["weighted_err_defined"] = werr.n > 0;
            cell["p2point_mean"] = p2p.mean();
            cell["p2point_std"] = p2p.stddev();
            cell["psnr_y_mean"] = psnr.mean();
            cell["psnr_y_std"] = psnr.stddev();
            cell["latency_mean"] = lat.mean();
            cell["latency_std"] = lat.stddev();
            cells.push_back(cell);
        }
    }
    j["cells"] = cells;
    return j;
}

std::string emitPlotData(const std::string& resultsCsvText, const std::string& figureId) {
    static const std::map<std::string, int> figures{
        {"mpjpe", 4}, {"adjacent_mpjpe", 5}, {"p2point", 7}, {"psnr_y", 8}, {"latency", -1}};
    const auto figure = figures.find(figureId);
    if (figure == figures.end()) {
        std::string msg = "unknown figure id '" + figureId + "'; valid:";
        for (const auto& [k, _] : figures) msg += " " + k;
        throw std::invalid_argument(msg);
    }

    std::istringstream in(resultsCsvText);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty results");

    struct Key {
        double snr;
        std::string fw;
        bool operator<(const Key& o) const {
            return snr < o.snr || (snr == o.snr && fw < o.fw);
        }
    };
    std::map<Key, Running> groups;
    std::vector<std::string> fwOrder;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::istringstream ls(line);
        std::string col;
        while (std::getline(ls, col, ',')) cols.push_back(col);
        if (cols.size() != 12) throw std::invalid_argument("malformed results row: " + line);
        ++rows;
        const std::string fw = cols[1];
        const double snr = std::stod(cols[2]);
        double value;
        if (figure->second < 0)
            value = std::stod(cols[9]) + std::stod(cols[10]) + std::stod(cols[11]);
        else {
            const std::string& cell = cols[figure->second];
            value = (cell == "nan") ? std::numeric_limits<double>::quiet_NaN() : std::stod(cell);
        }
        groups[{snr, fw}].add(value);
        if (std::find(fwOrder.begin(), fwOrder.end(), fw) == fwOrder.end()) fwOrder.push_back(fw);
    }
    if (rows == 0) throw std::invalid_argument("results contain no data rows");

    std::string csv = "snr_db,framework,mean,std\n";
    std::vector<double> snrs;
    for (const auto& [key, _] : groups)
        if (snrs.empty() || snrs.back() != key.snr) snrs.push_back(key.snr);
    for (double snr : snrs) {
        for (const auto& fw : fwOrder) {
            const auto it = groups.find({snr, fw});
            if (it == groups.end()) continue;
            csv += fmt(snr);
            csv += ',';
            csv += fw;
            csv += ',';
            csv += fmt(it->second.mean());
            csv += ',';
            csv += fmt(it->second.stddev());
            csv += '\n';
        }
    }
    return csv;
}

} // namespace gsar
