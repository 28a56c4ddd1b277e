// Command-line front end: experiment sweeps, standalone metrics, skeleton
// ranking, trace generation and plot-table emission.

#include "gsar/experiment.hpp"
#include "gsar/io.hpp"
#include "gsar/ply.hpp"
#include "gsar/rng.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;

namespace {

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int runSimulate(const std::string& configPath, const std::string& outOverride,
                std::uint64_t seedOverride, bool hasSeed) {
    gsar::ExperimentConfig cfg = gsar::loadConfig(configPath);
    if (!outOverride.empty()) cfg.outDir = outOverride;
    if (hasSeed) cfg.seed = seedOverride;

    fs::create_directories(cfg.outDir);
    const auto result = gsar::runExperiment(cfg);
    const fs::path outDir(cfg.outDir);
    gsar::writeResultsCsv(result, (outDir / "results.csv").string());
    {
        std::ofstream out(outDir / "summary.json", std::ios::binary);
        out << gsar::summaryJson(cfg, result).dump(2) << "\n";
    }
    // Persist the resolved assets for provenance and downstream tooling.
    const auto assets = gsar::prepareAssets(cfg);
    gsar::writeSkeleton(assets.graph, (outDir / "skeleton.json").string());
    for (const auto& [fw, bk] : assets.baseKnowledge)
        gsar::writeBaseKnowledge(
            bk, (outDir / (std::string("base_knowledge_") + gsar::frameworkName(fw) + ".json"))
                    .string());
    std::cout << "wrote " << (outDir / "results.csv").string() << " (" << result.rows.size()
              << " rows)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Goal-oriented semantic communication simulator for avatar-centric AR"};
    app.require_subcommand(1);

    // simulate
    std::string configPath, outDir;
    std::uint64_t seed = 0;
    auto* simulate = app.add_subcommand("simulate", "Run an experiment sweep from a config file");
    simulate->add_option("--config", configPath, "Config file (JSON or TOML)")->required();
    simulate->add_option("--out", outDir, "Output directory override");
    auto* seedOpt = simulate->add_option("--seed", seed, "Master seed override");

    // metrics
    std::string txPly, rxPly;
    auto* metrics = app.add_subcommand("metrics", "Compare two PLY clouds (P2Point, PSNR_y)");
    metrics->add_option("--tx", txPly, "Transmitter-side PLY")->required();
    metrics->add_option("--rx", rxPly, "Receiver-side PLY")->required();

    // rank
    std::string skeletonPath;
    auto* rank = app.add_subcommand("rank", "Avatar-based semantic ranking of a skeleton");
    rank->add_option("--skeleton", skeletonPath, "Skeleton JSON file")->required();

    // trace gen
    auto* trace = app.add_subcommand("trace", "Trace utilities");
    trace->require_subcommand(1);
    std::string kindName = "full_body", traceOut = "trace.json", traceSkeleton;
    int traceFrames = 120;
    std::uint64_t traceSeed = 1;
    double traceFps = 60.0;
    auto* traceGen = trace->add_subcommand("gen", "Generate a procedural dance trace");
    traceGen->add_option("--kind", kindName, "upper_body | slight_shaking | full_body");
    traceGen->add_option("--frames", traceFrames, "Frame count")->required();
    traceGen->add_option("--seed", traceSeed, "Generator seed");
    traceGen->add_option("--fps", traceFps, "Frames per second");
    traceGen->add_option("--out", traceOut, "Output trace JSON path");
    traceGen->add_option("--skeleton", traceSkeleton, "Skeleton JSON (default: built-in)");

    // plot
    std::string resultsPath, figureId, plotOut;
    auto* plot = app.add_subcommand("plot", "Emit a plot-ready table from results.csv");
    plot->add_option("--results", resultsPath, "results.csv path")->required();
    plot->add_option("--figure", figureId,
                     "mpjpe | adjacent_mpjpe | p2point | psnr_y | latency")
        ->required();
    plot->add_option("--out", plotOut, "Output CSV path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed())
            return runSimulate(configPath, outDir, seed, seedOpt->count() > 0);

        if (metrics->parsed()) {
            const auto tx = gsar::plyRead(txPly);
            const auto rx = gsar::plyRead(rxPly);
            std::cout << "points_tx=" << tx.size() << " points_rx=" << rx.size() << "\n";
            std::cout << "p2point=" << gsar::p2point(tx, rx) << " m\n";
            std::cout << "psnr_y=" << gsar::psnrY(tx, rx) << " dB\n";
            return 0;
        }

        if (rank->parsed()) {
            const auto graph = gsar::readSkeleton(skeletonPath);
            const auto weights = gsar::absrWeights(graph);
            std::vector<int> order(graph.size());
            for (int i = 0; i < graph.size(); ++i) order[i] = i;
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return weights[a] > weights[b]; });
            std::cout << "node,weight,rank\n";
            std::vector<int> rankOf(graph.size());
            for (int r = 0; r < graph.size(); ++r) rankOf[order[r]] = r;
            for (int i = 0; i < graph.size(); ++i)
                std::cout << i << "," << weights[i] << "," << rankOf[i] << "\n";
            return 0;
        }

        if (traceGen->parsed()) {
            const auto kind = gsar::parseTraceKind(kindName);
            gsar::AnimationTrace generated;
            if (traceSkeleton.empty()) {
                generated = gsar::genTrace(kind, traceFrames, traceSeed,
                                           gsar::defaultSkeleton25(), traceFps);
            } else {
                generated = gsar::genTrace(kind, traceFrames, traceSeed,
                                           gsar::readSkeleton(traceSkeleton), traceFps);
            }
            gsar::writeTrace(generated, traceOut);
            const auto stats = gsar::traceStats(generated);
            std::cout << "wrote " << traceOut << " (" << generated.frames.size()
                      << " frames); adjacent displacement ranges x [" << stats.minDisp[0] << ", "
                      << stats.maxDisp[0] << "] y [" << stats.minDisp[1] << ", "
                      << stats.maxDisp[1] << "] z [" << stats.minDisp[2] << ", "
                      << stats.maxDisp[2] << "] m\n";
            return 0;
        }

        if (plot->parsed()) {
            const auto table = gsar::emitPlotData(readFile(resultsPath), figureId);
            if (plotOut.empty()) {
                std::cout << table;
            } else {
                std::ofstream out(plotOut, std::ios::binary);
                out << table;
                std::cout << "wrote " << plotOut << "\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
