#include "gsar/config.hpp"

#include "gsar/toml_lite.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace gsar {

void ExperimentConfig::validate() const {
    if (frameworks.empty()) throw std::invalid_argument("framework set is empty");
    if (snrDb.empty()) throw std::invalid_argument("snr_db list is empty");
    if (frames < 1) throw std::invalid_argument("frame horizon must be at least 1");
    if (fps <= 0) throw std::invalid_argument("fps must be positive");
    if (clouds.transmitted < 1 || clouds.transmitted > clouds.generated)
        throw std::invalid_argument("transmitted cloud size must lie in [1, generated]");
    if (clouds.recovered < clouds.transmitted)
        throw std::invalid_argument("recovered cloud size below transmitted size");
    parseCoder(channel.coder);
    schemeFromConfig(channel).validate();
    if (channel.nSubchannels < 1) throw std::invalid_argument("need at least one subchannel");
    if (channel.symbolRatePerSubchannel <= 0)
        throw std::invalid_argument("symbol rate must be positive");
}

QuantizationScheme schemeFromConfig(const ChannelConfig& cc) {
    QuantizationScheme s;
    s.bitsPerScalar = cc.bitsPerScalar;
    s.floatLayout = cc.floatLayout;
    return s;
}

namespace {

void expectKeys(const nlohmann::json& j, const std::set<std::string>& allowed,
                const std::string& where) {
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key))
            throw std::invalid_argument("unknown config key '" + key + "' in " + where);
}

} // namespace

ExperimentConfig configFromJson(const nlohmann::json& j) {
    ExperimentConfig cfg;
    expectKeys(j,
               {"frameworks", "snr_db", "frames", "fps", "seed", "trace", "skeleton", "clouds",
                "channel", "latency", "out"},
               "config root");

    if (j.contains("frameworks")) {
        cfg.frameworks.clear();
        for (const auto& f : j.at("frameworks"))
            cfg.frameworks.push_back(parseFramework(f.get<std::string>()));
    }
    if (j.contains("snr_db")) {
        cfg.snrDb.clear();
        for (const auto& s : j.at("snr_db")) cfg.snrDb.push_back(s.get<double>());
    }
    if (j.contains("frames")) cfg.frames = j.at("frames").get<int>();
    if (j.contains("fps")) cfg.fps = j.at("fps").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("trace")) {
        const auto& t = j.at("trace");
        expectKeys(t, {"path", "kind"}, "trace");
        if (t.contains("path")) cfg.tracePath = t.at("path").get<std::string>();
        if (t.contains("kind")) cfg.traceKind = parseTraceKind(t.at("kind").get<std::string>());
    }
    if (j.contains("skeleton")) cfg.skeletonPath = j.at("skeleton").get<std::string>();
    if (j.contains("clouds")) {
        const auto& c = j.at("clouds");
        expectKeys(c, {"generated", "transmitted", "recovered"}, "clouds");
        if (c.contains("generated")) cfg.clouds.generated = c.at("generated").get<int>();
        if (c.contains("transmitted")) cfg.clouds.transmitted = c.at("transmitted").get<int>();
        if (c.contains("recovered")) cfg.clouds.recovered = c.at("recovered").get<int>();
    }
    if (j.contains("channel")) {
        const auto& c = j.at("channel");
        expectKeys(c,
                   {"n_subchannels", "coder", "bits_per_scalar", "float_layout",
                    "symbol_rate_per_subchannel", "seed", "snr_avg_db"},
                   "channel");
        if (c.contains("n_subchannels")) cfg.channel.nSubchannels = c.at("n_subchannels").get<int>();
        if (c.contains("coder")) cfg.channel.coder = c.at("coder").get<std::string>();
        if (c.contains("bits_per_scalar"))
            cfg.channel.bitsPerScalar = c.at("bits_per_scalar").get<int>();
        if (c.contains("float_layout")) cfg.channel.floatLayout = c.at("float_layout").get<bool>();
        if (c.contains("symbol_rate_per_subchannel"))
            cfg.channel.symbolRatePerSubchannel =
                c.at("symbol_rate_per_subchannel").get<double>();
        if (c.contains("seed")) cfg.seed = c.at("seed").get<std::uint64_t>();
        if (c.contains("snr_avg_db")) cfg.snrDb = {c.at("snr_avg_db").get<double>()};
    }
    if (j.contains("latency")) {
        const auto& l = j.at("latency");
        expectKeys(l, {"mode", "extract_cost_per_point", "render_cost_per_element"}, "latency");
        if (l.contains("mode")) {
            const auto m = l.at("mode").get<std::string>();
            if (m == "measured")
                cfg.latency.mode = LatencyConfig::Mode::Measured;
            else if (m == "analytic")
                cfg.latency.mode = LatencyConfig::Mode::Analytic;
            else
                throw std::invalid_argument("latency mode must be 'measured' or 'analytic'");
        }
        if (l.contains("extract_cost_per_point"))
            cfg.latency.extractCostPerPoint = l.at("extract_cost_per_point").get<double>();
        if (l.contains("render_cost_per_element"))
            cfg.latency.renderCostPerElement = l.at("render_cost_per_element").get<double>();
    }
    if (j.contains("out")) cfg.outDir = j.at("out").get<std::string>();
    cfg.validate();
    return cfg;
}

ExperimentConfig loadConfig(const std::string& path) {
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml")
        return configFromJson(loadTomlFile(path));
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    nlohmann::json j;
    in >> j;
    return configFromJson(j);
}

nlohmann::ordered_json configToJson(const ExperimentConfig& cfg) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json fws = nlohmann::ordered_json::array();
    for (auto f : cfg.frameworks) fws.push_back(frameworkName(f));
    j["frameworks"] = fws;
    j["snr_db"] = cfg.snrDb;
    j["frames"] = cfg.frames;
    j["fps"] = cfg.fps;
    j["seed"] = cfg.seed;
    j["trace"] = {{"path", cfg.tracePath}, {"kind", traceKindName(cfg.traceKind)}};
    j["skeleton"] = cfg.skeletonPath;
    j["clouds"] = {{"generated", cfg.clouds.generated},
                   {"transmitted", cfg.clouds.transmitted},
                   {"recovered", cfg.clouds.recovered}};
    j["channel"] = {{"n_subchannels", cfg.channel.nSubchannels},
                    {"coder", cfg.channel.coder},
                    {"bits_per_scalar", cfg.channel.bitsPerScalar},
                    {"float_layout", cfg.channel.floatLayout},
                    {"symbol_rate_per_subchannel", cfg.channel.symbolRatePerSubchannel}};
    j["latency"] = {
        {"mode", cfg.latency.mode == LatencyConfig::Mode::Analytic ? "analytic" : "measured"},
        {"extract_cost_per_point", cfg.latency.extractCostPerPoint},
        {"render_cost_per_element", cfg.latency.renderCostPerElement}};
    j["out"] = cfg.outDir;
    return j;
}

} // namespace gsar
