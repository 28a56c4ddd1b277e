#include "gsar/base_knowledge.hpp"

#include "gsar/ply.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace gsar {

BaseKnowledge buildBaseKnowledge(Framework framework, const SkeletonGraph& graph,
                                 const SkinBinding& binding, const Pose& rest,
                                 const Vec3& avatarInitial, const PointCloud& stationary,
                                 const Vec3& stationaryPosition) {
    if (rest.size() != graph.size())
        throw std::invalid_argument("rest pose does not match skeleton graph");
    BaseKnowledge bk;
    bk.framework = framework;
    bk.avatarBinding = binding;
    bk.restPose = rest;
    bk.stationaryCloud = stationary;
    bk.stationaryPosition = stationaryPosition;
    if (usesEuler(framework)) {
        bk.graph = graph;
        bk.avatarInitialPosition = avatarInitial;
    }
    return bk;
}

namespace {

nlohmann::json vecJson(const Vec3& v) { return {v.x(), v.y(), v.z()}; }
Vec3 vecFromJson(const nlohmann::json& j) {
    return Vec3(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>());
}

} // namespace

void writeBaseKnowledge(const BaseKnowledge& bk, const std::string& jsonPath) {
    namespace fs = std::filesystem;
    const fs::path jp(jsonPath);
    const fs::path plyPath = jp.parent_path() / (jp.stem().string() + "_stationary.ply");
    plyWrite(bk.stationaryCloud, plyPath.string());

    nlohmann::json j;
    j["framework"] = frameworkName(bk.framework);
    j["stationary_position"] = vecJson(bk.stationaryPosition);
    j["stationary_cloud_ply"] = plyPath.filename().string();
    if (bk.graph) {
        nlohmann::json nodes = nlohmann::json::array();
        for (const auto& n : bk.graph->nodes) {
            nlohmann::json nj;
            nj["id"] = n.id;
            if (n.parent)
                nj["parent"] = *n.parent;
            else
                nj["parent"] = nullptr;
            nj["rest_offset"] = vecJson(n.restOffset);
            nodes.push_back(nj);
        }
        j["skeleton"] = {{"nodes", nodes}};
    }
    if (bk.avatarInitialPosition) j["avatar_initial_position"] = vecJson(*bk.avatarInitialPosition);

    nlohmann::json rest;
    rest["positions"] = nlohmann::json::array();
    rest["quaternions"] = nlohmann::json::array();
    for (int i = 0; i < bk.restPose.size(); ++i) {
        rest["positions"].push_back(vecJson(bk.restPose.positions[i]));
        const auto& q = bk.restPose.rotations[i];
        rest["quaternions"].push_back({q.x(), q.y(), q.z(), q.w()});
    }
    j["rest_pose"] = rest;

    nlohmann::json binding = nlohmann::json::array();
    for (const auto& bp : bk.avatarBinding.points) {
        binding.push_back({{"node", bp.node},
                           {"offset", vecJson(bp.offset)},
                           {"rgb", {bp.rgb[0], bp.rgb[1], bp.rgb[2]}}});
    }
    j["binding"] = binding;

    std::ofstream out(jsonPath);
    if (!out) throw std::runtime_error("cannot open for writing: " + jsonPath);
    out << j.dump(2) << "\n";
}

BaseKnowledge readBaseKnowledge(const std::string& jsonPath) {
    namespace fs = std::filesystem;
    std::ifstream in(jsonPath);
    if (!in) throw std::runtime_error("cannot open: " + jsonPath);
    nlohmann::json j;
    in >> j;

    BaseKnowledge bk;
    bk.framework = parseFramework(j.at("framework").get<std::string>());
    bk.stationaryPosition = vecFromJson(j.at("stationary_position"));
    const fs::path plyPath =
        fs::path(jsonPath).parent_path() / j.at("stationary_cloud_ply").get<std::string>();
    bk.stationaryCloud = plyRead(plyPath.string());

    if (usesEuler(bk.framework)) {
        if (!j.contains("skeleton"))
            throw std::runtime_error("E-GSAR base knowledge requires a skeleton graph");
        SkeletonGraph graph;
        for (const auto& nj : j.at("skeleton").at("nodes")) {
            SkeletonNode n;
            n.id = nj.at("id").get<int>();
            if (!nj.at("parent").is_null()) n.parent = nj.at("parent").get<int>();
            n.restOffset = vecFromJson(nj.at("rest_offset"));
            graph.nodes.push_back(n);
        }
        bk.graph = graph;
        bk.avatarInitialPosition = vecFromJson(j.at("avatar_initial_position"));
    }

    const auto& rest = j.at("rest_pose");
    for (std::size_t i = 0; i < rest.at("positions").size(); ++i) {
        bk.restPose.positions.push_back(vecFromJson(rest.at("positions")[i]));
        const auto& q = rest.at("quaternions")[i];
        bk.restPose.rotations.emplace_back(q.at(3).get<double>(), q.at(0).get<double>(),
                                           q.at(1).get<double>(), q.at(2).get<double>());
    }
    for (const auto& bj : j.at("binding")) {
        BoundPoint bp;
        bp.node = bj.at("node").get<int>();
        bp.offset = vecFromJson(bj.at("offset"));
        const auto& c = bj.at("rgb");
        bp.rgb = {c.at(0).get<std::uint8_t>(), c.at(1).get<std::uint8_t>(),
                  c.at(2).get<std::uint8_t>()};
        bk.avatarBinding.points.push_back(bp);
    }
    return bk;
}

} // namespace gsar
