#include "gsar/io.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace gsar {

namespace {

nlohmann::json loadJson(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

void saveJson(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

} // namespace

SkeletonGraph readSkeleton(const std::string& path) {
    const auto j = loadJson(path);
    if (!j.contains("nodes")) throw std::runtime_error(path + ": missing 'nodes'");
    SkeletonGraph graph;
    for (const auto& nj : j.at("nodes")) {
        SkeletonNode node;
        node.id = nj.at("id").get<int>();
        if (!nj.at("parent").is_null()) node.parent = nj.at("parent").get<int>();
        const auto& off = nj.at("rest_offset");
        node.restOffset = Vec3(off.at(0).get<double>(), off.at(1).get<double>(),
                               off.at(2).get<double>());
        graph.nodes.push_back(node);
    }
    return graph;
}

void writeSkeleton(const SkeletonGraph& graph, const std::string& path) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : graph.nodes) {
        nlohmann::json nj;
        nj["id"] = n.id;
        if (n.parent)
            nj["parent"] = *n.parent;
        else
            nj["parent"] = nullptr;
        nj["rest_offset"] = {n.restOffset.x(), n.restOffset.y(), n.restOffset.z()};
        nodes.push_back(nj);
    }
    saveJson(nlohmann::json{{"nodes", nodes}}, path);
}

AnimationTrace readTrace(const std::string& path) {
    const auto j = loadJson(path);
    AnimationTrace trace;
    trace.fps = j.at("fps").get<double>();
    const int joints = j.at("joint_count").get<int>();
    for (const auto& fj : j.at("frames")) {
        Pose pose;
        const auto& ps = fj.at("positions");
        const auto& qs = fj.at("quaternions");
        if (static_cast<int>(ps.size()) != joints || static_cast<int>(qs.size()) != joints)
            throw std::runtime_error(path + ": frame joint count mismatch");
        for (int i = 0; i < joints; ++i) {
            pose.positions.emplace_back(ps[i].at(0).get<double>(), ps[i].at(1).get<double>(),
                                        ps[i].at(2).get<double>());
            pose.rotations.emplace_back(qs[i].at(3).get<double>(), qs[i].at(0).get<double>(),
                                        qs[i].at(1).get<double>(), qs[i].at(2).get<double>());
        }
        trace.frames.push_back(std::move(pose));
    }
    if (trace.frames.size() < 2) throw std::runtime_error(path + ": trace needs at least 2 frames");
    return trace;
}

void writeTrace(const AnimationTrace& trace, const std::string& path) {
    nlohmann::json j;
    j["fps"] = trace.fps;
    j["joint_count"] = trace.frames.empty() ? 0 : trace.frames.front().size();
    nlohmann::json frames = nlohmann::json::array();
    for (const auto& pose : trace.frames) {
        nlohmann::json positions = nlohmann::json::array();
        nlohmann::json quaternions = nlohmann::json::array();
        for (int i = 0; i < pose.size(); ++i) {
            const auto& p = pose.positions[i];
            const auto& q = pose.rotations[i];
            positions.push_back({p.x(), p.y(), p.z()});
            quaternions.push_back({q.x(), q.y(), q.z(), q.w()});
        }
        frames.push_back({{"positions", positions}, {"quaternions", quaternions}});
    }
    j["frames"] = frames;
    saveJson(j, path);
}

} // namespace gsar
