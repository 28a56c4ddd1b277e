#include "gsar/ply.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gsar {

namespace {

[[noreturn]] void parseError(int line, const std::string& msg) {
    throw std::runtime_error("ply parse error at line " + std::to_string(line) + ": " + msg);
}

} // namespace

PointCloud plyRead(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ply file: " + path);

    int lineNo = 0;
    std::string line;
    const auto next = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineNo;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            return true;
        }
        return false;
    };

    if (!next() || line != "ply") parseError(lineNo, "missing ply magic");
    if (!next() || line != "format ascii 1.0") parseError(lineNo, "expected 'format ascii 1.0'");

    long vertexCount = -1;
    std::vector<std::string> properties;
    bool inVertexElement = false;
    while (true) {
        if (!next()) parseError(lineNo, "unterminated header");
        if (line == "end_header") break;
        std::istringstream iss(line);
        std::string tok;
        iss >> tok;
        if (tok == "comment") continue;
        if (tok == "element") {
            std::string name;
            long count = 0;
            if (!(iss >> name >> count)) parseError(lineNo, "malformed element");
            inVertexElement = (name == "vertex");
            if (inVertexElement) vertexCount = count;
        } else if (tok == "property") {
            if (!inVertexElement) continue;
            std::string type, name;
            if (!(iss >> type >> name)) parseError(lineNo, "malformed property");
            properties.push_back(type + " " + name);
        } else {
            parseError(lineNo, "unexpected header token '" + tok + "'");
        }
    }

    if (vertexCount < 0) parseError(lineNo, "missing vertex element");
    const std::vector<std::string> expected = {"float x",    "float y",     "float z",
                                               "uchar red",  "uchar green", "uchar blue"};
    if (properties != expected)
        parseError(lineNo, "vertex properties must be float x,y,z and uchar red,green,blue");
    if (vertexCount == 0) parseError(lineNo, "empty cloud");

    PointCloud cloud;
    cloud.reserve(vertexCount);
    for (long i = 0; i < vertexCount; ++i) {
        if (!next()) parseError(lineNo, "vertex count mismatch: expected " +
                                            std::to_string(vertexCount) + " rows");
        std::istringstream iss(line);
        double x, y, z;
        int r, g, b;
        if (!(iss >> x >> y >> z >> r >> g >> b)) parseError(lineNo, "malformed vertex row");
        if (r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255)
            parseError(lineNo, "color component out of range");
        cloud.push_back({Vec3(x, y, z),
                         {static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                          static_cast<std::uint8_t>(b)}});
    }
    return cloud;
}

void plyWrite(const PointCloud& cloud, const std::string& path) {
    if (cloud.empty()) throw std::invalid_argument("refusing to write empty cloud");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "ply\nformat ascii 1.0\nelement vertex " << cloud.size()
        << "\nproperty float x\nproperty float y\nproperty float z\n"
           "property uchar red\nproperty uchar green\nproperty uchar blue\nend_header\n";
    char buf[128];
    for (const auto& p : cloud) {
        std::snprintf(buf, sizeof(buf), "%.9g %.9g %.9g %d %d %d\n", p.pos.x(), p.pos.y(),
                      p.pos.z(), p.rgb[0], p.rgb[1], p.rgb[2]);
        out << buf;
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace gsar
