#include "gsar/toml_lite.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gsar {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::runtime_error("toml parse error at line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::string stripComment(const std::string& s) {
    bool inStr = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') inStr = !inStr;
        if (s[i] == '#' && !inStr) return s.substr(0, i);
    }
    return s;
}

nlohmann::json parseScalar(const std::string& tok, int line) {
    if (tok.empty()) fail(line, "empty value");
    if (tok.front() == '"') {
        if (tok.size() < 2 || tok.back() != '"') fail(line, "unterminated string");
        return tok.substr(1, tok.size() - 2);
    }
    if (tok == "true") return true;
    if (tok == "false") return false;
    try {
        if (tok.find_first_of(".eE") != std::string::npos &&
            tok.find_first_not_of("+-0123456789.eE") == std::string::npos) {
            std::size_t used = 0;
            const double d = std::stod(tok, &used);
            if (used == tok.size()) return d;
        }
        std::size_t used = 0;
        const long long v = std::stoll(tok, &used);
        if (used == tok.size()) return v;
        const double d = std::stod(tok, &used);
        if (used == tok.size()) return d;
    } catch (const std::exception&) {
    }
    fail(line, "cannot parse value '" + tok + "'");
}

std::vector<std::string> splitTopLevel(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    bool inStr = false;
    int depth = 0;
    for (char c : s) {
        if (c == '"') inStr = !inStr;
        if (!inStr) {
            if (c == '[') ++depth;
            if (c == ']') --depth;
            if (c == sep && depth == 0) {
                parts.push_back(cur);
                cur.clear();
                continue;
            }
        }
        cur += c;
    }
    if (!trim(cur).empty()) parts.push_back(cur);
    return parts;
}

nlohmann::json parseValue(const std::string& raw, int line) {
    const std::string v = trim(raw);
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']') fail(line, "unterminated array");
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& item : splitTopLevel(v.substr(1, v.size() - 2), ','))
            arr.push_back(parseValue(item, line));
        return arr;
    }
    return parseScalar(v, line);
}

} // namespace

nlohmann::json parseTomlLite(const std::string& text) {
    nlohmann::json root = nlohmann::json::object();
    nlohmann::json* table = &root;
    std::istringstream in(text);
    std::string rawLine;
    int lineNo = 0;
    while (std::getline(in, rawLine)) {
        ++lineNo;
        const std::string line = trim(stripComment(rawLine));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineNo, "unterminated table header");
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (name.empty()) fail(lineNo, "empty table name");
            table = &root;
            std::istringstream parts(name);
            std::string part;
            while (std::getline(parts, part, '.')) {
                part = trim(part);
                if (part.empty()) fail(lineNo, "empty table path component");
                table = &(*table)[part];
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineNo, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) fail(lineNo, "empty key");
        (*table)[key] = parseValue(line.substr(eq + 1), lineNo);
    }
    return root;
}

nlohmann::json loadTomlFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseTomlLite(buf.str());
}

} // namespace gsar
