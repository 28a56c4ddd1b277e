#pragma once

#include <json.hpp>

#include <string>

namespace gsar {

/// Minimal TOML reader covering the config surface: top-level and dotted
/// [tables], key = value with strings, numbers, booleans and flat arrays.
/// Parsed content is returned as JSON so both config formats share one loader.
nlohmann::json parseTomlLite(const std::string& text);
nlohmann::json loadTomlFile(const std::string& path);

} // namespace gsar
