#pragma once

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>

namespace dds::io {

enum class Format { table, json, csv };
enum class Precision { fast, extended };

struct RunConfig {
    Precision precision = Precision::extended;  // extended is normative
    Format format = Format::table;
    std::optional<std::string> out_path;
    std::optional<std::string> cache_dir;
    std::optional<std::string> pi_digits_path;
    bool no_cache = false;
};

// Overlay `key = value` lines from a config file onto cfg; unknown keys are
// rejected.  Returns false when the file does not exist.
bool apply_config_file(RunConfig& cfg, const std::string& path);

// Defaults -> ./dds.conf -> $DDS_CONFIG.  Flags are overlaid by the caller.
RunConfig load_config();

struct ResultEnvelope {
    std::string command;
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    nlohmann::json diagnostics = nlohmann::json::object();
    std::string tool_version;

    nlohmann::json to_json() const;
    static ResultEnvelope from_json(const nlohmann::json& j);
};

// JSON emission with floating-point numbers at 17 significant digits
// (lossless round trip).  Deterministic: object keys come out sorted.
void emit_json(const nlohmann::json& j, std::ostream& os);
std::string json_string(const nlohmann::json& j);

std::string render(const ResultEnvelope& env, Format format);

// Cache key: stable 64-bit hash of (command, normalized params, version).
std::string cache_key(const ResultEnvelope& env);
std::optional<ResultEnvelope> cache_lookup(const std::string& dir, const std::string& key);
void cache_store(const std::string& dir, const std::string& key, const ResultEnvelope& env);

} // namespace dds::io
