#include "dds/envelope.hpp"

#include "dds/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace dds::io {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Format parse_format(const std::string& v) {
    if (v == "table") return Format::table;
    if (v == "json") return Format::json;
    if (v == "csv") return Format::csv;
    throw ParseError("unknown format '" + v + "' (expected table|json|csv)");
}

Precision parse_precision(const std::string& v) {
    if (v == "fast") return Precision::fast;
    if (v == "extended") return Precision::extended;
    throw ParseError("unknown precision '" + v + "' (expected fast|extended)");
}

void emit_number(double d, std::ostream& os) {
    if (d == static_cast<long long>(d) && std::abs(d) < 1e15) {
        os << static_cast<long long>(d) << ".0";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    os << buf;
}

void emit(const nlohmann::json& j, std::ostream& os) {
    using nlohmann::json;
    switch (j.type()) {
        case json::value_t::object: {
            os << '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ',';
                first = false;
                os << json(it.key()).dump() << ':';
                emit(it.value(), os);
            }
            os << '}';
            break;
        }
        case json::value_t::array: {
            os << '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) os << ',';
                first = false;
                emit(v, os);
            }
            os << ']';
            break;
        }
        case json::value_t::number_float:
            emit_number(j.get<double>(), os);
            break;
        default:
            os << j.dump();
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

std::string scalar_to_string(const nlohmann::json& v) {
    std::ostringstream os;
    emit(v, os);
    std::string s = os.str();
    if (!s.empty() && s.front() == '"') s = v.get<std::string>();
    return s;
}

} // namespace

bool apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) return false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "precision") cfg.precision = parse_precision(val);
        else if (key == "format") cfg.format = parse_format(val);
        else if (key == "out_path") cfg.out_path = val;
        else if (key == "cache_dir") cfg.cache_dir = val;
        else if (key == "pi_digits_path") cfg.pi_digits_path = val;
        else throw ParseError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    return true;
}

RunConfig load_config() {
    RunConfig cfg;
    apply_config_file(cfg, "dds.conf");
    if (const char* env = std::getenv("DDS_CONFIG")) {
        if (*env && !apply_config_file(cfg, env))
            throw ParseError(std::string("DDS_CONFIG points to unreadable file: ") + env);
    }
    return cfg;
}

nlohmann::json ResultEnvelope::to_json() const {
    return {{"command", command},
            {"params", params},
            {"results", results},
            {"diagnostics", diagnostics},
            {"tool_version", tool_version}};
}

ResultEnvelope ResultEnvelope::from_json(const nlohmann::json& j) {
    ResultEnvelope env;
    env.command = j.at("command").get<std::string>();
    env.params = j.at("params");
    env.results = j.at("results");
    env.diagnostics = j.at("diagnostics");
    env.tool_version = j.at("tool_version").get<std::string>();
    return env;
}

void emit_json(const nlohmann::json& j, std::ostream& os) { emit(j, os); }

std::string json_string(const nlohmann::json& j) {
    std::ostringstream os;
    emit(j, os);
    return os.str();
}

namespace {

std::string render_table(const ResultEnvelope& env) {
    std::ostringstream os;
    os << "command: " << env.command << "\n";
    auto section = [&os](const char* name, const nlohmann::json& obj) {
        if (obj.empty()) return;
        os << name << ":\n";
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            os << "  " << it.key() << " = ";
            if (it.value().is_array() || it.value().is_object())
                os << json_string(it.value());
            else
                os << scalar_to_string(it.value());
            os << "\n";
        }
    };
    section("params", env.params);
    section("results", env.results);
    section("diagnostics", env.diagnostics);
    os << "tool_version: " << env.tool_version << "\n";
    return os.str();
}

std::string render_csv(const ResultEnvelope& env) {
    std::ostringstream os;
    // Commands producing row data put it under results["rows"]; everything
    // else flattens scalar results into one record.
    if (env.results.contains("rows") && env.results["rows"].is_array() &&
        !env.results["rows"].empty()) {
        const auto& rows = env.results["rows"];
        bool first = true;
        for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
            if (!first) os << ',';
            first = false;
            os << csv_escape(it.key());
        }
        os << "\n";
        for (const auto& row : rows) {
            first = true;
            for (auto it = row.begin(); it != row.end(); ++it) {
                if (!first) os << ',';
                first = false;
                os << csv_escape(scalar_to_string(it.value()));
            }
            os << "\n";
        }
        return os.str();
    }
    bool first = true;
    for (auto it = env.results.begin(); it != env.results.end(); ++it) {
        if (it.value().is_array() || it.value().is_object()) continue;
        if (!first) os << ',';
        first = false;
        os << csv_escape(it.key());
    }
    os << "\n";
    first = true;
    for (auto it = env.results.begin(); it != env.results.end(); ++it) {
        if (it.value().is_array() || it.value().is_object()) continue;
        if (!first) os << ',';
        first = false;
        os << csv_escape(scalar_to_string(it.value()));
    }
    os << "\n";
    return os.str();
}

} // namespace

std::string render(const ResultEnvelope& env, Format format) {
    switch (format) {
        case Format::json: {
            std::string s = json_string(env.to_json());
            s += "\n";
            return s;
        }
        case Format::csv: return render_csv(env);
        case Format::table: default: return render_table(env);
    }
}

std::string cache_key(const ResultEnvelope& env) {
    std::string material = env.command + "\n" + json_string(env.params) + "\n" +
                           env.tool_version;
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
    for (unsigned char c : material) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::optional<ResultEnvelope> cache_lookup(const std::string& dir, const std::string& key) {
    std::filesystem::path p = std::filesystem::path(dir) / (key + ".json");
    std::ifstream in(p);
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
        in >> j;
        return ResultEnvelope::from_json(j);
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;  // corrupt entry: treat as miss
    }
}

void cache_store(const std::string& dir, const std::string& key, const ResultEnvelope& env) {
    std::filesystem::path d(dir);
    std::filesystem::create_directories(d);
    std::filesystem::path target = d / (key + ".json");
    // unique temp name so concurrent writers cannot trample each other;
    // rename is atomic on the same filesystem
    std::filesystem::path tmp =
        d / (key + ".json.tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp);
        emit_json(env.to_json(), out);
        out << "\n";
    }
    std::filesystem::rename(tmp, target);
}

} // namespace dds::io
