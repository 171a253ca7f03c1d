#include "invpdelta/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "invpdelta/core.hpp"

namespace invpdelta {

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
    return std::string(buf);
}

std::string file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read file for checksum: '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a64_hex(ss.str());
}

std::string iso_timestamp_utc() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf);
}

void RunManifest::add_file(const std::string& dir, const std::string& name) {
    files.emplace_back(name, file_checksum(dir + "/" + name));
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["config"] = config_path;
    j["seed"] = seed;
    j["out_dir"] = out_dir;
    j["tool_version"] = tool_version;
    j["timestamp"] = timestamp;
    j["files"] = nlohmann::json::array();
    for (const auto& [name, sum] : files) {
        j["files"].push_back({{"name", name}, {"fnv1a64", sum}});
    }
    return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& man, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write manifest '" + path + "'");
    out << man.to_json();
}

}  // namespace invpdelta
