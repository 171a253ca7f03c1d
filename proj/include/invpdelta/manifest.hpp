#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace invpdelta {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a, 64-bit. Cheap content fingerprint for run manifests; not a
/// cryptographic hash.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::string fnv1a64_hex(const std::string& bytes);

/// Digest of a file's raw bytes. Throws ConfigError when unreadable.
std::string file_checksum(const std::string& path);

/// "YYYY-MM-DDTHH:MM:SSZ", UTC.
std::string iso_timestamp_utc();

/// Record of one CLI invocation: enough to re-run it and to detect
/// post-hoc edits of its outputs.
struct RunManifest {
    std::string command;
    std::string config_path;  // empty when the subcommand takes none
    std::uint64_t seed = 0;
    std::string out_dir;
    std::string tool_version = kToolVersion;
    std::string timestamp;
    // (relative file name, fnv1a64 hex digest)
    std::vector<std::pair<std::string, std::string>> files;

    void add_file(const std::string& dir, const std::string& name);
    std::string to_json() const;
};

void write_manifest(const RunManifest& man, const std::string& path);

}  // namespace invpdelta
