#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "invpdelta/core.hpp"

namespace invpdelta {

/// Flat key = value text with dotted section prefixes ("mesh.preset"),
/// '#' comments and blank lines. Keys are unique; a duplicate is an error
/// so that sweep configs cannot silently shadow entries.
class Config {
  public:
    Config() = default;

    static Config parse(std::istream& in, const std::string& origin);
    static Config load(const std::string& path);

    bool has(const std::string& key) const;

    /// Throws ConfigError when the key is absent.
    std::string get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;

    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int_or(const std::string& key, int fallback) const;
    std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
    std::string origin_ = "<none>";
};

}  // namespace invpdelta
