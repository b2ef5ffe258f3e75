#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace infobound {

/// Flat key-value configuration. Text files use `key = value` lines with
/// optional `[section]` headers that prefix keys as `section.key`; JSON files
/// are accepted interchangeably (nested objects flatten to dotted keys).
class Config {
public:
    static Config parse_text(const std::string& text);
    static Config parse_json(const std::string& text);
    static Config load(const std::string& path);  // dispatches on content

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    std::vector<std::int64_t> get_int_list(const std::string& key) const;  // comma separated

    void set(const std::string& key, const std::string& value);
    const std::map<std::string, std::string>& values() const { return values_; }

    // Canonical snapshot (sorted flat JSON object), used by manifests.
    std::string snapshot_json() const;

private:
    std::map<std::string, std::string> values_;
};

}  // namespace infobound
