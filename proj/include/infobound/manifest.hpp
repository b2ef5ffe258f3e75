#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "infobound/config.hpp"

namespace infobound {

inline constexpr const char* kToolVersion = "0.1.0";

/// Record of a CLI run: the resolved config snapshot, seed, outputs, and a
/// git-style content hash of the inputs. Re-running from the snapshot
/// reproduces every output file byte-identically.
struct RunManifest {
    std::string subcommand;
    std::string config_path;       // empty when flags only
    Config resolved;               // full snapshot including the seed
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    std::string input_hash;        // git blob hash of the snapshot
    std::vector<std::string> output_paths;
    double duration_ms = 0.0;

    std::string to_json(int indent = 2) const;
    static RunManifest from_json(const std::string& json_text);
};

}  // namespace infobound
