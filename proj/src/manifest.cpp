#include "infobound/manifest.hpp"

#include <json.hpp>

#include "infobound/sha1.hpp"

namespace infobound {

std::string RunManifest::to_json(int indent) const {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["config_path"] = config_path;
    j["config"] = nlohmann::json::parse(resolved.snapshot_json());
    j["seed"] = seed;
    j["tool_version"] = tool_version;
    j["input_hash"] = input_hash;
    j["outputs"] = output_paths;
    j["duration_ms"] = duration_ms;
    return j.dump(indent);
}

RunManifest RunManifest::from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    RunManifest m;
    m.subcommand = j.at("subcommand").get<std::string>();
    m.config_path = j.value("config_path", std::string());
    m.resolved = Config::parse_json(j.at("config").dump());
    m.seed = j.at("seed").get<std::uint64_t>();
    m.tool_version = j.value("tool_version", std::string());
    m.input_hash = j.value("input_hash", std::string());
    m.output_paths = j.value("outputs", std::vector<std::string>{});
    m.duration_ms = j.value("duration_ms", 0.0);
    return m;
}

}  // namespace infobound
