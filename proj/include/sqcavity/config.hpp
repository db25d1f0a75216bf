#pragma once

// JSON run configuration. Frequencies are given as value / 2pi in GHz
// (or MHz), e.g. "g_over_2pi_GHz": 0.17; they are stored as rad/ns.

#include <filesystem>
#include <json.hpp>

#include "sqcavity/bloch.hpp"

namespace sqcavity {

struct RunConfig {
  SystemParams params;
  IntegratorSettings settings;
  nlohmann::json sweep = nlohmann::json::object();        // optional "sweep" section
  nlohmann::json phase_match = nlohmann::json::object();  // optional "phase_match" section
};

// Throws ConfigError with the offending field name.
RunConfig parse_config(const nlohmann::json& doc);

// Throws IoError if the file cannot be read, ConfigError if it is not valid.
RunConfig load_config(const std::filesystem::path& path);

// Inverse of parse_config for the physical and integrator fields.
nlohmann::ordered_json config_to_json(const RunConfig& cfg);

}  // namespace sqcavity
