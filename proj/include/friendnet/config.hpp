#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "friendnet/casestudies.hpp"

namespace friendnet::io {

/// Canonical JSON form of a plan. Serializing, parsing, and serializing
/// again reproduces identical bytes.
nlohmann::ordered_json plan_to_json(const cases::SimulationPlan& plan);

/// Strict parse: unknown keys anywhere raise ValidationError naming the
/// key and its section.
cases::SimulationPlan plan_from_json(const nlohmann::ordered_json& doc);

cases::SimulationPlan parse_config(const std::filesystem::path& path);

std::string canonical_config_string(const cases::SimulationPlan& plan);

/// FNV-1a 64-bit hash of the canonical config string, as 16 hex digits.
/// Stamped on artifacts so comparisons can refuse mismatched inputs.
std::string config_digest(const cases::SimulationPlan& plan);

}  // namespace friendnet::io
