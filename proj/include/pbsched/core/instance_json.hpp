#pragma once

#include <pbsched/core/instance.hpp>

#include <json.hpp>

#include <filesystem>

namespace pbsched {

/// {"machines": m, "levels": [α…], "jobs": [{"p": float, "thresholds": [β…]}]}
nlohmann::json instance_to_json(const Instance& instance);

/// Throws std::invalid_argument on schema violations (missing fields, wrong
/// threshold count, invalid bar).
Instance instance_from_json(const nlohmann::json& doc);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const Instance& instance);

} // namespace pbsched
