#pragma once

#include <string>

#include "json.hpp"

#include "drbcp/decision.hpp"
#include "drbcp/instances.hpp"
#include "drbcp/uncertainty.hpp"

namespace drbcp {

inline constexpr const char* kResultSchema = "drbcp-result/1";

CombinatorialSystem instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const CombinatorialSystem& system);

CombinatorialSystem load_instance(const std::string& path);
void save_instance(const std::string& path, const CombinatorialSystem& system);

nlohmann::json to_json(const RobustQuote& quote);
// Adds a permutation view for assignment systems.
nlohmann::json to_json(const DecisionReport& report, const CombinatorialSystem* system = nullptr);

void write_json(const std::string& path, const nlohmann::json& doc);

}  // namespace drbcp
