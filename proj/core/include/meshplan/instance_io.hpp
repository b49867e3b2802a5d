#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "meshplan/model.hpp"

namespace meshplan {

using ordered_json = nlohmann::ordered_json;

/// Parses, finalizes and validates an instance document.
PlanningInstance parse_instance(const ordered_json& doc);
PlanningInstance parse_instance_text(const std::string& text);
PlanningInstance load_instance(const std::string& path);

/// Fixed field order; serialize-parse round-trips to an equal instance.
ordered_json instance_to_json(const PlanningInstance& inst);

/// FNV-1a 64 over the raw bytes, 16 lowercase hex chars.
std::string fnv1a_hex(const std::string& bytes);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace meshplan
