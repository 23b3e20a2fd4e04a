#pragma once

#include <optional>
#include <string>

#include "searrt/planner.hpp"

namespace searrt::scenario {

/// Raised on malformed input; `field` names the offending entry.
struct ScenarioError : std::runtime_error {
    std::string field;
    ScenarioError(std::string field_name, const std::string& message)
        : std::runtime_error(message), field(std::move(field_name)) {}
};

struct ScenarioFile {
    encounter::VesselState own_ship;
    encounter::VesselState target_vessel;
    std::vector<geom::Point> route;
    double d_act = 0.0;   // m
    double t_act = 0.0;   // s
    double r_min = 0.0;   // minimum turning radius, m
    planner::PlannerParams params;  // planner defaults with file overrides applied
    std::string hash;               // content hash of the source file
    std::string description;
};

/// FNV-1a content hash, hex encoded.
std::string content_hash(const std::string& bytes);

ScenarioFile parse_scenario(const std::string& json_text, const std::string& origin = "scenario");
ScenarioFile load_scenario(const std::string& path);

struct BuiltScenario {
    planner::Scenario scenario;
    encounter::EncounterAssessment assessment;
};

/// Classify the encounter and construct the planning scenario. Throws
/// NoActionRequiredError for stand-on/no-risk encounters and ScenarioError
/// when the start position lies inside the computed inner circle.
BuiltScenario build_scenario(const ScenarioFile& file);

}  // namespace searrt::scenario
