// Scenario files: a single versioned JSON document describing the bounds,
// start and goal, gait seed, kinematic and pendulum parameters, obstacles
// and planner knobs.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "stride/planner.hpp"

namespace stride {

inline constexpr int kScenarioSchemaVersion = 1;

/// Parse or validation failure; `field()` names the offending entry, e.g.
/// "kinematics.V" or "world.obstacles[2].half_extents".
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct LoadedScenario {
    Scenario scenario;
    /// Optional fields that were absent and took their default value.
    std::vector<std::string> defaulted;
};

/// Accepts either a scenario document or a result document that embeds one
/// under "scenario".
[[nodiscard]] LoadedScenario parse_scenario(const nlohmann::ordered_json& doc);
[[nodiscard]] LoadedScenario load_scenario(const std::filesystem::path& path);

/// Fully resolved document; parsing it back yields an identical Scenario.
[[nodiscard]] nlohmann::ordered_json scenario_to_json(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

[[nodiscard]] bool operator==(const Scenario& a, const Scenario& b);

}  // namespace stride
