// Result export: footstep/timing tables, sampled CoM trajectories and a
// top-down SVG of the planning run.

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "stride/planner.hpp"

namespace stride {

enum class StanceSide { left, right };

[[nodiscard]] std::string_view to_string(StanceSide side) noexcept;

struct StepRow {
    std::size_t index{0};
    Vec2 footstep{};
    StanceSide side{StanceSide::right};
    double t_switch{0.0};
    double t_apex{0.0};
    double arrival_time{0.0};
    Config config{};
};

struct SolutionRecord {
    std::vector<StepRow> rows;  ///< row 0 is the start stance
    std::size_t step_count{0};  ///< rows.size() - 1
    double total_duration{0.0};
    std::size_t tree_size{0};
    std::size_t iterations{0};
    std::size_t rewire_accepted{0};
};

/// Stance sides alternate starting from the side implied by the sign of the
/// start foot's lateral offset (negative: right).
[[nodiscard]] SolutionRecord make_solution_record(std::span<const Waypoint> solution,
                                                  const Scenario& scenario,
                                                  const PlanDiagnostics& diagnostics);

struct ComSample {
    double t{0.0};
    Vec2 pos{};
    Vec2 vel{};
    bool endpoint{false};  ///< an apex state closing a step (or the start)
};

/// Global CoM state `tau` seconds into step `i` (1 <= i < solution.size()),
/// 0 <= tau <= duration of that step.
[[nodiscard]] ComSample com_state_in_step(std::span<const Waypoint> solution,
                                          const LipmParams& params, std::size_t i, double tau);

/// Samples the CoM on the global grid t = k dt (k = 1 .. floor(T / dt)) and
/// at every step endpoint (the start apex included), sorted by time.
[[nodiscard]] std::vector<ComSample> sample_com_trajectory(std::span<const Waypoint> solution,
                                                           const LipmParams& params, double dt);

struct SvgLayers {
    bool walls{true};
    bool obstacles{true};
    bool tree{true};
    bool original{true};
    bool rewired{true};
    bool footsteps{true};
    bool com{false};

    /// Parses a comma list such as "walls,tree,rewired"; "all" enables all.
    [[nodiscard]] static SvgLayers parse(const std::string& list);
};

struct ExportOptions {
    bool json{true};
    bool csv{true};
    bool svg{true};
    double dt{0.01};
    SvgLayers layers{};
    std::vector<std::string> defaulted;  ///< echoed into the json
};

[[nodiscard]] nlohmann::ordered_json result_to_json(const PlanResult& result, const Scenario& scenario,
                                                    const ExportOptions& options);
[[nodiscard]] std::string com_csv(std::span<const ComSample> samples);
[[nodiscard]] std::string footsteps_csv(const SolutionRecord& record);
[[nodiscard]] std::string render_svg(const PlanResult& result, const Scenario& scenario,
                                     const SvgLayers& layers, double dt = 0.05);

/// Writes result.json, com.csv, footsteps.csv and plan.svg (as selected) into
/// `out_dir`, creating it if needed. Returns the written paths.
std::vector<std::filesystem::path> export_result(const PlanResult& result, const Scenario& scenario,
                                                 const ExportOptions& options,
                                                 const std::filesystem::path& out_dir);

}  // namespace stride
