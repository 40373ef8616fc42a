// Turns a sequence of step nodes into the mirror sequence of locomotion
// parameters by chaining PSP steps, each in its parent's local frame.

#pragma once

#include <span>
#include <vector>

#include "stride/core.hpp"
#include "stride/lipm.hpp"

namespace stride {

enum class Truncation { none, dynamic, collision };

struct Branch {
    std::vector<Config> configs;
    /// Locomotion parameters of each config, in its parent's frame.
    std::vector<LocomotionParams> params;
    /// The same parameters re-expressed in the config's own frame; these seed
    /// the children of that config.
    std::vector<LocomotionParams> stances;
    /// Global foot placement of each step.
    std::vector<Vec2> footsteps;
    /// Cumulative arrival time of each config, measured from the start.
    std::vector<double> arrival_times;
    double duration{0.0};
    Truncation truncation{Truncation::none};
    Infeasibility infeasibility{};  ///< meaningful only for dynamic truncation

    [[nodiscard]] std::size_t size() const noexcept { return configs.size(); }
    [[nodiscard]] bool empty() const noexcept { return configs.empty(); }

    /// Keeps the first `n` nodes and recomputes the duration.
    void truncate(std::size_t n, Truncation why);
};

/// Sagittal foot placement and apex velocity of the step from `parent` to
/// `child`, in the parent frame. The child's lateral offset is discarded.
[[nodiscard]] StepInput compute_psp_input(const Config& parent, const Config& child, double V);

/// Re-expresses `m` (given in `from`'s frame) in the frame of `to`, which is
/// itself given in global coordinates. Positions use the full transform,
/// velocities only the rotation.
[[nodiscard]] LocomotionParams express_in_frame(const LocomotionParams& m, const Pose2& from,
                                                const Pose2& to);

/// Global foot placement of a step whose parameters are in `parent`'s frame.
[[nodiscard]] Vec2 footstep_global(const Config& parent, const LocomotionParams& m);

/// Chains PSP steps along `configs`, starting from `root` whose locomotion
/// parameters `seed` are expressed in root's own frame and whose arrival
/// time is `t_seed`. An infeasible step truncates the branch there.
[[nodiscard]] Branch propagate_branch(std::span<const Config> configs, const Config& root,
                                      const LocomotionParams& seed, const LipmParams& params,
                                      double V, double t_seed);

}  // namespace stride
