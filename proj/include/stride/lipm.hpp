// Linear inverted pendulum dynamics in closed form and the phase space
// planner that turns a sagittal foot placement plus desired apex velocities
// into step timings and a lateral foot placement.
//
// All quantities are per-axis; the same orbit equations serve the sagittal
// (x) and lateral (y) directions.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace stride {

/// Height surface z = a (x - p_x) + b and gravity.
struct LipmParams {
    double g{9.81};
    double a{0.0};
    double b{1.0};

    void validate() const;
};

/// CoM position and velocity along one axis.
struct PendulumState {
    double pos{0.0};
    double vel{0.0};
};

/// Reasons a step cannot be realized by the pendulum.
enum class Infeasibility {
    non_positive_height,
    degenerate_orbit,     ///< A == 0 on the orbit being timed
    bad_log_argument,
    unreachable_position, ///< negative radicand in the orbit velocity
    repeated_foothold,    ///< p_x1 == p_x2
    zero_apex_time,
    non_forward_step,     ///< p_x2 <= p_x1 or non-positive apex velocity
    backward_switch,      ///< t_switch < 0 or t_apex <= 0
    non_positive_switch_velocity,
};

[[nodiscard]] std::string to_string(Infeasibility reason);

class InfeasibleStep : public std::domain_error {
public:
    explicit InfeasibleStep(Infeasibility reason)
        : std::domain_error("infeasible step: " + to_string(reason)), reason_(reason) {}

    [[nodiscard]] Infeasibility reason() const noexcept { return reason_; }

private:
    Infeasibility reason_;
};

/// Locomotion parameters of one step. Positions and velocities are expressed
/// in a planar frame; as produced by the PSP that frame is the parent node's,
/// in which case x_apex == p_x.
struct LocomotionParams {
    // PSP input
    double p_x{0.0};
    double xd_apex{0.0};
    double yd_apex{0.0};
    // PSP output
    double t_switch{0.0};
    double t_apex{0.0};
    double p_y{0.0};
    double y_apex{0.0};
    // carried apex position, seeds the next step
    double x_apex{0.0};

    [[nodiscard]] double duration() const noexcept { return t_switch + t_apex; }
};

struct StepInput {
    double p_x{0.0};
    double xd_apex{0.0};
    double yd_apex{0.0};
};

struct StepOutput {
    double t_switch{0.0};
    double t_apex{0.0};
    double p_y{0.0};
    double y_apex{0.0};
};

/// Joins a PSP input and output into a full parameter vector (x_apex = p_x).
[[nodiscard]] LocomotionParams compose(const StepInput& in, const StepOutput& out) noexcept;

/// ω = sqrt(g / (a p_x + b)).
[[nodiscard]] double omega(const LipmParams& params, double p_x);

/// Closed-form state after `t` seconds about the stance point `p`. Negative
/// times run the orbit backward.
[[nodiscard]] PendulumState state_at(const PendulumState& s0, double p, double omega, double t);

/// Time at which the orbit through `s0` passes `target`; negative when the
/// target lies earlier on the orbit. Throws InfeasibleStep when A == 0 or the
/// log argument is not positive.
[[nodiscard]] double time_to_state(const PendulumState& s0, double p, double omega,
                                   const PendulumState& target);

/// Velocity on the orbit through `s0` when the CoM is at `x`; `sign` picks
/// the branch. Throws InfeasibleStep when `x` is not reachable.
[[nodiscard]] double velocity_on_orbit(double x, const PendulumState& s0, double p, double omega,
                                       int sign);

/// Position at which the orbits about p1 (through s1) and p2 (through s2)
/// intersect in phase space.
[[nodiscard]] double switching_position(double p1, const PendulumState& s1, double p2,
                                        const PendulumState& s2, double omega);

/// Lateral foot placement that yields velocity `yd_apex` after `t_apex`
/// seconds starting from `y_switch`.
[[nodiscard]] double find_py(const PendulumState& y_switch, double yd_apex, double t_apex,
                             double omega);

/// One PSP step. `parent` must be expressed in the parent node's own frame;
/// the result is in that same frame. Throws InfeasibleStep.
[[nodiscard]] StepOutput psp_step(const LocomotionParams& parent, const StepInput& in,
                                  const LipmParams& params);

/// Non-throwing variant for the planner's inner loop.
[[nodiscard]] std::optional<StepOutput> try_psp_step(const LocomotionParams& parent,
                                                     const StepInput& in, const LipmParams& params,
                                                     Infeasibility* reason = nullptr) noexcept;

}  // namespace stride
