// Spatio-temporal environment: static walls and obstacles on known
// trajectories, queried at the time a footstep is reached.

#pragma once

#include <array>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "stride/core.hpp"
#include "stride/propagation.hpp"

namespace stride {

struct OrientedRect {
    Vec2 center{};
    Vec2 half_extents{0.5, 0.5};
    double orientation{0.0};
};

struct StaticMotion {};

/// Uniform motion from the shape's initial center. With `span` set the
/// obstacle reverses after traveling that distance and returns, forever.
struct LinearMotion {
    Vec2 velocity{};
    std::optional<double> span;
};

/// Center revolves about `center` at `radius`: center + r (cos φ, sin φ),
/// φ = phase + rate t. The box keeps its orientation.
struct CircularMotion {
    Vec2 center{};
    double radius{0.0};
    double rate{0.0};
    double phase{0.0};
};

using Motion = std::variant<StaticMotion, LinearMotion, CircularMotion>;

struct Obstacle {
    OrientedRect shape{};  ///< pose at t = 0
    Motion motion{StaticMotion{}};

    [[nodiscard]] bool is_static() const noexcept {
        return std::holds_alternative<StaticMotion>(motion);
    }
};

/// Per-axis sampling and validity bounds, low <= high on every axis.
struct Bounds {
    double x_lo{0.0}, x_hi{0.0};
    double y_lo{0.0}, y_hi{0.0};
    double theta_lo{0.0}, theta_hi{kTwoPi};

    /// Orders each axis pair so that low <= high.
    [[nodiscard]] static Bounds from_corners(const std::array<double, 3>& a,
                                             const std::array<double, 3>& b) noexcept;
    [[nodiscard]] bool contains(Vec2 p) const noexcept {
        return p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi;
    }
};

struct World {
    std::vector<Obstacle> obstacles;
    Bounds bounds{};
    double safety_radius{0.3};
};

[[nodiscard]] OrientedRect obstacle_pose_at(const Obstacle& obs, double t);

/// Closed-form disc vs oriented rectangle overlap (touching counts).
[[nodiscard]] bool disc_intersects_rect(Vec2 center, double radius, const OrientedRect& rect) noexcept;

/// True when the safety disc around `point` touches no obstacle posed at
/// time `t` and `point` lies inside the world bounds.
[[nodiscard]] bool is_free(Vec2 point, double t, const World& world);

/// Longest prefix of `branch` whose footsteps are free at their arrival
/// times. `footsteps` must align with the branch nodes.
[[nodiscard]] Branch prune_branch_for_collision(const Branch& branch, std::span<const Vec2> footsteps,
                                                const World& world);

}  // namespace stride
