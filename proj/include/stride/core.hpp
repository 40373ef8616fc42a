// Planar geometry shared by every planner module: configurations, SE(2)
// frames, angle handling and the kinematic parameter set.

#pragma once

#include <cmath>
#include <numbers>

namespace stride {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
    double x{0.0};
    double y{0.0};

    friend Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 v) noexcept { return {s * v.x, s * v.y}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;

    [[nodiscard]] double norm() const noexcept { return std::hypot(x, y); }
};

/// Maps any finite angle into [0, 2π). Throws std::invalid_argument otherwise.
[[nodiscard]] double normalize_angle(double theta);

/// Maps any finite angle into (-π, π].
[[nodiscard]] double wrap_to_pi(double theta);

/// Planar robot configuration (x, y, θ) in the global frame. The heading is
/// kept in [0, 2π); construction rejects non-finite input.
class Config {
public:
    Config() = default;
    Config(double x, double y, double theta);

    [[nodiscard]] double x() const noexcept { return x_; }
    [[nodiscard]] double y() const noexcept { return y_; }
    [[nodiscard]] double theta() const noexcept { return theta_; }
    [[nodiscard]] Vec2 position() const noexcept { return {x_, y_}; }

    friend bool operator==(const Config&, const Config&) = default;

private:
    double x_{0.0};
    double y_{0.0};
    double theta_{0.0};
};

/// An SE(2) frame: origin plus heading, heading normalized to [0, 2π).
class Pose2 {
public:
    Pose2() = default;
    Pose2(Vec2 origin, double theta);
    explicit Pose2(const Config& q) : Pose2(q.position(), q.theta()) {}

    [[nodiscard]] Vec2 origin() const noexcept { return origin_; }
    [[nodiscard]] double theta() const noexcept { return theta_; }

private:
    Vec2 origin_{};
    double theta_{0.0};
};

// Position vectors go through the full rigid transform, velocity vectors
// through the rotation only.
[[nodiscard]] Vec2 to_local(const Pose2& frame, Vec2 p_global);
[[nodiscard]] Vec2 to_global(const Pose2& frame, Vec2 p_local);
[[nodiscard]] Vec2 rotate_to_local(const Pose2& frame, Vec2 v_global) noexcept;
[[nodiscard]] Vec2 rotate_to_global(const Pose2& frame, Vec2 v_local) noexcept;

/// `q` expressed in `frame`: local position and heading relative to the frame.
[[nodiscard]] Pose2 relative_pose(const Pose2& frame, const Config& q);

/// Reachability model borrowed from the wheeled-robot analogy.
struct KinematicParams {
    double r_min{0.5};  ///< minimum turning radius [m]
    double s_max{0.17}; ///< maximum step length [m]
    double V{0.3};      ///< forward apex speed [m/s]

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

}  // namespace stride
