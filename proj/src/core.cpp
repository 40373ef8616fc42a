#include "stride/core.hpp"

#include <stdexcept>
#include <string>

namespace stride {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string("non-finite ") + what);
    }
}

}  // namespace

double normalize_angle(double theta) {
    require_finite(theta, "angle");
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // fmod of a tiny negative value lands exactly on 2π after the shift.
    if (r >= kTwoPi) {
        r = 0.0;
    }
    return r;
}

double wrap_to_pi(double theta) {
    double r = normalize_angle(theta);
    if (r > kPi) {
        r -= kTwoPi;
    }
    return r;
}

Config::Config(double x, double y, double theta) : x_(x), y_(y), theta_(normalize_angle(theta)) {
    require_finite(x, "config x");
    require_finite(y, "config y");
}

Pose2::Pose2(Vec2 origin, double theta) : origin_(origin), theta_(normalize_angle(theta)) {
    require_finite(origin.x, "frame origin x");
    require_finite(origin.y, "frame origin y");
}

Vec2 rotate_to_local(const Pose2& frame, Vec2 v) noexcept {
    const double c = std::cos(frame.theta());
    const double s = std::sin(frame.theta());
    return {c * v.x + s * v.y, -s * v.x + c * v.y};
}

Vec2 rotate_to_global(const Pose2& frame, Vec2 v) noexcept {
    const double c = std::cos(frame.theta());
    const double s = std::sin(frame.theta());
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Vec2 to_local(const Pose2& frame, Vec2 p) {
    require_finite(p.x, "point x");
    require_finite(p.y, "point y");
    return rotate_to_local(frame, p - frame.origin());
}

Vec2 to_global(const Pose2& frame, Vec2 p) {
    require_finite(p.x, "point x");
    require_finite(p.y, "point y");
    return rotate_to_global(frame, p) + frame.origin();
}

Pose2 relative_pose(const Pose2& frame, const Config& q) {
    return Pose2(to_local(frame, q.position()), q.theta() - frame.theta());
}

void KinematicParams::validate() const {
    if (!(r_min > 0.0) || !std::isfinite(r_min)) {
        throw std::invalid_argument("r_min must be positive");
    }
    if (!(s_max > 0.0) || !std::isfinite(s_max)) {
        throw std::invalid_argument("s_max must be positive");
    }
    if (!(V > 0.0) || !std::isfinite(V)) {
        throw std::invalid_argument("V must be positive");
    }
    if (!(s_max < kTwoPi * r_min)) {
        throw std::invalid_argument("s_max must be shorter than a full turning circle");
    }
}

}  // namespace stride
