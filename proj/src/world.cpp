#include "stride/world.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stride {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Triangle wave on [0, span] traversed at unit rate.
double ping_pong(double distance, double span) {
    const double period = 2.0 * span;
    const double phase = std::fmod(distance, period);
    return phase <= span ? phase : period - phase;
}

}  // namespace

Bounds Bounds::from_corners(const std::array<double, 3>& a, const std::array<double, 3>& b) noexcept {
    Bounds out;
    out.x_lo = std::min(a[0], b[0]);
    out.x_hi = std::max(a[0], b[0]);
    out.y_lo = std::min(a[1], b[1]);
    out.y_hi = std::max(a[1], b[1]);
    out.theta_lo = std::min(a[2], b[2]);
    out.theta_hi = std::max(a[2], b[2]);
    return out;
}

OrientedRect obstacle_pose_at(const Obstacle& obs, double t) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("obstacle time must be non-negative");
    }
    OrientedRect pose = obs.shape;
    std::visit(Overloaded{
                   [](const StaticMotion&) {},
                   [&](const LinearMotion& m) {
                       const double speed = m.velocity.norm();
                       if (m.span && speed > 0.0) {
                           const double s = ping_pong(speed * t, *m.span);
                           pose.center = obs.shape.center + (s / speed) * m.velocity;
                       } else {
                           pose.center = obs.shape.center + t * m.velocity;
                       }
                   },
                   [&](const CircularMotion& m) {
                       const double phi = m.phase + m.rate * t;
                       pose.center = m.center + m.radius * Vec2{std::cos(phi), std::sin(phi)};
                   },
               },
               obs.motion);
    return pose;
}

bool disc_intersects_rect(Vec2 center, double radius, const OrientedRect& rect) noexcept {
    // Clamp the disc center to the box in the box frame.
    const double c = std::cos(rect.orientation);
    const double s = std::sin(rect.orientation);
    const Vec2 d = center - rect.center;
    const double lx = c * d.x + s * d.y;
    const double ly = -s * d.x + c * d.y;
    const double qx = std::clamp(lx, -rect.half_extents.x, rect.half_extents.x);
    const double qy = std::clamp(ly, -rect.half_extents.y, rect.half_extents.y);
    const double ex = lx - qx;
    const double ey = ly - qy;
    return ex * ex + ey * ey <= radius * radius;
}

bool is_free(Vec2 point, double t, const World& world) {
    if (!world.bounds.contains(point)) {
        return false;
    }
    return std::none_of(world.obstacles.begin(), world.obstacles.end(), [&](const Obstacle& obs) {
        return disc_intersects_rect(point, world.safety_radius, obstacle_pose_at(obs, t));
    });
}

Branch prune_branch_for_collision(const Branch& branch, std::span<const Vec2> footsteps,
                                  const World& world) {
    if (footsteps.size() != branch.size()) {
        throw std::invalid_argument("footsteps do not align with branch nodes");
    }
    std::size_t keep = 0;
    while (keep < branch.size() && is_free(footsteps[keep], branch.arrival_times[keep], world)) {
        ++keep;
    }
    Branch out = branch;
    out.truncate(keep, Truncation::collision);
    return out;
}

}  // namespace stride
