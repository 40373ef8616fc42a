// Scenario builders shared by the planner, export and acceptance tests.

#pragma once

#include <cmath>
#include <vector>

#include "stride/dubins.hpp"
#include "stride/planner.hpp"

namespace fixture {

inline constexpr double kW = 3.1320919526731650;  // sqrt(9.81)

/// Period of the symmetric straight step: apex at the foot, apex speed v,
/// step length s. Switch halfway, so the period is twice the time to cover
/// s/2 on x(t) = (v/w) sinh(w t).
inline double symmetric_period(double s, double v, double w = kW) {
    return 2.0 * std::asinh(0.5 * s * w / v) / w;
}

/// Walking straight along +x at full speed, feet 10 cm to either side.
inline stride::LocomotionParams steady_start(double x, double y) {
    stride::LocomotionParams m;
    m.p_x = x;
    m.x_apex = x;
    m.xd_apex = 0.3;
    m.p_y = y - 0.1;
    m.y_apex = y;
    return m;
}

/// Empty room with the goal 1.7 m straight ahead.
inline stride::Scenario straight_corridor() {
    stride::Scenario sc;
    sc.name = "straight";
    sc.q_start = {0, 0, 0};
    sc.q_goal = {1.7, 0, 0};
    sc.m_start = steady_start(0, 0);
    sc.world.bounds = stride::Bounds::from_corners({-1, -1.5, 0}, {3, 1.5, stride::kTwoPi});
    sc.planner.goal_bias = 0.99;
    sc.planner.rng_seed = 1;
    sc.planner.rewire_iterations = 200;
    return sc;
}

/// Waypoints obtained by steering through `via` in order from the start.
inline std::vector<stride::Waypoint> route_through(const stride::Scenario& sc,
                                                   const std::vector<stride::Config>& via) {
    std::vector<stride::Waypoint> out{stride::make_root_waypoint(sc.q_start, sc.m_start)};
    for (const auto& target : via) {
        const stride::Waypoint& from = out.back();
        const auto path = stride::shortest_path(from.config, target, sc.kinematics.r_min);
        const auto nodes = stride::intermediate_nodes(path, sc.kinematics.s_max);
        const stride::Branch b = stride::propagate_branch(nodes, from.config, from.stance, sc.lipm,
                                                          sc.kinematics.V, from.arrival_time);
        for (std::size_t j = 0; j < b.size(); ++j) {
            out.push_back({b.configs[j], b.params[j], b.stances[j], b.footsteps[j], b.arrival_times[j]});
        }
        if (b.size() != nodes.size()) {
            break;
        }
    }
    return out;
}

}  // namespace fixture
