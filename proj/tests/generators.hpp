// Random instance generators shared by unit and acceptance tests.

#pragma once

#include <random>

#include "stride/lipm.hpp"

namespace gen {

struct PspInstance {
    stride::LocomotionParams parent;  ///< own frame
    stride::StepInput in;
};

/// A parent stance with the apex near (not exactly at) the foot, as happens
/// after a heading change, and a forward step of 5 to 30 cm.
inline PspInstance psp_instance(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto range = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
    PspInstance k;
    k.parent.p_x = range(-0.05, 0.05);
    k.parent.x_apex = k.parent.p_x + range(-0.02, 0.02);
    k.parent.xd_apex = range(0.1, 0.5);
    k.parent.p_y = range(-0.2, 0.2);
    k.parent.y_apex = range(-0.1, 0.1);
    k.parent.yd_apex = range(-0.2, 0.2);
    k.in.p_x = k.parent.x_apex + range(0.05, 0.3);
    k.in.xd_apex = range(0.1, 0.5);
    k.in.yd_apex = range(-0.2, 0.2);
    return k;
}

}  // namespace gen
