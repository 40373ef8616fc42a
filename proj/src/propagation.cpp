#include "stride/propagation.hpp"

#include <cmath>

namespace stride {

void Branch::truncate(std::size_t n, Truncation why) {
    if (n >= configs.size()) {
        return;
    }
    configs.resize(n);
    params.resize(n);
    stances.resize(n);
    footsteps.resize(n);
    arrival_times.resize(n);
    duration = 0.0;
    for (const auto& m : params) {
        duration += m.duration();
    }
    truncation = why;
}

StepInput compute_psp_input(const Config& parent, const Config& child, double V) {
    const Vec2 local = to_local(Pose2(parent), child.position());
    const double dtheta = wrap_to_pi(child.theta() - parent.theta());
    return {local.x, V * std::cos(dtheta), V * std::sin(dtheta)};
}

LocomotionParams express_in_frame(const LocomotionParams& m, const Pose2& from, const Pose2& to) {
    const Vec2 foot = to_local(to, to_global(from, {m.p_x, m.p_y}));
    const Vec2 apex = to_local(to, to_global(from, {m.x_apex, m.y_apex}));
    const Vec2 vel = rotate_to_local(to, rotate_to_global(from, {m.xd_apex, m.yd_apex}));
    LocomotionParams out = m;
    out.p_x = foot.x;
    out.p_y = foot.y;
    out.x_apex = apex.x;
    out.y_apex = apex.y;
    out.xd_apex = vel.x;
    out.yd_apex = vel.y;
    return out;
}

Vec2 footstep_global(const Config& parent, const LocomotionParams& m) {
    return to_global(Pose2(parent), {m.p_x, m.p_y});
}

Branch propagate_branch(std::span<const Config> configs, const Config& root,
                        const LocomotionParams& seed, const LipmParams& params, double V,
                        double t_seed) {
    Branch branch;
    branch.configs.reserve(configs.size());
    branch.params.reserve(configs.size());
    branch.stances.reserve(configs.size());
    branch.footsteps.reserve(configs.size());
    branch.arrival_times.reserve(configs.size());

    Config parent = root;
    LocomotionParams parent_local = seed;
    double t = t_seed;
    for (const Config& q : configs) {
        const StepInput in = compute_psp_input(parent, q, V);
        Infeasibility why{};
        const auto out = try_psp_step(parent_local, in, params, &why);
        if (!out) {
            branch.truncation = Truncation::dynamic;
            branch.infeasibility = why;
            break;
        }
        const LocomotionParams m = compose(in, *out);
        t += m.duration();
        branch.duration += m.duration();
        branch.configs.push_back(q);
        branch.params.push_back(m);
        branch.footsteps.push_back(footstep_global(parent, m));
        branch.arrival_times.push_back(t);
        parent_local = express_in_frame(m, Pose2(parent), Pose2(q));
        branch.stances.push_back(parent_local);
        parent = q;
    }
    return branch;
}

}  // namespace stride
