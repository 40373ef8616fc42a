#include "stride/lipm.hpp"

#include <cmath>

namespace stride {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string("non-finite ") + what);
    }
}

// Non-throwing cores. Each returns nullopt and records the reason on failure
// so that try_psp_step never pays for an exception.
struct Fail {
    Infeasibility* reason;

    std::nullopt_t operator()(Infeasibility r) const noexcept {
        if (reason != nullptr) {
            *reason = r;
        }
        return std::nullopt;
    }
};

std::optional<double> omega_impl(const LipmParams& params, double p_x, Fail fail) noexcept {
    const double height = params.a * p_x + params.b;
    if (!(height > 0.0)) {
        return fail(Infeasibility::non_positive_height);
    }
    return std::sqrt(params.g / height);
}

PendulumState state_at_impl(const PendulumState& s0, double p, double w, double t) noexcept {
    const double a = 0.5 * ((s0.pos - p) + s0.vel / w);
    const double b = 0.5 * ((s0.pos - p) - s0.vel / w);
    const double ep = std::exp(w * t);
    const double em = std::exp(-w * t);
    return {a * ep + b * em + p, w * (a * ep - b * em)};
}

std::optional<double> time_to_state_impl(const PendulumState& s0, double p, double w,
                                         const PendulumState& target, Fail fail) noexcept {
    const double two_a = (s0.pos - p) + s0.vel / w;
    if (two_a == 0.0) {
        return fail(Infeasibility::degenerate_orbit);
    }
    const double ratio = ((target.pos - p) + target.vel / w) / two_a;
    if (!(ratio > 0.0) || !std::isfinite(ratio)) {
        return fail(Infeasibility::bad_log_argument);
    }
    return std::log(ratio) / w;
}

std::optional<double> velocity_on_orbit_impl(double x, const PendulumState& s0, double p, double w,
                                             int sign, Fail fail) noexcept {
    // The printed g/h coefficient is ω² for a flat height surface.
    const double dx = x - p;
    const double dx0 = s0.pos - p;
    const double radicand = w * w * (dx * dx - dx0 * dx0) + s0.vel * s0.vel;
    if (radicand < 0.0) {
        return fail(Infeasibility::unreachable_position);
    }
    return (sign < 0 ? -1.0 : 1.0) * std::sqrt(radicand);
}

std::optional<double> switching_position_impl(double p1, const PendulumState& s1, double p2,
                                              const PendulumState& s2, double w, Fail fail) noexcept {
    if (p1 == p2) {
        return fail(Infeasibility::repeated_foothold);
    }
    const double d1 = s1.pos - p1;
    const double d2 = s2.pos - p2;
    const double c = d1 * d1 - d2 * d2 + (s2.vel * s2.vel - s1.vel * s1.vel) / (w * w);
    return 0.5 * (c / (p2 - p1) + (p1 + p2));
}

std::optional<double> find_py_impl(const PendulumState& ys, double yd_apex, double t_apex, double w,
                                   Fail fail) noexcept {
    const double ep = std::exp(w * t_apex);
    const double em = std::exp(-w * t_apex);
    const double d = 0.5 * w * (em - ep);
    if (d == 0.0) {
        return fail(Infeasibility::zero_apex_time);
    }
    const double c = 0.5 * w * ((ys.pos + ys.vel / w) * ep - (ys.pos - ys.vel / w) * em);
    return (yd_apex - c) / d;
}

std::optional<StepOutput> psp_impl(const LocomotionParams& parent, const StepInput& in,
                                   const LipmParams& params, Fail fail) noexcept {
    if (!(in.p_x > parent.p_x) || !(in.xd_apex > 0.0)) {
        return fail(Infeasibility::non_forward_step);
    }
    const auto w = omega_impl(params, in.p_x, fail);
    if (!w) return std::nullopt;

    const PendulumState x1{parent.x_apex, parent.xd_apex};
    const PendulumState apex2{in.p_x, in.xd_apex};

    const auto x_switch = switching_position_impl(parent.p_x, x1, in.p_x, apex2, *w, fail);
    if (!x_switch) return std::nullopt;
    const auto xd_switch = velocity_on_orbit_impl(*x_switch, x1, parent.p_x, *w, +1, fail);
    if (!xd_switch) return std::nullopt;
    if (!(*xd_switch > 0.0)) {
        return fail(Infeasibility::non_positive_switch_velocity);
    }
    const PendulumState sw{*x_switch, *xd_switch};

    const auto t_switch = time_to_state_impl(x1, parent.p_x, *w, sw, fail);
    if (!t_switch) return std::nullopt;
    // Timed from the next apex, the switch lies in the past.
    const auto t_back = time_to_state_impl(apex2, in.p_x, *w, sw, fail);
    if (!t_back) return std::nullopt;
    const double t_apex = -*t_back;
    if (*t_switch < 0.0 || !(t_apex > 0.0)) {
        return fail(Infeasibility::backward_switch);
    }

    const PendulumState y1{parent.y_apex, parent.yd_apex};
    const PendulumState y_switch = state_at_impl(y1, parent.p_y, *w, *t_switch);
    const auto p_y = find_py_impl(y_switch, in.yd_apex, t_apex, *w, fail);
    if (!p_y) return std::nullopt;
    const PendulumState y_apex = state_at_impl(y_switch, *p_y, *w, t_apex);

    StepOutput out{*t_switch, t_apex, *p_y, y_apex.pos};
    if (!std::isfinite(out.t_switch) || !std::isfinite(out.t_apex) || !std::isfinite(out.p_y) ||
        !std::isfinite(out.y_apex)) {
        return fail(Infeasibility::bad_log_argument);
    }
    return out;
}

// `reason` is read only after the impl call has filled it in.
template <typename T>
T or_throw(std::optional<T> v, const Infeasibility& reason) {
    if (!v) {
        throw InfeasibleStep(reason);
    }
    return *v;
}

}  // namespace

std::string to_string(Infeasibility reason) {
    switch (reason) {
        case Infeasibility::non_positive_height: return "non-positive pendulum height";
        case Infeasibility::degenerate_orbit: return "degenerate orbit (A == 0)";
        case Infeasibility::bad_log_argument: return "non-positive log argument";
        case Infeasibility::unreachable_position: return "position unreachable on orbit";
        case Infeasibility::repeated_foothold: return "repeated foothold";
        case Infeasibility::zero_apex_time: return "zero apex time";
        case Infeasibility::non_forward_step: return "non-forward step";
        case Infeasibility::backward_switch: return "switch not between apexes";
        case Infeasibility::non_positive_switch_velocity: return "non-positive switch velocity";
    }
    return "unknown";
}

void LipmParams::validate() const {
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw std::invalid_argument("g must be positive");
    }
    if (!std::isfinite(a)) {
        throw std::invalid_argument("a must be finite");
    }
    if (!std::isfinite(b)) {
        throw std::invalid_argument("b must be finite");
    }
}

LocomotionParams compose(const StepInput& in, const StepOutput& out) noexcept {
    LocomotionParams m;
    m.p_x = in.p_x;
    m.xd_apex = in.xd_apex;
    m.yd_apex = in.yd_apex;
    m.t_switch = out.t_switch;
    m.t_apex = out.t_apex;
    m.p_y = out.p_y;
    m.y_apex = out.y_apex;
    m.x_apex = in.p_x;
    return m;
}

double omega(const LipmParams& params, double p_x) {
    require_finite(p_x, "foot placement");
    Infeasibility r{};
    return or_throw(omega_impl(params, p_x, Fail{&r}), r);
}

PendulumState state_at(const PendulumState& s0, double p, double w, double t) {
    require_finite(s0.pos, "position");
    require_finite(s0.vel, "velocity");
    require_finite(p, "stance point");
    require_finite(t, "time");
    if (!(w > 0.0) || !std::isfinite(w)) {
        throw std::invalid_argument("omega must be positive");
    }
    return state_at_impl(s0, p, w, t);
}

double time_to_state(const PendulumState& s0, double p, double w, const PendulumState& target) {
    require_finite(target.pos, "target position");
    require_finite(target.vel, "target velocity");
    if (!(w > 0.0) || !std::isfinite(w)) {
        throw std::invalid_argument("omega must be positive");
    }
    Infeasibility r{};
    return or_throw(time_to_state_impl(s0, p, w, target, Fail{&r}), r);
}

double velocity_on_orbit(double x, const PendulumState& s0, double p, double w, int sign) {
    require_finite(x, "position");
    Infeasibility r{};
    return or_throw(velocity_on_orbit_impl(x, s0, p, w, sign, Fail{&r}), r);
}

double switching_position(double p1, const PendulumState& s1, double p2, const PendulumState& s2,
                          double w) {
    Infeasibility r{};
    return or_throw(switching_position_impl(p1, s1, p2, s2, w, Fail{&r}), r);
}

double find_py(const PendulumState& y_switch, double yd_apex, double t_apex, double w) {
    require_finite(t_apex, "apex time");
    Infeasibility r{};
    return or_throw(find_py_impl(y_switch, yd_apex, t_apex, w, Fail{&r}), r);
}

StepOutput psp_step(const LocomotionParams& parent, const StepInput& in, const LipmParams& params) {
    Infeasibility r{};
    return or_throw(psp_impl(parent, in, params, Fail{&r}), r);
}

std::optional<StepOutput> try_psp_step(const LocomotionParams& parent, const StepInput& in,
                                       const LipmParams& params, Infeasibility* reason) noexcept {
    return psp_impl(parent, in, params, Fail{reason});
}

}  // namespace stride
