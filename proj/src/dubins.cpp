#include "stride/dubins.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stride {

namespace {

// Arc angles within this distance of a full turn are rounding noise around 0.
constexpr double kFullTurnSnap = 1e-9;
constexpr double kCoincidentTol = 1e-12;

double mod2pi(double a) {
    double r = normalize_angle(a);
    if (kTwoPi - r < kFullTurnSnap) {
        r = 0.0;
    }
    return r;
}

enum class Seg { L, S, R };

std::array<Seg, 3> segment_types(DubinsFamily f) {
    switch (f) {
        case DubinsFamily::LSL: return {Seg::L, Seg::S, Seg::L};
        case DubinsFamily::RSR: return {Seg::R, Seg::S, Seg::R};
        case DubinsFamily::LSR: return {Seg::L, Seg::S, Seg::R};
        case DubinsFamily::RSL: return {Seg::R, Seg::S, Seg::L};
        case DubinsFamily::RLR: return {Seg::R, Seg::L, Seg::R};
        case DubinsFamily::LRL: return {Seg::L, Seg::R, Seg::L};
    }
    return {Seg::L, Seg::S, Seg::L};
}

struct Normalized {
    double alpha;
    double beta;
    double d;
    double sa, ca, sb, cb, c_ab;
};

// Normalized parameters (t, p, q) for each family; all in units of r_min.
std::optional<std::array<double, 3>> solve_normalized(DubinsFamily f, const Normalized& n) {
    const double d = n.d;
    switch (f) {
        case DubinsFamily::LSL: {
            const double p_sq = 2.0 + d * d - 2.0 * n.c_ab + 2.0 * d * (n.sa - n.sb);
            if (p_sq < 0.0) return std::nullopt;
            const double tmp = std::atan2(n.cb - n.ca, d + n.sa - n.sb);
            return std::array{mod2pi(tmp - n.alpha), std::sqrt(p_sq), mod2pi(n.beta - tmp)};
        }
        case DubinsFamily::RSR: {
            const double p_sq = 2.0 + d * d - 2.0 * n.c_ab + 2.0 * d * (n.sb - n.sa);
            if (p_sq < 0.0) return std::nullopt;
            const double tmp = std::atan2(n.ca - n.cb, d - n.sa + n.sb);
            return std::array{mod2pi(n.alpha - tmp), std::sqrt(p_sq), mod2pi(tmp - n.beta)};
        }
        case DubinsFamily::LSR: {
            const double p_sq = -2.0 + d * d + 2.0 * n.c_ab + 2.0 * d * (n.sa + n.sb);
            if (p_sq < 0.0) return std::nullopt;
            const double p = std::sqrt(p_sq);
            const double tmp = std::atan2(-n.ca - n.cb, d + n.sa + n.sb) - std::atan2(-2.0, p);
            return std::array{mod2pi(tmp - n.alpha), p, mod2pi(tmp - n.beta)};
        }
        case DubinsFamily::RSL: {
            const double p_sq = -2.0 + d * d + 2.0 * n.c_ab - 2.0 * d * (n.sa + n.sb);
            if (p_sq < 0.0) return std::nullopt;
            const double p = std::sqrt(p_sq);
            const double tmp = std::atan2(n.ca + n.cb, d - n.sa - n.sb) - std::atan2(2.0, p);
            return std::array{mod2pi(n.alpha - tmp), p, mod2pi(n.beta - tmp)};
        }
        case DubinsFamily::RLR: {
            const double tmp = (6.0 - d * d + 2.0 * n.c_ab + 2.0 * d * (n.sa - n.sb)) / 8.0;
            if (std::abs(tmp) > 1.0) return std::nullopt;
            const double p = mod2pi(kTwoPi - std::acos(tmp));
            const double t = mod2pi(n.alpha - std::atan2(n.ca - n.cb, d - n.sa + n.sb) + p / 2.0);
            return std::array{t, p, mod2pi(n.alpha - n.beta - t + p)};
        }
        case DubinsFamily::LRL: {
            const double tmp = (6.0 - d * d + 2.0 * n.c_ab + 2.0 * d * (n.sb - n.sa)) / 8.0;
            if (std::abs(tmp) > 1.0) return std::nullopt;
            const double p = mod2pi(kTwoPi - std::acos(tmp));
            const double t = mod2pi(-n.alpha - std::atan2(n.ca - n.cb, d + n.sa - n.sb) + p / 2.0);
            return std::array{t, p, mod2pi(n.beta - n.alpha - t + p)};
        }
    }
    return std::nullopt;
}

Normalized normalize(const Config& from, const Config& to, double r_min) {
    const double dx = to.x() - from.x();
    const double dy = to.y() - from.y();
    const double phi = (dx == 0.0 && dy == 0.0) ? 0.0 : std::atan2(dy, dx);
    Normalized n{};
    n.d = std::hypot(dx, dy) / r_min;
    n.alpha = normalize_angle(from.theta() - phi);
    n.beta = normalize_angle(to.theta() - phi);
    n.sa = std::sin(n.alpha);
    n.ca = std::cos(n.alpha);
    n.sb = std::sin(n.beta);
    n.cb = std::cos(n.beta);
    n.c_ab = std::cos(n.alpha - n.beta);
    return n;
}

void check_inputs(const Config& a, const Config& b, double r_min) {
    if (!(r_min > 0.0) || !std::isfinite(r_min)) {
        throw std::invalid_argument("r_min must be positive and finite");
    }
    // Config already rejects non-finite coordinates at construction; a
    // default-constructed one is finite too.
    (void)a;
    (void)b;
}

bool coincident(const Config& a, const Config& b) {
    return std::abs(a.x() - b.x()) <= kCoincidentTol && std::abs(a.y() - b.y()) <= kCoincidentTol &&
           std::abs(wrap_to_pi(a.theta() - b.theta())) <= kCoincidentTol;
}

struct Cursor {
    double x, y, theta;
};

Cursor advance(Cursor c, Seg type, double length, double r) {
    switch (type) {
        case Seg::S:
            return {c.x + length * std::cos(c.theta), c.y + length * std::sin(c.theta), c.theta};
        case Seg::L: {
            const double phi = length / r;
            return {c.x + r * (std::sin(c.theta + phi) - std::sin(c.theta)),
                    c.y - r * (std::cos(c.theta + phi) - std::cos(c.theta)), c.theta + phi};
        }
        case Seg::R: {
            const double phi = length / r;
            return {c.x - r * (std::sin(c.theta - phi) - std::sin(c.theta)),
                    c.y + r * (std::cos(c.theta - phi) - std::cos(c.theta)), c.theta - phi};
        }
    }
    return c;
}

}  // namespace

std::string_view to_string(DubinsFamily f) noexcept {
    switch (f) {
        case DubinsFamily::LSL: return "LSL";
        case DubinsFamily::RSR: return "RSR";
        case DubinsFamily::LSR: return "LSR";
        case DubinsFamily::RSL: return "RSL";
        case DubinsFamily::RLR: return "RLR";
        case DubinsFamily::LRL: return "LRL";
    }
    return "?";
}

double DubinsPath::segment_length(int i) const noexcept {
    if (i == 1 && !has_middle_arc(family)) {
        return seg_params[1];
    }
    return r_min * seg_params[static_cast<std::size_t>(i)];
}

std::optional<DubinsPath> solve_family(DubinsFamily family, const Config& q_from, const Config& q_to,
                                       double r_min) {
    check_inputs(q_from, q_to, r_min);
    const auto tpq = solve_normalized(family, normalize(q_from, q_to, r_min));
    if (!tpq) {
        return std::nullopt;
    }
    DubinsPath path;
    path.family = family;
    path.r_min = r_min;
    path.start = q_from;
    path.end = q_to;
    const auto [t, p, q] = *tpq;
    // Length: r_min (|θ1| + |θ2|) + l_tangent; arc-arc-arc families add the middle arc.
    if (has_middle_arc(family)) {
        path.seg_params = {t, p, q};
        path.total_length = r_min * (t + p + q);
    } else {
        path.seg_params = {t, p * r_min, q};
        path.total_length = r_min * (t + q) + p * r_min;
    }
    return path;
}

DubinsPath shortest_path(const Config& q_from, const Config& q_to, double r_min) {
    check_inputs(q_from, q_to, r_min);
    if (coincident(q_from, q_to)) {
        DubinsPath path;
        path.r_min = r_min;
        path.start = q_from;
        path.end = q_to;
        return path;
    }
    const Normalized n = normalize(q_from, q_to, r_min);
    std::optional<DubinsPath> best;
    for (const DubinsFamily f : kDubinsFamilies) {
        const auto tpq = solve_normalized(f, n);
        if (!tpq) {
            continue;
        }
        const auto [t, p, q] = *tpq;
        const double length = r_min * (t + p + q);
        if (!best || length < best->total_length) {
            DubinsPath path;
            path.family = f;
            path.r_min = r_min;
            path.start = q_from;
            path.end = q_to;
            path.seg_params = has_middle_arc(f) ? std::array{t, p, q} : std::array{t, p * r_min, q};
            path.total_length = length;
            best = path;
        }
    }
    if (!best) {
        // LSL and RSR always admit a solution; reaching here means the input
        // was numerically pathological.
        throw std::runtime_error("no Dubins family admits a solution");
    }
    return *best;
}

Config point_at_arclength(const DubinsPath& path, double s) {
    if (!std::isfinite(s) || s < 0.0 || s > path.total_length) {
        throw std::out_of_range("arclength outside [0, total_length]");
    }
    if (s == path.total_length) {
        return path.end;
    }
    const auto types = segment_types(path.family);
    Cursor c{path.start.x(), path.start.y(), path.start.theta()};
    double remaining = s;
    for (int i = 0; i < 3; ++i) {
        const double len = path.segment_length(i);
        const double step = std::min(len, remaining);
        c = advance(c, types[static_cast<std::size_t>(i)], step, path.r_min);
        remaining -= step;
        if (remaining <= 0.0) {
            break;
        }
    }
    return {c.x, c.y, c.theta};
}

std::vector<Config> intermediate_nodes(const DubinsPath& path, double s_max) {
    if (!(s_max > 0.0) || !std::isfinite(s_max)) {
        throw std::invalid_argument("s_max must be positive");
    }
    if (path.degenerate()) {
        return {};
    }
    // Ratios that are an exact multiple of s_max up to rounding must not gain
    // an extra node.
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(path.total_length / s_max - 1e-9)));
    const double spacing = path.total_length / static_cast<double>(n);
    std::vector<Config> nodes;
    nodes.reserve(n);
    for (std::size_t j = 1; j < n; ++j) {
        nodes.push_back(point_at_arclength(path, spacing * static_cast<double>(j)));
    }
    nodes.push_back(path.end);
    return nodes;
}

}  // namespace stride
