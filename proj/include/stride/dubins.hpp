// Dubins steering: shortest forward-only, curvature-bounded paths between two
// configurations, plus even placement of intermediate step nodes.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "stride/core.hpp"

namespace stride {

/// The six arc/line families, in tie-break order.
enum class DubinsFamily : std::uint8_t { LSL, RSR, LSR, RSL, RLR, LRL };

inline constexpr std::array<DubinsFamily, 6> kDubinsFamilies = {
    DubinsFamily::LSL, DubinsFamily::RSR, DubinsFamily::LSR,
    DubinsFamily::RSL, DubinsFamily::RLR, DubinsFamily::LRL};

[[nodiscard]] std::string_view to_string(DubinsFamily f) noexcept;

/// True for the arc-arc-arc families, whose middle segment is an arc.
[[nodiscard]] constexpr bool has_middle_arc(DubinsFamily f) noexcept {
    return f == DubinsFamily::RLR || f == DubinsFamily::LRL;
}

struct DubinsPath {
    DubinsFamily family{DubinsFamily::LSL};
    /// First arc angle [rad], middle segment (meters for a straight, radians
    /// for an arc), last arc angle [rad]. All non-negative.
    std::array<double, 3> seg_params{0.0, 0.0, 0.0};
    double r_min{1.0};
    Config start{};
    Config end{};
    double total_length{0.0};

    [[nodiscard]] bool degenerate() const noexcept { return total_length == 0.0; }
    /// Arclength of segment i in meters.
    [[nodiscard]] double segment_length(int i) const noexcept;
};

/// Solves a single family in closed form. Empty when the family has no real
/// solution for this pair.
[[nodiscard]] std::optional<DubinsPath> solve_family(DubinsFamily family, const Config& q_from,
                                                     const Config& q_to, double r_min);

/// Minimum-length path over all admissible families. Coincident
/// configurations yield a zero-length degenerate path.
[[nodiscard]] DubinsPath shortest_path(const Config& q_from, const Config& q_to, double r_min);

/// Configuration after traveling `s` meters along `path`, 0 <= s <= total_length.
[[nodiscard]] Config point_at_arclength(const DubinsPath& path, double s);

/// ceil(total_length / s_max) nodes at equal arclength spacing; the last node
/// is exactly `path.end`. Empty for a degenerate path.
[[nodiscard]] std::vector<Config> intermediate_nodes(const DubinsPath& path, double s_max);

}  // namespace stride
