// Kinodynamic RRT over (x, y, θ) whose nearest-neighbor metric is elapsed
// walking time, followed by time-optimizing shortcut rewiring of the
// extracted solution.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "stride/core.hpp"
#include "stride/dubins.hpp"
#include "stride/lipm.hpp"
#include "stride/propagation.hpp"
#include "stride/world.hpp"

namespace stride {

struct PlannerConfig {
    std::size_t k_nearest{20};
    double goal_bias{0.1};
    double goal_tolerance_pos{0.05};      ///< meters
    double goal_tolerance_heading{0.1};   ///< radians
    std::size_t max_iterations{200000};
    std::size_t rewire_iterations{5000};
    std::uint64_t rng_seed{0};
    /// Evaluate candidate branches and Dubins distances on worker threads.
    /// Results are identical either way.
    bool parallel{true};
    /// Let dynamically truncated candidates compete on their prefix duration.
    bool rank_truncated_candidates{false};

    void validate() const;
};

/// Everything needed to run one planning problem.
struct Scenario {
    std::string name;
    Config q_start{};
    Config q_goal{};
    /// Start locomotion state in the global frame (it has no parent).
    LocomotionParams m_start{};
    KinematicParams kinematics{};
    LipmParams lipm{};
    World world{};
    PlannerConfig planner{};
};

/// Deterministic, library-independent uniform sampling on top of mt19937_64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform in [0, n).
    std::size_t index(std::size_t n) {
        const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return std::min(i, n - 1);
    }

private:
    std::mt19937_64 engine_;
};

/// One step of a walking route: the configuration, its locomotion parameters
/// (parent frame), the same parameters in its own frame, the global
/// footstep and the cumulative arrival time.
struct Waypoint {
    Config config{};
    LocomotionParams loco{};
    LocomotionParams stance{};
    Vec2 footstep{};
    double arrival_time{0.0};
};

using NodeId = std::size_t;

struct Node : Waypoint {
    NodeId id{0};
    std::optional<NodeId> parent;
    std::size_t depth{0};
};

/// Configuration tree and its locomotion mirror in one structure: each node
/// carries both q and m.
class Tree {
public:
    NodeId add_root(const Config& q_start, const LocomotionParams& m_start_global);
    /// Appends the branch as a chain under `parent`; returns the new ids.
    std::vector<NodeId> append(NodeId parent, const Branch& branch);

    [[nodiscard]] const Node& node(NodeId id) const { return nodes_.at(id); }
    [[nodiscard]] std::span<const Node> nodes() const noexcept { return nodes_; }
    [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }
    [[nodiscard]] bool empty() const noexcept { return nodes_.empty(); }

    /// Root-to-node waypoint sequence.
    [[nodiscard]] std::vector<Waypoint> path_to(NodeId id) const;

    /// Throws std::logic_error if the single-parent / acyclic / increasing
    /// arrival time structure is broken.
    void check_invariants() const;

private:
    std::vector<Node> nodes_;
};

[[nodiscard]] Waypoint make_root_waypoint(const Config& q_start, const LocomotionParams& m_start_global);

[[nodiscard]] Config sample_config(const Bounds& bounds, Rng& rng);

/// The k nodes with the smallest Dubins length to `q_s`, ties by id.
[[nodiscard]] std::vector<NodeId> k_closest(const Tree& tree, const Config& q_s, std::size_t k,
                                            double r_min, bool parallel = false);

/// Index of the fastest candidate, or nullopt when every candidate is empty.
/// Candidates that were cut short by the dynamics only win when no candidate
/// reached its target, unless `rank_truncated` lets them compete on their
/// prefix duration.
[[nodiscard]] std::optional<std::size_t> select_nearest_by_time(std::span<const Branch> candidates,
                                                                bool rank_truncated = false);

/// Appends a collision-pruned branch under `parent`.
std::vector<NodeId> extend(Tree& tree, NodeId parent, const Branch& branch);

[[nodiscard]] double solution_duration(std::span<const Waypoint> solution) noexcept;

struct RewireResult {
    std::vector<Waypoint> solution;
    std::size_t attempts{0};
    std::size_t accepted{0};
    /// Total duration before any splice followed by the total after each
    /// accepted splice.
    std::vector<double> duration_log;
};

/// Repeatedly splices direct Dubins shortcuts between random solution nodes
/// when they are collision-free and not slower, recomputing everything
/// downstream of the splice.
[[nodiscard]] RewireResult rewire(std::vector<Waypoint> solution, const Scenario& scenario, Rng& rng,
                                  std::size_t iterations);

struct PlanDiagnostics {
    std::size_t iterations{0};
    std::size_t tree_size{0};
    std::size_t goal_samples{0};
    std::size_t empty_extensions{0};
    std::size_t dynamic_truncations{0};
    std::size_t collision_prunes{0};
    double goal_error_pos{0.0};
    double goal_error_heading{0.0};
    std::size_t rewire_attempts{0};
    std::size_t rewire_accepted{0};
    std::vector<double> rewire_duration_log;
};

struct PlanResult {
    bool solved{false};
    std::vector<Waypoint> original;  ///< before rewiring
    std::vector<Waypoint> solution;  ///< after rewiring
    Tree tree;
    PlanDiagnostics diagnostics;
};

[[nodiscard]] PlanResult plan(const Scenario& scenario);

}  // namespace stride
