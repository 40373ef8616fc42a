#include "stride/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <tbb/parallel_for.h>

namespace stride {

namespace {

template <typename F>
void for_each_index(std::size_t n, bool parallel, F&& f) {
    if (parallel && n > 1) {
        tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n), [&](const auto& r) {
            for (std::size_t i = r.begin(); i != r.end(); ++i) {
                f(i);
            }
        });
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            f(i);
        }
    }
}

Branch steer(const Waypoint& from, const Config& to, const Scenario& sc) {
    const DubinsPath path = shortest_path(from.config, to, sc.kinematics.r_min);
    const auto nodes = intermediate_nodes(path, sc.kinematics.s_max);
    return propagate_branch(nodes, from.config, from.stance, sc.lipm, sc.kinematics.V,
                            from.arrival_time);
}

bool within_goal(const Config& q, const Config& goal, const PlannerConfig& cfg) {
    const double dp = (q.position() - goal.position()).norm();
    const double dh = std::abs(wrap_to_pi(q.theta() - goal.theta()));
    return dp <= cfg.goal_tolerance_pos && dh <= cfg.goal_tolerance_heading;
}

void append_waypoints(std::vector<Waypoint>& out, const Branch& b) {
    for (std::size_t j = 0; j < b.size(); ++j) {
        out.push_back({b.configs[j], b.params[j], b.stances[j], b.footsteps[j], b.arrival_times[j]});
    }
}

}  // namespace

void PlannerConfig::validate() const {
    if (k_nearest < 1) {
        throw std::invalid_argument("k_nearest must be at least 1");
    }
    if (!(goal_bias > 0.0 && goal_bias < 1.0)) {
        throw std::invalid_argument("goal_bias must lie in (0, 1)");
    }
    if (!(goal_tolerance_pos >= 0.0) || !(goal_tolerance_heading >= 0.0)) {
        throw std::invalid_argument("goal_tolerance must be non-negative");
    }
}

Waypoint make_root_waypoint(const Config& q_start, const LocomotionParams& m_start_global) {
    Waypoint w;
    w.config = q_start;
    w.loco = m_start_global;
    w.stance = express_in_frame(m_start_global, Pose2(), Pose2(q_start));
    w.footstep = {m_start_global.p_x, m_start_global.p_y};
    w.arrival_time = 0.0;
    return w;
}

NodeId Tree::add_root(const Config& q_start, const LocomotionParams& m_start_global) {
    if (!nodes_.empty()) {
        throw std::logic_error("tree already has a root");
    }
    Node root;
    static_cast<Waypoint&>(root) = make_root_waypoint(q_start, m_start_global);
    root.id = 0;
    nodes_.push_back(root);
    return 0;
}

std::vector<NodeId> Tree::append(NodeId parent, const Branch& branch) {
    if (parent >= nodes_.size()) {
        throw std::out_of_range("unknown parent node");
    }
    std::vector<NodeId> ids;
    ids.reserve(branch.size());
    NodeId prev = parent;
    for (std::size_t j = 0; j < branch.size(); ++j) {
        Node n;
        static_cast<Waypoint&>(n) = {branch.configs[j], branch.params[j], branch.stances[j],
                                     branch.footsteps[j], branch.arrival_times[j]};
        n.id = nodes_.size();
        n.parent = prev;
        n.depth = nodes_[prev].depth + 1;
#ifndef NDEBUG
        if (!(n.arrival_time > nodes_[prev].arrival_time)) {
            throw std::logic_error("arrival time must increase from parent to child");
        }
#endif
        nodes_.push_back(n);
        ids.push_back(n.id);
        prev = n.id;
    }
    return ids;
}

std::vector<Waypoint> Tree::path_to(NodeId id) const {
    std::vector<Waypoint> out;
    std::optional<NodeId> cur = id;
    while (cur) {
        const Node& n = nodes_.at(*cur);
        out.push_back(n);
        cur = n.parent;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

void Tree::check_invariants() const {
    if (nodes_.empty()) {
        return;
    }
    if (nodes_[0].parent) {
        throw std::logic_error("root must not have a parent");
    }
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        if (n.id != i) {
            throw std::logic_error("node id does not match its index");
        }
        // Parents always precede children, which rules out cycles.
        if (!n.parent || *n.parent >= i) {
            throw std::logic_error("node parent must be an earlier node");
        }
        const Node& p = nodes_[*n.parent];
        if (!(n.arrival_time > p.arrival_time)) {
            throw std::logic_error("arrival time must increase from parent to child");
        }
        if (n.depth != p.depth + 1) {
            throw std::logic_error("node depth inconsistent with parent");
        }
    }
}

Config sample_config(const Bounds& b, Rng& rng) {
    const double x = b.x_lo + rng.uniform() * (b.x_hi - b.x_lo);
    const double y = b.y_lo + rng.uniform() * (b.y_hi - b.y_lo);
    const double th = b.theta_lo + rng.uniform() * (b.theta_hi - b.theta_lo);
    return {x, y, th};
}

std::vector<NodeId> k_closest(const Tree& tree, const Config& q_s, std::size_t k, double r_min,
                              bool parallel) {
    const auto nodes = tree.nodes();
    std::vector<double> lengths(nodes.size());
    for_each_index(nodes.size(), parallel, [&](std::size_t i) {
        lengths[i] = shortest_path(nodes[i].config, q_s, r_min).total_length;
    });
    std::vector<NodeId> ids(nodes.size());
    std::iota(ids.begin(), ids.end(), NodeId{0});
    const auto by_length = [&](NodeId a, NodeId b) {
        return lengths[a] < lengths[b] || (lengths[a] == lengths[b] && a < b);
    };
    const std::size_t take = std::min(k, ids.size());
    std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(take), ids.end(),
                      by_length);
    ids.resize(take);
    return ids;
}

std::optional<std::size_t> select_nearest_by_time(std::span<const Branch> candidates,
                                                  bool rank_truncated) {
    std::optional<std::size_t> best;
    const auto better = [&](std::size_t i) {
        return !best || candidates[i].duration < candidates[*best].duration;
    };
    if (rank_truncated) {
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (!candidates[i].empty() && better(i)) {
                best = i;
            }
        }
        return best;
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!candidates[i].empty() && candidates[i].truncation == Truncation::none && better(i)) {
            best = i;
        }
    }
    if (best) {
        return best;
    }
    // Nothing reached its target: longest usable prefix, then fastest.
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const Branch& c = candidates[i];
        if (c.empty()) {
            continue;
        }
        if (!best || c.size() > candidates[*best].size() ||
            (c.size() == candidates[*best].size() && c.duration < candidates[*best].duration)) {
            best = i;
        }
    }
    return best;
}

std::vector<NodeId> extend(Tree& tree, NodeId parent, const Branch& branch) {
    if (branch.empty()) {
        return {};
    }
    return tree.append(parent, branch);
}

double solution_duration(std::span<const Waypoint> solution) noexcept {
    if (solution.empty()) {
        return 0.0;
    }
    return solution.back().arrival_time - solution.front().arrival_time;
}

RewireResult rewire(std::vector<Waypoint> solution, const Scenario& sc, Rng& rng,
                    std::size_t iterations) {
    RewireResult result;
    result.duration_log.push_back(solution_duration(solution));
    if (solution.size() < 2) {
        result.solution = std::move(solution);
        return result;
    }
    const double V = sc.kinematics.V;
    for (std::size_t it = 0; it < iterations; ++it) {
        const std::size_t n_nodes = solution.size();
        std::size_t m = rng.index(n_nodes);
        std::size_t n = rng.index(n_nodes);
        if (m == n) {
            continue;
        }
        if (m > n) {
            std::swap(m, n);
        }
        ++result.attempts;
        const Waypoint& from = solution[m];
        const Branch alt = steer(from, solution[n].config, sc);
        if (alt.empty() || alt.truncation != Truncation::none) {
            continue;
        }
        const double t_orig = solution[n].arrival_time - from.arrival_time;
        if (alt.duration > t_orig) {
            continue;
        }
        if (prune_branch_for_collision(alt, alt.footsteps, sc.world).size() != alt.size()) {
            continue;
        }
        // Everything after n depends on the new state at n.
        std::vector<Config> tail_configs;
        tail_configs.reserve(n_nodes - n - 1);
        for (std::size_t j = n + 1; j < n_nodes; ++j) {
            tail_configs.push_back(solution[j].config);
        }
        const Branch tail = propagate_branch(tail_configs, alt.configs.back(), alt.stances.back(),
                                             sc.lipm, V, alt.arrival_times.back());
        if (tail.size() != tail_configs.size()) {
            continue;
        }
        if (prune_branch_for_collision(tail, tail.footsteps, sc.world).size() != tail.size()) {
            continue;
        }
        const double old_total = solution.back().arrival_time;
        const double new_total = tail.empty() ? alt.arrival_times.back() : tail.arrival_times.back();
        if (new_total > old_total) {
            continue;
        }
        std::vector<Waypoint> spliced(solution.begin(),
                                      solution.begin() + static_cast<std::ptrdiff_t>(m) + 1);
        append_waypoints(spliced, alt);
        append_waypoints(spliced, tail);
        solution = std::move(spliced);
        ++result.accepted;
        result.duration_log.push_back(solution_duration(solution));
    }
    result.solution = std::move(solution);
    return result;
}

PlanResult plan(const Scenario& sc) {
    sc.kinematics.validate();
    sc.planner.validate();
    const PlannerConfig& cfg = sc.planner;

    PlanResult result;
    Tree& tree = result.tree;
    tree.add_root(sc.q_start, sc.m_start);
    Rng rng(cfg.rng_seed);
    PlanDiagnostics& diag = result.diagnostics;

    std::optional<NodeId> goal_node;
    if (within_goal(sc.q_start, sc.q_goal, cfg)) {
        goal_node = 0;
    }

    std::vector<Branch> candidates;
    while (!goal_node && diag.iterations < cfg.max_iterations) {
        ++diag.iterations;
        Config q_s;
        if (rng.uniform() < cfg.goal_bias) {
            q_s = sc.q_goal;
            ++diag.goal_samples;
        } else {
            q_s = sample_config(sc.world.bounds, rng);
        }

        const auto closest = k_closest(tree, q_s, cfg.k_nearest, sc.kinematics.r_min, cfg.parallel);
        candidates.assign(closest.size(), Branch{});
        for_each_index(closest.size(), cfg.parallel, [&](std::size_t i) {
            candidates[i] = steer(tree.node(closest[i]), q_s, sc);
        });
        const auto pick = select_nearest_by_time(candidates, cfg.rank_truncated_candidates);
        if (!pick) {
            ++diag.empty_extensions;
            continue;
        }
        const Branch& best = candidates[*pick];
        if (best.truncation == Truncation::dynamic) {
            ++diag.dynamic_truncations;
        }
        const Branch pruned = prune_branch_for_collision(best, best.footsteps, sc.world);
        if (pruned.size() < best.size()) {
            ++diag.collision_prunes;
        }
        const auto added = extend(tree, closest[*pick], pruned);
        if (added.empty()) {
            ++diag.empty_extensions;
        }
        for (const NodeId id : added) {
            if (within_goal(tree.node(id).config, sc.q_goal, cfg)) {
                goal_node = id;
                break;
            }
        }
    }
    diag.tree_size = tree.size();
    if (!goal_node) {
        return result;
    }

    result.solved = true;
    result.original = tree.path_to(*goal_node);
    const Config& reached = result.original.back().config;
    diag.goal_error_pos = (reached.position() - sc.q_goal.position()).norm();
    diag.goal_error_heading = std::abs(wrap_to_pi(reached.theta() - sc.q_goal.theta()));

    RewireResult rw = rewire(result.original, sc, rng, cfg.rewire_iterations);
    result.solution = std::move(rw.solution);
    diag.rewire_attempts = rw.attempts;
    diag.rewire_accepted = rw.accepted;
    diag.rewire_duration_log = std::move(rw.duration_log);
    return result;
}

}  // namespace stride
