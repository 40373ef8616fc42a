#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "fixtures.hpp"
#include "stride/planner.hpp"

using namespace stride;

namespace {

Branch fake_branch(std::size_t n, double duration, Truncation t) {
    Branch b;
    for (std::size_t j = 0; j < n; ++j) {
        b.configs.emplace_back(static_cast<double>(j), 0.0, 0.0);
    }
    b.duration = duration;
    b.truncation = t;
    return b;
}

}  // namespace

TEST_CASE("rng is reproducible and uniform in [0, 1)") {
    Rng a(7), b(7), c(8);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        differs |= x != c.uniform();
    }
    CHECK(differs);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.index(3) < 3);
    }
}

TEST_CASE("samples stay inside the bounds") {
    const Bounds b = Bounds::from_corners({-2, -16, 0}, {12.5, 2, kTwoPi});
    Rng rng(3);
    for (int i = 0; i < 10000; ++i) {
        const Config q = sample_config(b, rng);
        CHECK(b.contains(q.position()));
        CHECK(q.theta() >= 0.0);
        CHECK(q.theta() < kTwoPi);
    }
}

TEST_CASE("tree structure") {
    Tree tree;
    const NodeId root = tree.add_root({0, 0, 0}, fixture::steady_start(0, 0));
    CHECK_THROWS_AS(tree.add_root({0, 0, 0}, {}), std::logic_error);
    CHECK(tree.node(root).stance.xd_apex == doctest::Approx(0.3));

    const std::vector<Config> qs{{0.17, 0, 0}, {0.34, 0, 0}};
    const Branch b = propagate_branch(qs, {0, 0, 0}, tree.node(root).stance, {}, 0.3, 0.0);
    const auto ids = extend(tree, root, b);
    REQUIRE(ids.size() == 2);
    CHECK(tree.node(ids[0]).parent == root);
    CHECK(tree.node(ids[1]).parent == ids[0]);
    CHECK(tree.node(ids[1]).depth == 2);
    CHECK(extend(tree, ids[1], Branch{}).empty());
    CHECK_NOTHROW(tree.check_invariants());

    const auto path = tree.path_to(ids[1]);
    REQUIRE(path.size() == 3);
    CHECK(path.front().config == Config(0, 0, 0));
    CHECK(path.back().config == qs[1]);
    CHECK(solution_duration(path) == doctest::Approx(2 * fixture::symmetric_period(0.17, 0.3)));
    CHECK_THROWS_AS((void)tree.append(99, b), std::out_of_range);
}

TEST_CASE("k_closest agrees with a full sort") {
    Tree tree;
    tree.add_root({0, 0, 0}, fixture::steady_start(0, 0));
    Rng rng(5);
    const Bounds b = Bounds::from_corners({-3, -3, 0}, {3, 3, kTwoPi});
    // Grow a bushy tree of random single-node branches.
    for (int i = 0; i < 300; ++i) {
        const NodeId parent = rng.index(tree.size());
        Branch one;
        one.configs.push_back(sample_config(b, rng));
        one.params.emplace_back();
        one.stances.emplace_back();
        one.footsteps.emplace_back();
        one.arrival_times.push_back(tree.node(parent).arrival_time + 1.0);
        extend(tree, parent, one);
    }
    for (int trial = 0; trial < 50; ++trial) {
        const Config q = sample_config(b, rng);
        std::vector<std::pair<double, NodeId>> all;
        for (const Node& n : tree.nodes()) {
            all.emplace_back(shortest_path(n.config, q, 0.5).total_length, n.id);
        }
        std::sort(all.begin(), all.end());
        for (std::size_t k : {1u, 7u, 20u, 500u}) {
            const auto got = k_closest(tree, q, k, 0.5, trial % 2 == 0);
            REQUIRE(got.size() == std::min<std::size_t>(k, tree.size()));
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i] == all[i].second);
            }
        }
    }
}

TEST_CASE("selecting the nearest candidate by time") {
    SUBCASE("complete candidates beat truncated ones") {
        const std::vector<Branch> c{fake_branch(3, 1.0, Truncation::dynamic),
                                    fake_branch(5, 2.0, Truncation::none),
                                    fake_branch(4, 1.5, Truncation::none)};
        CHECK(select_nearest_by_time(c) == 2u);
        CHECK(select_nearest_by_time(c, true) == 0u);
    }
    SUBCASE("when nothing completes the longest prefix wins") {
        const std::vector<Branch> c{fake_branch(2, 0.5, Truncation::dynamic),
                                    fake_branch(4, 2.0, Truncation::dynamic),
                                    fake_branch(4, 1.8, Truncation::dynamic), Branch{}};
        CHECK(select_nearest_by_time(c) == 2u);
    }
    SUBCASE("ties keep the earlier candidate") {
        const std::vector<Branch> c{fake_branch(3, 1.0, Truncation::none),
                                    fake_branch(2, 1.0, Truncation::none)};
        CHECK(select_nearest_by_time(c) == 0u);
    }
    SUBCASE("all empty") {
        const std::vector<Branch> c(3);
        CHECK_FALSE(select_nearest_by_time(c).has_value());
        CHECK_FALSE(select_nearest_by_time({}).has_value());
    }
}

TEST_CASE("straight corridor") {
    const Scenario sc = fixture::straight_corridor();
    const PlanResult r = plan(sc);
    REQUIRE(r.solved);
    CHECK(r.original.size() == 11);
    CHECK(r.solution.size() == 11);
    CHECK(solution_duration(r.solution) == doctest::Approx(10 * fixture::symmetric_period(0.17, 0.3)).epsilon(1e-9));
    CHECK(r.diagnostics.goal_error_pos < 1e-9);
    CHECK_NOTHROW(r.tree.check_invariants());
}

TEST_CASE("unreachable goal reports tree statistics") {
    Scenario sc = fixture::straight_corridor();
    // Box the goal in.
    sc.world.obstacles.push_back({{{1.7, 0.0}, {0.1, 0.1}, 0.0}, StaticMotion{}});
    sc.planner.max_iterations = 150;
    sc.planner.goal_bias = 0.3;
    const PlanResult r = plan(sc);
    CHECK_FALSE(r.solved);
    CHECK(r.solution.empty());
    CHECK(r.diagnostics.iterations == 150);
    CHECK(r.diagnostics.tree_size == r.tree.size());
    CHECK(r.tree.size() > 1);
    CHECK_NOTHROW(r.tree.check_invariants());
}

TEST_CASE("every tree node is collision free at its arrival time") {
    Scenario sc = fixture::straight_corridor();
    sc.q_goal = {2.5, 0.8, 1.0};
    sc.world.obstacles.push_back({{{1.2, 0.0}, {0.1, 0.6}, 0.0}, StaticMotion{}});
    sc.world.obstacles.push_back({{{0.8, -1.0}, {0.2, 0.2}, 0.0}, LinearMotion{{0.0, 0.4}, 2.0}});
    sc.planner.goal_bias = 0.2;
    sc.planner.max_iterations = 400;
    const PlanResult r = plan(sc);
    for (const Node& n : r.tree.nodes()) {
        if (n.parent) {
            CHECK(is_free(n.footstep, n.arrival_time, sc.world));
        }
    }
    CHECK_NOTHROW(r.tree.check_invariants());
}

TEST_CASE("rewiring shortcuts an L-shaped detour") {
    Scenario sc = fixture::straight_corridor();
    sc.world.bounds = Bounds::from_corners({-1, -1.5, 0}, {5, 5, kTwoPi});
    const auto detour = fixture::route_through(sc, {Config(3, 0, 0), Config(3, 3, kPi / 2)});
    REQUIRE(detour.back().config == Config(3, 3, kPi / 2));
    Rng rng(9);
    const RewireResult rw = rewire(detour, sc, rng, 2000);
    CHECK(rw.accepted > 0);
    CHECK(solution_duration(rw.solution) < solution_duration(detour) - 0.1);
    CHECK(rw.solution.back().config == detour.back().config);
    REQUIRE(rw.duration_log.size() == rw.accepted + 1);
    for (std::size_t i = 1; i < rw.duration_log.size(); ++i) {
        CHECK(rw.duration_log[i] <= rw.duration_log[i - 1]);
    }
    for (std::size_t i = 1; i < rw.solution.size(); ++i) {
        CHECK(rw.solution[i].arrival_time > rw.solution[i - 1].arrival_time);
    }
}

TEST_CASE("rewiring a straight line changes nothing") {
    const Scenario sc = fixture::straight_corridor();
    const auto line = fixture::route_through(sc, {Config(1.7, 0, 0)});
    Rng rng(10);
    const RewireResult rw = rewire(line, sc, rng, 500);
    CHECK(solution_duration(rw.solution) == doctest::Approx(solution_duration(line)).epsilon(1e-12));
}

TEST_CASE("parallel and serial runs build the same tree") {
    Scenario sc = fixture::straight_corridor();
    sc.q_goal = {2.5, 1.0, 1.2};
    sc.world.obstacles.push_back({{{1.2, 0.3}, {0.1, 0.6}, 0.0}, StaticMotion{}});
    sc.planner.goal_bias = 0.1;
    sc.planner.max_iterations = 300;
    sc.planner.parallel = true;
    const PlanResult a = plan(sc);
    sc.planner.parallel = false;
    const PlanResult b = plan(sc);
    REQUIRE(a.tree.size() == b.tree.size());
    for (std::size_t i = 0; i < a.tree.size(); ++i) {
        CHECK(a.tree.node(i).config == b.tree.node(i).config);
        CHECK(a.tree.node(i).arrival_time == b.tree.node(i).arrival_time);
    }
    CHECK(a.solved == b.solved);
}

TEST_CASE("planner config validation") {
    PlannerConfig c;
    CHECK_NOTHROW(c.validate());
    c.k_nearest = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.goal_bias = 1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
