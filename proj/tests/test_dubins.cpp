#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "stride/dubins.hpp"

using namespace stride;

namespace {

oracle::Pose pose(const Config& q) { return {q.x(), q.y(), q.theta()}; }

double heading_error(double a, double b) { return std::abs(std::remainder(a - b, kTwoPi)); }

}  // namespace

TEST_CASE("straight ahead is a zero-arc LSL") {
    const DubinsPath p = shortest_path({0, 0, 0}, {5, 0, 0}, 0.5);
    CHECK(p.family == DubinsFamily::LSL);
    CHECK(p.seg_params[0] == doctest::Approx(0.0));
    CHECK(p.seg_params[1] == doctest::Approx(5.0));
    CHECK(p.seg_params[2] == doctest::Approx(0.0));
    CHECK(p.total_length == doctest::Approx(5.0));

    const Config mid = point_at_arclength(p, 2.0);
    CHECK(mid.x() == doctest::Approx(2.0));
    CHECK(mid.y() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mid.theta() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("half turn to the left is a single arc") {
    const double r = 0.5;
    const DubinsPath p = shortest_path({0, 0, 0}, {0, 1, kPi}, r);
    CHECK(p.total_length == doctest::Approx(kPi * r).epsilon(1e-12));
    // Forward integration with a full left turn rate.
    const oracle::Pose e = oracle::advance({0, 0, 0}, oracle::Segment{1, kPi * r}, r);
    CHECK(std::abs(e.x) < 1e-12);
    CHECK(e.y == doctest::Approx(1.0));
    const Config end = point_at_arclength(p, p.total_length);
    CHECK(std::abs(end.x() - 0.0) < 1e-9);
    CHECK(std::abs(end.y() - 1.0) < 1e-9);
    CHECK(heading_error(end.theta(), kPi) < 1e-9);
}

TEST_CASE("coincident configurations give a degenerate path") {
    const DubinsPath p = shortest_path({1, 2, 0.3}, {1, 2, 0.3}, 0.5);
    CHECK(p.degenerate());
    CHECK(intermediate_nodes(p, 0.17).empty());
}

TEST_CASE("non-finite or non-positive radius is rejected") {
    CHECK_THROWS_AS((void)shortest_path({0, 0, 0}, {1, 0, 0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)shortest_path({0, 0, 0}, {1, 0, 0}, std::nan("")), std::invalid_argument);
}

TEST_CASE("point_at_arclength rejects out-of-range arclength") {
    const DubinsPath p = shortest_path({0, 0, 0}, {5, 0, 0}, 0.5);
    CHECK_THROWS_AS((void)point_at_arclength(p, -1e-6), std::out_of_range);
    CHECK_THROWS_AS((void)point_at_arclength(p, 5.0 + 1e-6), std::out_of_range);
    CHECK(point_at_arclength(p, 0.0) == p.start);
}

TEST_CASE("intermediate node counts") {
    SUBCASE("five meters") {
        const auto nodes = intermediate_nodes(shortest_path({0, 0, 0}, {5, 0, 0}, 0.5), 0.17);
        REQUIRE(nodes.size() == 30);
        CHECK(nodes[0].x() == doctest::Approx(5.0 / 30));
        CHECK(nodes.back() == Config(5, 0, 0));
    }
    SUBCASE("exactly one step") {
        const DubinsPath p = shortest_path({0, 0, 0}, {0.17, 0, 0}, 0.5);
        const auto nodes = intermediate_nodes(p, 0.17);
        REQUIRE(nodes.size() == 1);
        CHECK(nodes[0] == p.end);
    }
    SUBCASE("just over one step") {
        const auto nodes = intermediate_nodes(shortest_path({0, 0, 0}, {0.1701, 0, 0}, 0.5), 0.17);
        REQUIRE(nodes.size() == 2);
        CHECK(nodes[0].x() == doctest::Approx(0.08505));
    }
    SUBCASE("ten steps") {
        CHECK(intermediate_nodes(shortest_path({0, 0, 0}, {1.7, 0, 0}, 0.5), 0.17).size() == 10);
    }
}

TEST_CASE("every admissible family lands on the goal") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> pos(-3.0, 3.0);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    for (int i = 0; i < 2000; ++i) {
        const Config a(pos(rng), pos(rng), ang(rng));
        const Config b(pos(rng), pos(rng), ang(rng));
        for (DubinsFamily f : kDubinsFamilies) {
            const auto p = solve_family(f, a, b, 0.7);
            if (!p) {
                continue;
            }
            for (double s : p->seg_params) {
                CHECK(s >= 0.0);
            }
            const double len = p->segment_length(0) + p->segment_length(1) + p->segment_length(2);
            CHECK(p->total_length == doctest::Approx(len).epsilon(1e-12));
            // Replay the segments with exact arc geometry.
            const int first = (f == DubinsFamily::LSL || f == DubinsFamily::LSR || f == DubinsFamily::LRL) ? 1 : -1;
            const int last = (f == DubinsFamily::LSL || f == DubinsFamily::RSL || f == DubinsFamily::LRL) ? 1 : -1;
            const int middle = has_middle_arc(f) ? -first : 0;
            const oracle::Candidate c{{oracle::Segment{first, p->segment_length(0)},
                                       oracle::Segment{middle, p->segment_length(1)},
                                       oracle::Segment{last, p->segment_length(2)}}};
            const oracle::Pose e = oracle::advance(pose(a), c, 0.7);
            CHECK(std::hypot(e.x - b.x(), e.y - b.y()) < 1e-9);
            CHECK(heading_error(e.th, b.theta()) < 1e-9);
        }
    }
}

TEST_CASE("shortest path matches the tangent-circle construction") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> pos(-4.0, 4.0);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    for (int i = 0; i < 3000; ++i) {
        const Config a(pos(rng), pos(rng), ang(rng));
        const Config b(pos(rng), pos(rng), ang(rng));
        const DubinsPath p = shortest_path(a, b, 0.5);
        const auto cands = oracle::dubins_candidates(pose(a), pose(b), 0.5);
        REQUIRE(!cands.empty());
        double best = INFINITY;
        for (const auto& c : cands) {
            best = std::min(best, c.length());
        }
        CHECK(p.total_length <= best + 1e-9);
        CHECK(p.total_length == doctest::Approx(best).epsilon(1e-6));
    }
}

TEST_CASE("ties resolve to the earlier family") {
    // Straight ahead: LSL, RSR, LSR and RSL all degenerate to the same line.
    const DubinsPath p = shortest_path({0, 0, 0}, {3, 0, 0}, 0.5);
    CHECK(p.family == DubinsFamily::LSL);
    const DubinsPath q = shortest_path({0, 0, 0}, {0, 1, kPi}, 0.5);
    CHECK(q.family == DubinsFamily::LSL);
}
