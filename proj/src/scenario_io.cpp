#include "stride/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace stride {

namespace {

using Json = nlohmann::ordered_json;

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

class Reader {
public:
    Reader(const Json& node, std::string path, std::vector<std::string>& defaulted)
        : node_(node), path_(std::move(path)), defaulted_(defaulted) {
        if (!node_.is_object()) {
            throw ScenarioError(path_.empty() ? "<root>" : path_, "expected an object");
        }
    }

    [[nodiscard]] bool has(const std::string& key) const { return node_.contains(key); }

    double number(const std::string& key) const {
        const std::string field = join(path_, key);
        if (!node_.contains(key)) {
            throw ScenarioError(field, "missing required field");
        }
        return as_number(node_.at(key), field);
    }

    double number_or(const std::string& key, double fallback) const {
        if (!node_.contains(key)) {
            defaulted_.push_back(join(path_, key));
            return fallback;
        }
        return as_number(node_.at(key), join(path_, key));
    }

    std::uint64_t integer_or(const std::string& key, std::uint64_t fallback) const {
        const std::string field = join(path_, key);
        if (!node_.contains(key)) {
            defaulted_.push_back(field);
            return fallback;
        }
        const Json& v = node_.at(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
            throw ScenarioError(field, "expected a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }

    bool boolean_or(const std::string& key, bool fallback) const {
        const std::string field = join(path_, key);
        if (!node_.contains(key)) {
            defaulted_.push_back(field);
            return fallback;
        }
        if (!node_.at(key).is_boolean()) {
            throw ScenarioError(field, "expected a boolean");
        }
        return node_.at(key).get<bool>();
    }

    std::string string_or(const std::string& key, const std::string& fallback) const {
        if (!node_.contains(key)) {
            return fallback;
        }
        if (!node_.at(key).is_string()) {
            throw ScenarioError(join(path_, key), "expected a string");
        }
        return node_.at(key).get<std::string>();
    }

    template <std::size_t N>
    std::array<double, N> array(const std::string& key) const {
        const std::string field = join(path_, key);
        if (!node_.contains(key)) {
            throw ScenarioError(field, "missing required field");
        }
        const Json& v = node_.at(key);
        if (!v.is_array() || v.size() != N) {
            throw ScenarioError(field, "expected an array of " + std::to_string(N) + " numbers");
        }
        std::array<double, N> out{};
        for (std::size_t i = 0; i < N; ++i) {
            out[i] = as_number(v[i], field);
        }
        return out;
    }

    Reader child(const std::string& key, bool required = true) const {
        const std::string field = join(path_, key);
        if (!node_.contains(key)) {
            if (required) {
                throw ScenarioError(field, "missing required section");
            }
            return Reader(empty_object(), field, defaulted_);
        }
        return Reader(node_.at(key), field, defaulted_);
    }

    [[nodiscard]] const Json& raw(const std::string& key) const { return node_.at(key); }
    [[nodiscard]] const std::string& path() const noexcept { return path_; }
    [[nodiscard]] std::vector<std::string>& defaulted() const noexcept { return defaulted_; }

private:
    static const Json& empty_object() {
        static const Json empty = Json::object();
        return empty;
    }

    static double as_number(const Json& v, const std::string& field) {
        if (!v.is_number()) {
            throw ScenarioError(field, "expected a number");
        }
        const double d = v.get<double>();
        if (!std::isfinite(d)) {
            throw ScenarioError(field, "expected a finite number");
        }
        return d;
    }

    const Json& node_;
    std::string path_;
    std::vector<std::string>& defaulted_;
};

void require(bool ok, const std::string& field, const std::string& message) {
    if (!ok) {
        throw ScenarioError(field, message);
    }
}

Config read_config(const Reader& r, const std::string& key) {
    const auto a = r.array<3>(key);
    return {a[0], a[1], a[2]};
}

Vec2 read_vec2(const Reader& r, const std::string& key) {
    const auto a = r.array<2>(key);
    return {a[0], a[1]};
}

Obstacle read_obstacle(const Reader& r) {
    Obstacle obs;
    obs.shape.half_extents = read_vec2(r, "half_extents");
    require(obs.shape.half_extents.x > 0.0 && obs.shape.half_extents.y > 0.0,
            join(r.path(), "half_extents"), "half extents must be positive");
    obs.shape.orientation = r.number_or("orientation", 0.0);

    const Reader motion = r.child("motion", false);
    const std::string type = motion.string_or("type", "static");
    if (type == "static") {
        obs.shape.center = read_vec2(r, "center");
        obs.motion = StaticMotion{};
    } else if (type == "linear") {
        obs.shape.center = read_vec2(r, "center");
        LinearMotion m;
        m.velocity = read_vec2(motion, "velocity");
        if (motion.has("span")) {
            m.span = motion.number("span");
            require(*m.span > 0.0, join(motion.path(), "span"), "span must be positive");
        }
        obs.motion = m;
    } else if (type == "circular") {
        CircularMotion m;
        m.center = read_vec2(motion, "center");
        m.radius = motion.number("radius");
        require(m.radius >= 0.0, join(motion.path(), "radius"), "radius must be non-negative");
        m.rate = motion.number("rate");
        m.phase = motion.number_or("phase", 0.0);
        obs.motion = m;
        obs.shape.center = obstacle_pose_at(obs, 0.0).center;
    } else {
        throw ScenarioError(join(motion.path(), "type"), "unknown motion type '" + type + "'");
    }
    return obs;
}

Json vec2_json(Vec2 v) { return Json::array({v.x, v.y}); }

Json obstacle_json(const Obstacle& obs) {
    Json o = Json::object();
    Json motion = Json::object();
    if (const auto* lin = std::get_if<LinearMotion>(&obs.motion)) {
        o["center"] = vec2_json(obs.shape.center);
        motion["type"] = "linear";
        motion["velocity"] = vec2_json(lin->velocity);
        if (lin->span) {
            motion["span"] = *lin->span;
        }
    } else if (const auto* circ = std::get_if<CircularMotion>(&obs.motion)) {
        motion["type"] = "circular";
        motion["center"] = vec2_json(circ->center);
        motion["radius"] = circ->radius;
        motion["rate"] = circ->rate;
        motion["phase"] = circ->phase;
    } else {
        o["center"] = vec2_json(obs.shape.center);
        motion["type"] = "static";
    }
    o["half_extents"] = vec2_json(obs.shape.half_extents);
    o["orientation"] = obs.shape.orientation;
    o["motion"] = motion;
    return o;
}

}  // namespace

LoadedScenario parse_scenario(const Json& input) {
    const Json& doc = (input.is_object() && input.contains("scenario")) ? input.at("scenario") : input;
    LoadedScenario out;
    Reader root(doc, "", out.defaulted);
    Scenario& sc = out.scenario;

    const auto version = root.integer_or("schema_version", kScenarioSchemaVersion);
    require(version == kScenarioSchemaVersion, "schema_version",
            "unsupported schema version " + std::to_string(version));
    // The version is part of the document, not a tunable default.
    std::erase(out.defaulted, std::string("schema_version"));
    sc.name = root.string_or("name", "");

    const Reader bounds = root.child("bounds");
    sc.world.bounds = Bounds::from_corners(bounds.array<3>("q_min"), bounds.array<3>("q_max"));

    sc.q_start = read_config(root, "start");
    sc.q_goal = read_config(root, "goal");

    const Reader ms = root.child("m_start");
    LocomotionParams& m = sc.m_start;
    m.p_x = ms.number("p_x");
    m.p_y = ms.number("p_y");
    m.x_apex = ms.number("x_apex");
    m.xd_apex = ms.number("xd_apex");
    m.y_apex = ms.number("y_apex");
    m.yd_apex = ms.number("yd_apex");
    m.t_switch = ms.number_or("t_switch", 0.0);
    m.t_apex = ms.number_or("t_apex", 0.0);
    require(std::abs(m.x_apex - m.p_x) <= 1e-12, "m_start.x_apex",
            "apex must sit above the stance foot (x_apex == p_x)");
    require(m.t_switch >= 0.0, "m_start.t_switch", "must be non-negative");
    require(m.t_apex >= 0.0, "m_start.t_apex", "must be non-negative");

    const Reader kin = root.child("kinematics");
    sc.kinematics.r_min = kin.number("r_min");
    sc.kinematics.s_max = kin.number("s_max");
    sc.kinematics.V = kin.number("V");
    require(sc.kinematics.r_min > 0.0, "kinematics.r_min", "must be positive");
    require(sc.kinematics.s_max > 0.0, "kinematics.s_max", "must be positive");
    require(sc.kinematics.V > 0.0, "kinematics.V", "must be positive");
    require(sc.kinematics.s_max < kTwoPi * sc.kinematics.r_min, "kinematics.s_max",
            "must be shorter than a full turning circle");

    const Reader lipm = root.child("lipm", false);
    sc.lipm.g = lipm.number_or("g", 9.81);
    sc.lipm.a = lipm.number_or("a", 0.0);
    sc.lipm.b = lipm.number_or("b", 1.0);
    require(sc.lipm.g > 0.0, "lipm.g", "must be positive");

    const Reader world = root.child("world", false);
    sc.world.safety_radius = world.number_or("safety_radius", 0.3);
    require(sc.world.safety_radius > 0.0, "world.safety_radius", "must be positive");
    if (world.has("obstacles")) {
        const Json& list = world.raw("obstacles");
        require(list.is_array(), "world.obstacles", "expected an array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const Reader r(list[i], "world.obstacles[" + std::to_string(i) + "]", out.defaulted);
            sc.world.obstacles.push_back(read_obstacle(r));
        }
    }

    const Reader pl = root.child("planner", false);
    PlannerConfig& cfg = sc.planner;
    cfg.k_nearest = pl.integer_or("k_nearest", 20);
    cfg.goal_bias = pl.number_or("goal_bias", 0.1);
    if (pl.has("goal_tolerance")) {
        const auto tol = pl.array<2>("goal_tolerance");
        cfg.goal_tolerance_pos = tol[0];
        cfg.goal_tolerance_heading = tol[1];
    } else {
        out.defaulted.push_back("planner.goal_tolerance");
    }
    cfg.max_iterations = pl.integer_or("max_iterations", 200000);
    cfg.rewire_iterations = pl.integer_or("rewire_iterations", 5000);
    cfg.rng_seed = pl.integer_or("seed", 0);
    cfg.rank_truncated_candidates = pl.boolean_or("rank_truncated_candidates", false);
    require(cfg.k_nearest >= 1, "planner.k_nearest", "must be at least 1");
    require(cfg.goal_bias > 0.0 && cfg.goal_bias < 1.0, "planner.goal_bias", "must lie in (0, 1)");
    require(cfg.goal_tolerance_pos >= 0.0 && cfg.goal_tolerance_heading >= 0.0,
            "planner.goal_tolerance", "must be non-negative");

    require(sc.world.bounds.contains(sc.q_start.position()), "start", "outside the bounds");
    require(is_free(sc.q_start.position(), 0.0, sc.world), "start", "in collision at t = 0");
    return out;
}

LoadedScenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError("<file>", "cannot open " + path.string());
    }
    Json doc;
    try {
        doc = Json::parse(in, nullptr, true, true);
    } catch (const nlohmann::json::parse_error& e) {
        throw ScenarioError("<file>", std::string("parse error: ") + e.what());
    }
    return parse_scenario(doc);
}

nlohmann::ordered_json scenario_to_json(const Scenario& sc) {
    Json doc = Json::object();
    doc["schema_version"] = kScenarioSchemaVersion;
    doc["name"] = sc.name;
    const Bounds& b = sc.world.bounds;
    doc["bounds"] = {{"q_min", {b.x_lo, b.y_lo, b.theta_lo}}, {"q_max", {b.x_hi, b.y_hi, b.theta_hi}}};
    doc["start"] = {sc.q_start.x(), sc.q_start.y(), sc.q_start.theta()};
    doc["goal"] = {sc.q_goal.x(), sc.q_goal.y(), sc.q_goal.theta()};
    const LocomotionParams& m = sc.m_start;
    doc["m_start"] = {{"p_x", m.p_x},         {"p_y", m.p_y},       {"x_apex", m.x_apex},
                      {"xd_apex", m.xd_apex}, {"y_apex", m.y_apex}, {"yd_apex", m.yd_apex},
                      {"t_switch", m.t_switch}, {"t_apex", m.t_apex}};
    doc["kinematics"] = {
        {"r_min", sc.kinematics.r_min}, {"s_max", sc.kinematics.s_max}, {"V", sc.kinematics.V}};
    doc["lipm"] = {{"g", sc.lipm.g}, {"a", sc.lipm.a}, {"b", sc.lipm.b}};
    Json obstacles = Json::array();
    for (const auto& obs : sc.world.obstacles) {
        obstacles.push_back(obstacle_json(obs));
    }
    doc["world"] = {{"safety_radius", sc.world.safety_radius}, {"obstacles", obstacles}};
    const PlannerConfig& cfg = sc.planner;
    doc["planner"] = {{"k_nearest", cfg.k_nearest},
                      {"goal_bias", cfg.goal_bias},
                      {"goal_tolerance", {cfg.goal_tolerance_pos, cfg.goal_tolerance_heading}},
                      {"max_iterations", cfg.max_iterations},
                      {"rewire_iterations", cfg.rewire_iterations},
                      {"seed", cfg.rng_seed},
                      {"rank_truncated_candidates", cfg.rank_truncated_candidates}};
    return doc;
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << scenario_to_json(scenario).dump(2) << '\n';
}

bool operator==(const Scenario& a, const Scenario& b) {
    return scenario_to_json(a) == scenario_to_json(b);
}

}  // namespace stride
