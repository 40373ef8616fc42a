#include "stride/export.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "stride/scenario_io.hpp"

namespace stride {

namespace {

using Json = nlohmann::ordered_json;

Json loco_json(const LocomotionParams& m) {
    return {{"p_x", m.p_x},         {"p_y", m.p_y},       {"x_apex", m.x_apex},
            {"xd_apex", m.xd_apex}, {"y_apex", m.y_apex}, {"yd_apex", m.yd_apex},
            {"t_switch", m.t_switch}, {"t_apex", m.t_apex}};
}

Json record_json(const SolutionRecord& rec, std::span<const Waypoint> solution) {
    Json steps = Json::array();
    for (std::size_t i = 0; i < rec.rows.size(); ++i) {
        const StepRow& r = rec.rows[i];
        steps.push_back({{"index", r.index},
                         {"footstep", {r.footstep.x, r.footstep.y}},
                         {"side", std::string(to_string(r.side))},
                         {"t_switch", r.t_switch},
                         {"t_apex", r.t_apex},
                         {"arrival_time", r.arrival_time},
                         {"config", {r.config.x(), r.config.y(), r.config.theta()}},
                         {"loco", loco_json(solution[i].loco)}});
    }
    return {{"totals",
             {{"step_count", rec.step_count},
              {"total_duration", rec.total_duration},
              {"tree_size", rec.tree_size},
              {"iterations", rec.iterations},
              {"rewire_accepted", rec.rewire_accepted}}},
            {"steps", steps}};
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string fmt_short(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << v;
    return os.str();
}

// Maps world coordinates onto an SVG canvas with y pointing up.
class Canvas {
public:
    Canvas(const Bounds& b, double px_per_m) : b_(b), scale_(px_per_m) {}

    [[nodiscard]] double width() const { return (b_.x_hi - b_.x_lo) * scale_ + 2 * kMargin; }
    [[nodiscard]] double height() const { return (b_.y_hi - b_.y_lo) * scale_ + 2 * kMargin; }
    [[nodiscard]] double sx(double x) const { return kMargin + (x - b_.x_lo) * scale_; }
    [[nodiscard]] double sy(double y) const { return kMargin + (b_.y_hi - y) * scale_; }
    [[nodiscard]] double len(double d) const { return d * scale_; }

    [[nodiscard]] std::string point(Vec2 p) const { return fmt_short(sx(p.x)) + "," + fmt_short(sy(p.y)); }

    [[nodiscard]] std::string polygon(const OrientedRect& r) const {
        const double c = std::cos(r.orientation);
        const double s = std::sin(r.orientation);
        std::string pts;
        for (const auto& [u, v] : {std::pair{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}}) {
            const double lx = u * r.half_extents.x;
            const double ly = v * r.half_extents.y;
            const Vec2 p{r.center.x + c * lx - s * ly, r.center.y + s * lx + c * ly};
            pts += point(p) + " ";
        }
        return pts;
    }

private:
    static constexpr double kMargin = 20.0;
    Bounds b_;
    double scale_;
};

std::string polyline(const Canvas& cv, std::span<const Waypoint> path, const char* color,
                     const char* id) {
    std::ostringstream os;
    os << "  <g id=\"" << id << "\">\n    <polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"2\" points=\"";
    for (const auto& w : path) {
        os << cv.point(w.config.position()) << ' ';
    }
    os << "\"/>\n  </g>\n";
    return os.str();
}

}  // namespace

std::string_view to_string(StanceSide side) noexcept {
    return side == StanceSide::left ? "left" : "right";
}

SolutionRecord make_solution_record(std::span<const Waypoint> solution, const Scenario& scenario,
                                    const PlanDiagnostics& diag) {
    SolutionRecord rec;
    const StanceSide first = scenario.m_start.p_y < 0.0 ? StanceSide::right : StanceSide::left;
    for (std::size_t i = 0; i < solution.size(); ++i) {
        const Waypoint& w = solution[i];
        StepRow row;
        row.index = i;
        row.footstep = w.footstep;
        row.side = (i % 2 == 0) ? first : (first == StanceSide::right ? StanceSide::left : StanceSide::right);
        row.t_switch = w.loco.t_switch;
        row.t_apex = w.loco.t_apex;
        row.arrival_time = w.arrival_time;
        row.config = w.config;
        rec.rows.push_back(row);
    }
    rec.step_count = solution.empty() ? 0 : solution.size() - 1;
    rec.total_duration = solution_duration(solution);
    rec.tree_size = diag.tree_size;
    rec.iterations = diag.iterations;
    rec.rewire_accepted = diag.rewire_accepted;
    return rec;
}

ComSample com_state_in_step(std::span<const Waypoint> solution, const LipmParams& params,
                            std::size_t i, double tau) {
    if (i == 0 || i >= solution.size()) {
        throw std::out_of_range("step index out of range");
    }
    const Waypoint& parent = solution[i - 1];
    const LocomotionParams& m = solution[i].loco;
    const LocomotionParams& s = parent.stance;
    const double w = omega(params, m.p_x);
    tau = std::clamp(tau, 0.0, m.duration());

    PendulumState x{s.x_apex, s.xd_apex};
    PendulumState y{s.y_apex, s.yd_apex};
    if (tau <= m.t_switch) {
        x = state_at(x, s.p_x, w, tau);
        y = state_at(y, s.p_y, w, tau);
    } else {
        x = state_at(state_at(x, s.p_x, w, m.t_switch), m.p_x, w, tau - m.t_switch);
        y = state_at(state_at(y, s.p_y, w, m.t_switch), m.p_y, w, tau - m.t_switch);
    }
    const Pose2 frame(parent.config);
    ComSample out;
    out.t = parent.arrival_time + tau;
    out.pos = to_global(frame, {x.pos, y.pos});
    out.vel = rotate_to_global(frame, {x.vel, y.vel});
    return out;
}

std::vector<ComSample> sample_com_trajectory(std::span<const Waypoint> solution,
                                             const LipmParams& params, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("dt must be positive");
    }
    std::vector<ComSample> out;
    if (solution.empty()) {
        return out;
    }
    const double t0 = solution.front().arrival_time;
    const double total = solution_duration(solution);
    const auto grid = static_cast<std::size_t>(std::floor(total / dt));
    std::size_t step = 1;
    for (std::size_t k = 1; k <= grid; ++k) {
        const double t = t0 + static_cast<double>(k) * dt;
        while (step + 1 < solution.size() && t > solution[step].arrival_time) {
            ++step;
        }
        if (solution.size() < 2) {
            break;
        }
        ComSample s = com_state_in_step(solution, params, step, t - solution[step - 1].arrival_time);
        s.t = t;
        out.push_back(s);
    }
    for (const Waypoint& w : solution) {
        const Pose2 frame(w.config);
        ComSample s;
        s.t = w.arrival_time;
        s.pos = to_global(frame, {w.stance.x_apex, w.stance.y_apex});
        s.vel = rotate_to_global(frame, {w.stance.xd_apex, w.stance.yd_apex});
        s.endpoint = true;
        out.push_back(s);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const ComSample& a, const ComSample& b) { return a.t < b.t; });
    return out;
}

SvgLayers SvgLayers::parse(const std::string& list) {
    SvgLayers l{false, false, false, false, false, false, false};
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "all") {
            l = {true, true, true, true, true, true, true};
        } else if (item == "walls") {
            l.walls = true;
        } else if (item == "obstacles") {
            l.obstacles = true;
        } else if (item == "tree") {
            l.tree = true;
        } else if (item == "original") {
            l.original = true;
        } else if (item == "rewired") {
            l.rewired = true;
        } else if (item == "footsteps") {
            l.footsteps = true;
        } else if (item == "com") {
            l.com = true;
        } else if (!item.empty()) {
            throw std::invalid_argument("unknown svg layer '" + item + "'");
        }
    }
    return l;
}

Json result_to_json(const PlanResult& result, const Scenario& scenario, const ExportOptions& options) {
    Json doc = Json::object();
    doc["status"] = result.solved ? "solved" : "no_solution";
    if (!result.solved) {
        doc["message"] = "no solution found";
    }
    doc["seed"] = scenario.planner.rng_seed;
    doc["scenario"] = scenario_to_json(scenario);
    doc["defaults_applied"] = options.defaulted;
    const PlanDiagnostics& d = result.diagnostics;
    doc["diagnostics"] = {{"iterations", d.iterations},
                          {"tree_size", d.tree_size},
                          {"goal_samples", d.goal_samples},
                          {"empty_extensions", d.empty_extensions},
                          {"dynamic_truncations", d.dynamic_truncations},
                          {"collision_prunes", d.collision_prunes},
                          {"goal_error", {d.goal_error_pos, d.goal_error_heading}},
                          {"rewire",
                           {{"attempts", d.rewire_attempts},
                            {"accepted", d.rewire_accepted},
                            {"duration_log", d.rewire_duration_log}}}};
    if (result.solved) {
        doc["solution"] = record_json(make_solution_record(result.solution, scenario, d), result.solution);
        doc["original_solution"] =
            record_json(make_solution_record(result.original, scenario, d), result.original);
    }
    return doc;
}

std::string com_csv(std::span<const ComSample> samples) {
    std::ostringstream os;
    os << "t,x,y,vx,vy,kind\n";
    for (const auto& s : samples) {
        os << fmt(s.t) << ',' << fmt(s.pos.x) << ',' << fmt(s.pos.y) << ',' << fmt(s.vel.x) << ','
           << fmt(s.vel.y) << ',' << (s.endpoint ? "apex" : "grid") << '\n';
    }
    return os.str();
}

std::string footsteps_csv(const SolutionRecord& record) {
    std::ostringstream os;
    os << "index,foot_x,foot_y,side,t_switch,t_apex,arrival_time,x,y,theta\n";
    for (const auto& r : record.rows) {
        os << r.index << ',' << fmt(r.footstep.x) << ',' << fmt(r.footstep.y) << ','
           << to_string(r.side) << ',' << fmt(r.t_switch) << ',' << fmt(r.t_apex) << ','
           << fmt(r.arrival_time) << ',' << fmt(r.config.x()) << ',' << fmt(r.config.y()) << ','
           << fmt(r.config.theta()) << '\n';
    }
    return os.str();
}

std::string render_svg(const PlanResult& result, const Scenario& sc, const SvgLayers& layers, double dt) {
    const Canvas cv(sc.world.bounds, 40.0);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_short(cv.width())
       << "\" height=\"" << fmt_short(cv.height()) << "\">\n";
    os << "  <rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const Bounds& b = sc.world.bounds;
    os << "  <rect x=\"" << fmt_short(cv.sx(b.x_lo)) << "\" y=\"" << fmt_short(cv.sy(b.y_hi))
       << "\" width=\"" << fmt_short(cv.len(b.x_hi - b.x_lo)) << "\" height=\""
       << fmt_short(cv.len(b.y_hi - b.y_lo)) << "\" fill=\"none\" stroke=\"black\"/>\n";

    if (layers.walls) {
        os << "  <g id=\"walls\">\n";
        for (const auto& obs : sc.world.obstacles) {
            if (obs.is_static()) {
                os << "    <polygon fill=\"#d62728\" points=\"" << cv.polygon(obs.shape) << "\"/>\n";
            }
        }
        os << "  </g>\n";
    }
    const double horizon = result.solved ? solution_duration(result.solution) : 60.0;
    if (layers.obstacles) {
        os << "  <g id=\"obstacles\">\n";
        for (const auto& obs : sc.world.obstacles) {
            if (obs.is_static()) {
                continue;
            }
            os << "    <polyline fill=\"none\" stroke=\"#ff7f0e\" stroke-dasharray=\"4,3\" points=\"";
            for (double t = 0.0; t <= horizon; t += 0.25) {
                os << cv.point(obstacle_pose_at(obs, t).center) << ' ';
            }
            os << "\"/>\n";
            os << "    <polygon fill=\"gray\" fill-opacity=\"0.6\" points=\""
               << cv.polygon(obstacle_pose_at(obs, 0.0)) << "\"/>\n";
        }
        os << "  </g>\n";
    }
    if (layers.tree) {
        os << "  <g id=\"tree\" fill=\"#2ca02c\" fill-opacity=\"0.4\">\n";
        for (const auto& n : result.tree.nodes()) {
            os << "    <circle cx=\"" << fmt_short(cv.sx(n.config.x())) << "\" cy=\""
               << fmt_short(cv.sy(n.config.y())) << "\" r=\"1.2\"/>\n";
        }
        os << "  </g>\n";
    }
    if (result.solved && layers.original) {
        os << polyline(cv, result.original, "#1f77b4", "original");
    }
    if (result.solved && layers.rewired) {
        os << polyline(cv, result.solution, "#d62728", "rewired");
    }
    if (result.solved && layers.footsteps) {
        os << "  <g id=\"footsteps\" fill=\"#1f77b4\">\n";
        const double half = cv.len(0.04);
        for (const auto& w : result.solution) {
            os << "    <rect x=\"" << fmt_short(cv.sx(w.footstep.x) - half) << "\" y=\""
               << fmt_short(cv.sy(w.footstep.y) - half) << "\" width=\"" << fmt_short(2 * half)
               << "\" height=\"" << fmt_short(2 * half) << "\"/>\n";
        }
        os << "  </g>\n";
    }
    if (result.solved && layers.com && result.solution.size() > 1) {
        os << "  <g id=\"com\">\n    <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
        for (const auto& s : sample_com_trajectory(result.solution, sc.lipm, dt)) {
            os << cv.point(s.pos) << ' ';
        }
        os << "\"/>\n  </g>\n";
    }
    os << "  <circle cx=\"" << fmt_short(cv.sx(sc.q_start.x())) << "\" cy=\""
       << fmt_short(cv.sy(sc.q_start.y())) << "\" r=\"6\" fill=\"#2ca02c\"/>\n";
    os << "  <circle cx=\"" << fmt_short(cv.sx(sc.q_goal.x())) << "\" cy=\""
       << fmt_short(cv.sy(sc.q_goal.y())) << "\" r=\"6\" fill=\"#9467bd\"/>\n";
    os << "</svg>\n";
    return os.str();
}

std::vector<std::filesystem::path> export_result(const PlanResult& result, const Scenario& scenario,
                                                 const ExportOptions& options,
                                                 const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " +
                                 ec.message());
    }
    std::vector<std::filesystem::path> written;
    const auto write = [&](const std::string& name, const std::string& content) {
        const auto path = out_dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out || !(out << content) || !out.flush()) {
            throw std::runtime_error("cannot write " + path.string());
        }
        written.push_back(path);
    };
    if (options.json) {
        write("result.json", result_to_json(result, scenario, options).dump(2) + "\n");
    }
    if (options.csv && result.solved) {
        write("com.csv", com_csv(sample_com_trajectory(result.solution, scenario.lipm, options.dt)));
        write("footsteps.csv",
              footsteps_csv(make_solution_record(result.solution, scenario, result.diagnostics)));
    }
    if (options.svg) {
        write("plan.svg", render_svg(result, scenario, options.layers, options.dt));
    }
    return written;
}

}  // namespace stride
