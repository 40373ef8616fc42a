// stride: plan footsteps for a scenario file and export the result.
//
//   stride plan maze.scenario --seed 7 --out runs/maze --formats json,svg
//
// Exit codes: 0 solved, 2 no solution, 1 input or output error.
// STRIDE_OUT_DIR overrides the output directory when --out is not given.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "stride/export.hpp"
#include "stride/scenario_io.hpp"

namespace {

constexpr int kSolved = 0;
constexpr int kInputError = 1;
constexpr int kNoSolution = 2;

struct PlanArgs {
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> rewire_iters;
    std::optional<double> goal_bias;
    std::optional<std::size_t> k;
    std::string out;
    std::string formats{"json,csv,svg"};
    double dt{0.01};
    std::string layers{"walls,obstacles,tree,original,rewired,footsteps"};
    bool serial{false};
    bool quiet{false};
};

void apply_formats(const std::string& list, stride::ExportOptions& opts) {
    opts.json = opts.csv = opts.svg = false;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "json") {
            opts.json = true;
        } else if (item == "csv") {
            opts.csv = true;
        } else if (item == "svg") {
            opts.svg = true;
        } else if (!item.empty()) {
            throw std::invalid_argument("unknown format '" + item + "'");
        }
    }
}

int run_plan(const PlanArgs& args) {
    stride::LoadedScenario loaded;
    stride::ExportOptions opts;
    std::filesystem::path out_dir = args.out;
    try {
        loaded = stride::load_scenario(args.scenario);
        auto& pc = loaded.scenario.planner;
        if (args.seed) pc.rng_seed = *args.seed;
        if (args.rewire_iters) pc.rewire_iterations = *args.rewire_iters;
        if (args.goal_bias) pc.goal_bias = *args.goal_bias;
        if (args.k) pc.k_nearest = *args.k;
        pc.parallel = !args.serial;
        pc.validate();

        apply_formats(args.formats, opts);
        opts.dt = args.dt;
        opts.layers = stride::SvgLayers::parse(args.layers);
        opts.defaulted = loaded.defaulted;
        if (out_dir.empty()) {
            const char* env = std::getenv("STRIDE_OUT_DIR");
            out_dir = env != nullptr && *env != '\0' ? env : "stride_out";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }

    const stride::Scenario& sc = loaded.scenario;
    const stride::PlanResult result = stride::plan(sc);
    const auto& d = result.diagnostics;

    try {
        const auto written = stride::export_result(result, sc, opts, out_dir);
        if (!args.quiet) {
            if (result.solved) {
                std::cout << "solved: " << result.solution.size() - 1 << " steps, "
                          << stride::solution_duration(result.solution) << " s (before rewiring "
                          << stride::solution_duration(result.original) << " s)\n";
            } else {
                std::cout << "no solution found\n";
            }
            std::cout << "tree: " << d.tree_size << " nodes after " << d.iterations
                      << " iterations; rewire accepted " << d.rewire_accepted << "/"
                      << d.rewire_attempts << '\n';
            for (const auto& p : written) {
                std::cout << "wrote " << p.string() << '\n';
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    return result.solved ? kSolved : kNoSolution;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Footstep planning with a kinodynamic RRT over walking time"};
    app.require_subcommand(1);

    PlanArgs args;
    auto* plan = app.add_subcommand("plan", "Plan a route for a scenario file");
    plan->add_option("scenario", args.scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    plan->add_option("--seed", args.seed, "Random seed");
    plan->add_option("--rewire-iters", args.rewire_iters, "Rewiring iterations");
    plan->add_option("--goal-bias", args.goal_bias, "Probability of sampling the goal")
        ->check(CLI::Range(0.0, 1.0));
    plan->add_option("--k", args.k, "Nearest nodes tried per sample")->check(CLI::PositiveNumber);
    plan->add_option("--out", args.out, "Output directory (default $STRIDE_OUT_DIR or ./stride_out)");
    plan->add_option("--formats", args.formats, "Comma list of json, csv, svg")->capture_default_str();
    plan->add_option("--dt", args.dt, "CoM sampling period in seconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    plan->add_option("--layers", args.layers,
                     "SVG layers: walls, obstacles, tree, original, rewired, footsteps, com, all")
        ->capture_default_str();
    plan->add_flag("--serial", args.serial, "Evaluate candidates on the calling thread only");
    plan->add_flag("-q,--quiet", args.quiet, "Print nothing on success");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }
    return run_plan(args);
}
