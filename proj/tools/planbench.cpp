// planbench: plan single scenarios, generate shelf-scene variation suites,
// benchmark planners over suites, and re-validate stored paths.

#include "planbench/bench.hpp"
#include "planbench/error.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace planbench;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw ParseError("cannot open " + p.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

PlannerParams params_or_default(const std::string& file) {
    return file.empty() ? PlannerParams{} : load_params(file);
}

PrimitivesFile primitives_or_default(const std::string& file) {
    return file.empty() ? PrimitivesFile{} : load_primitives(file);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

void print_params(std::ostream& os, const PlannerParams& p) {
    os << "# rrt_connect: step_eta=" << p.rrt_connect.step_eta << " edge_step=" << p.rrt_connect.edge_step
       << " max_iterations=" << p.rrt_connect.max_iterations << '\n';
    os << "# ara_star: epsilon_schedule=[";
    for (std::size_t i = 0; i < p.ara_star.epsilon_schedule.size(); ++i)
        os << (i ? ", " : "") << p.ara_star.epsilon_schedule[i];
    os << "] edge_step=" << p.ara_star.edge_step << " budget_split=" << p.ara_star.budget_split << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Motion planning benchmark: RRT-Connect and ARA* over a shared robot/world substrate"};
    app.require_subcommand(1);

    // plan
    auto* plan = app.add_subcommand("plan", "Solve one scenario");
    std::string plan_scenario, plan_planner = "rrt-connect", plan_params, plan_prims, plan_path_out;
    std::optional<std::uint64_t> plan_seed;
    plan->add_option("--scenario", plan_scenario, "Scenario file")->required();
    plan->add_option("--planner", plan_planner, "rrt-connect | ara-star")->check(CLI::IsMember({"rrt-connect", "ara-star"}));
    plan->add_option("--params", plan_params, "Planner parameters file");
    plan->add_option("--primitives", plan_prims, "Motion primitives file (ara-star)");
    plan->add_option("--seed", plan_seed, "Random seed");
    plan->add_option("--path-out", plan_path_out, "Write the solution path as CSV");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate scenario variations");
    std::string gen_base, gen_family, gen_out;
    int gen_count = 100;
    std::uint64_t gen_seed = 0;
    gen->add_option("--base", gen_base, "Base scenario file")->required();
    gen->add_option("--family", gen_family, "objects | height | rotation")
        ->required()
        ->check(CLI::IsMember({"objects", "height", "rotation"}));
    gen->add_option("--count", gen_count, "Number of variations")->required();
    gen->add_option("--seed", gen_seed, "Random seed")->required();
    gen->add_option("--out", gen_out, "Output directory")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Benchmark planners over suites");
    std::vector<std::string> bench_suites;
    std::string bench_planners = "rrt-connect,ara-star", bench_params, bench_prims, bench_out, bench_paths;
    int bench_reps = 1;
    std::uint64_t bench_seed = 0;
    bool bench_table = false;
    bench->add_option("--suite", bench_suites, "Suite directory (repeatable)")->required();
    bench->add_option("--planners", bench_planners, "Comma-separated planner list");
    bench->add_option("--params", bench_params, "Planner parameters file");
    bench->add_option("--primitives", bench_prims, "Motion primitives file (ara-star)");
    bench->add_option("--reps", bench_reps, "Repetitions per scenario")->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_seed, "Base seed");
    bench->add_option("--out", bench_out, "Per-run CSV output")->required();
    bench->add_option("--paths-dir", bench_paths, "Write every solution path as CSV here");
    bench->add_flag("--table", bench_table, "Print the summary tables");

    // validate
    auto* validate = app.add_subcommand("validate", "Re-check a path against a scenario");
    std::string val_scenario, val_path, val_params;
    std::optional<double> val_step;
    validate->add_option("--scenario", val_scenario, "Scenario file")->required();
    validate->add_option("--path", val_path, "Path CSV")->required();
    validate->add_option("--params", val_params, "Planner parameters file (edge_step, goal tolerance)");
    validate->add_option("--step", val_step, "Edge validation step");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*plan) {
            const Scenario sc = load_scenario(plan_scenario);
            PlannerParams params = params_or_default(plan_params);
            if (plan_seed) params = params.with_seed(*plan_seed);
            const PlannerId id = parse_planner_id(plan_planner);
            const PlannerResult r = run_planner(sc, id, params, primitives_or_default(plan_prims));
            std::cout << "status: " << to_string(run_status(r)) << '\n';
            if (r.status == PlannerResult::Status::Unsolvable)
                std::cout << "reason: " << to_string(r.unsolvable_reason) << '\n';
            std::cout << "planning_time_s: " << r.planning_time << '\n';
            if (r.solved()) {
                std::cout << "path_cost: " << path_cost(*sc.robot, r.path) << '\n';
                std::cout << "waypoints: " << r.path.size() << '\n';
                if (!plan_path_out.empty()) std::ofstream(plan_path_out) << emit_path_csv(r.path);
            }
            for (const auto& [k, v] : r.stats) std::cout << k << ": " << v << '\n';
            switch (r.status) {
            case PlannerResult::Status::Solved: return 0;
            case PlannerResult::Status::FailureTimeout: return 1;
            case PlannerResult::Status::Unsolvable: return 2;
            }
        }

        if (*gen) {
            const Scenario base = load_scenario(gen_base);
            const auto out = generate_variations(base, parse_family(gen_family), gen_count, gen_seed);
            write_scenarios(out, fs::path(gen_base).parent_path(), gen_out);
            std::cout << "wrote " << out.size() << " scenarios to " << gen_out << '\n';
            return 0;
        }

        if (*bench) {
            const PlannerParams params = params_or_default(bench_params);
            RunOptions options;
            options.primitives = primitives_or_default(bench_prims);
            options.workers = worker_count();
            std::vector<RunRecord> records;
            for (const auto& dir : bench_suites) {
                const auto scenarios = load_suite(dir);
                options.suite = fs::path(dir).lexically_normal().filename().string();
                if (options.suite.empty()) options.suite = fs::path(dir).lexically_normal().parent_path().filename().string();
                for (const auto& name : split_list(bench_planners)) {
                    auto recs = run_suite(scenarios, parse_planner_id(name), params, bench_reps, bench_seed, options);
                    for (auto& r : recs) {
                        if (r.status == RunStatus::Error)
                            std::cerr << "error: " << r.scenario << " (" << name << "): " << r.error << '\n';
                        records.push_back(std::move(r));
                    }
                }
            }
            std::ofstream(bench_out) << emit_csv(records);
            if (!bench_paths.empty()) {
                fs::create_directories(bench_paths);
                for (const auto& r : records)
                    if (r.path)
                        std::ofstream(fs::path(bench_paths) / (r.suite + "__" + r.scenario + "__" + to_string(r.planner) +
                                                              "__" + std::to_string(r.seed) + ".csv"))
                            << emit_path_csv(*r.path);
            }
            if (bench_table && !records.empty()) {
                BenchmarkReport report = aggregate(records);
                report.environment["workers"] = std::to_string(options.workers);
                report.environment["hardware_threads"] = std::to_string(std::thread::hardware_concurrency());
                report.environment["repetitions"] = std::to_string(bench_reps);
                std::cout << emit_report(report, ReportFormat::Table);
                print_params(std::cout, params);
            }
            return 0;
        }

        if (*validate) {
            const Scenario sc = load_scenario(val_scenario);
            const PlannerParams params = params_or_default(val_params);
            const double step = val_step.value_or(params.common.edge_step);
            const Path path = parse_path_csv(read_file(val_path));
            const bool ok = validate_path(*sc.robot, sc.world, make_query(sc, params.common.goal_tolerance_default),
                                          path, step);
            std::cout << (ok ? "valid" : "invalid") << '\n';
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
