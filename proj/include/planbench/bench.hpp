#pragma once

#include "planbench/ara_star.hpp"
#include "planbench/params.hpp"
#include "planbench/planner.hpp"
#include "planbench/world.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace planbench {

enum class PlannerId { RrtConnect, AraStar };

std::string to_string(PlannerId id);
PlannerId parse_planner_id(std::string_view name);

enum class RunStatus { SolvedForward, SolvedBackward, Failure, Unsolvable, Error };

std::string to_string(RunStatus s);
RunStatus parse_run_status(std::string_view s);
RunStatus run_status(const PlannerResult& r);

struct RunRecord {
    std::string suite;
    std::string scenario;
    PlannerId planner = PlannerId::RrtConnect;
    std::uint64_t seed = 0;
    RunStatus status = RunStatus::Failure;
    double planning_time = 0.0;
    std::optional<double> path_cost;
    double time_budget = 0.0;
    std::map<std::string, long long> stats;
    std::optional<Path> path;
    std::string error;
};

struct RunOptions {
    std::string suite = "suite";
    PrimitivesFile primitives;
    int workers = 1;
};

/// Worker count from PLANBENCH_WORKERS (at least 1), capped by `requested`
/// when that is positive.
int worker_count(int requested = 0);

/// Runs every scenario `repetitions` times with seed
/// base_seed + scenario_index * repetitions + repetition. Records come back
/// in that order regardless of worker count.
std::vector<RunRecord> run_suite(const std::vector<Scenario>& scenarios, PlannerId planner,
                                 const PlannerParams& params, int repetitions, std::uint64_t base_seed,
                                 const RunOptions& options = {});

/// Runs one scenario through one planner.
PlannerResult run_planner(const Scenario& scenario, PlannerId planner, const PlannerParams& params,
                          const PrimitivesFile& primitives = {});

struct TimeSummary {
    std::size_t count = 0;
    double min = 0.0;
    double median = 0.0;
    double geometric_mean = 0.0;
    double max = 0.0;

    bool empty() const { return count == 0; }
};

TimeSummary summarize_times(std::vector<double> times);

struct SuiteSummary {
    std::string suite;
    PlannerId planner = PlannerId::RrtConnect;
    std::size_t success_forward = 0;
    std::size_t success_backward = 0;
    std::size_t failure = 0;      // includes per-record errors
    std::size_t unsolvable = 0;
    std::size_t total = 0;
    double success_rate = 0.0;
    TimeSummary solved_times;
    TimeSummary all_times;
};

struct BenchmarkReport {
    std::vector<SuiteSummary> summaries; // ordered by (planner, first appearance of suite)
    std::vector<RunRecord> records;
    std::map<std::string, std::string> environment;
};

BenchmarkReport aggregate(const std::vector<RunRecord>& records);

enum class ReportFormat { Table, Csv };

std::string emit_report(const BenchmarkReport& report, ReportFormat format);

inline constexpr std::string_view kCsvHeader = "scenario,planner,seed,status,planning_time_s,path_cost";

std::string emit_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> parse_csv(std::string_view text);

/// Scenarios of a suite directory: generated/*.scenario in name order, or
/// base.scenario when nothing has been generated.
std::vector<Scenario> load_suite(const std::filesystem::path& dir);

/// Writes one file per scenario; robot paths are rewritten relative to `dir`.
void write_scenarios(const std::vector<Scenario>& scenarios, const std::filesystem::path& source_dir,
                     const std::filesystem::path& dir);

std::string emit_path_csv(const Path& path);
Path parse_path_csv(std::string_view text);

} // namespace planbench
