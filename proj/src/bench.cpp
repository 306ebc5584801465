#include "planbench/bench.hpp"

#include "planbench/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace planbench {

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_number(const std::string& s, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("invalid number '" + s + "'", line);
    }
}

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

} // namespace

std::string to_string(PlannerId id) {
    return id == PlannerId::RrtConnect ? "rrt-connect" : "ara-star";
}

PlannerId parse_planner_id(std::string_view name) {
    if (name == "rrt-connect") return PlannerId::RrtConnect;
    if (name == "ara-star") return PlannerId::AraStar;
    throw ValidationError("unknown planner '" + std::string(name) + "'");
}

std::string to_string(RunStatus s) {
    switch (s) {
    case RunStatus::SolvedForward: return "solved-forward";
    case RunStatus::SolvedBackward: return "solved-backward";
    case RunStatus::Failure: return "failure";
    case RunStatus::Unsolvable: return "unsolvable";
    case RunStatus::Error: return "error";
    }
    return "?";
}

RunStatus parse_run_status(std::string_view s) {
    for (auto st : {RunStatus::SolvedForward, RunStatus::SolvedBackward, RunStatus::Failure, RunStatus::Unsolvable,
                    RunStatus::Error})
        if (s == to_string(st)) return st;
    throw ValidationError("unknown run status '" + std::string(s) + "'");
}

RunStatus run_status(const PlannerResult& r) {
    switch (r.status) {
    case PlannerResult::Status::Solved:
        return r.direction == PlannerResult::Direction::Forward ? RunStatus::SolvedForward : RunStatus::SolvedBackward;
    case PlannerResult::Status::FailureTimeout: return RunStatus::Failure;
    case PlannerResult::Status::Unsolvable: return RunStatus::Unsolvable;
    }
    return RunStatus::Error;
}

int worker_count(int requested) {
    int workers = 1;
    if (const char* env = std::getenv("PLANBENCH_WORKERS")) {
        try {
            workers = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            workers = 1;
        }
    }
    return requested > 0 ? std::min(workers, requested) : workers;
}

PlannerResult run_planner(const Scenario& scenario, PlannerId planner, const PlannerParams& params,
                          const PrimitivesFile& primitives) {
    if (!scenario.robot) throw ValidationError("scenario '" + scenario.name + "' has no robot");
    validate_scenario(scenario);
    const Query query = make_query(scenario, params.common.goal_tolerance_default);
    if (planner == PlannerId::RrtConnect) return plan_rrt_connect(*scenario.robot, scenario.world, query, params.rrt_connect);
    const MotionPrimitiveSet prims = default_primitives(*scenario.robot, primitives);
    return plan_ara_star(*scenario.robot, scenario.world, query, prims, params.ara_star);
}

std::vector<RunRecord> run_suite(const std::vector<Scenario>& scenarios, PlannerId planner,
                                 const PlannerParams& params, int repetitions, std::uint64_t base_seed,
                                 const RunOptions& options) {
    if (repetitions < 1) throw ContractViolation("run_suite: repetitions must be at least 1");
    const std::size_t reps = static_cast<std::size_t>(repetitions);
    const std::size_t total = scenarios.size() * reps;
    std::vector<RunRecord> records(total);

    auto run_one = [&](std::size_t k) {
        const Scenario& sc = scenarios[k / reps];
        RunRecord& rec = records[k];
        rec.suite = options.suite;
        rec.scenario = sc.name;
        rec.planner = planner;
        rec.seed = base_seed + k;
        rec.time_budget = sc.time_budget;
        try {
            const PlannerParams p = params.with_seed(rec.seed);
            const auto t0 = Deadline::Clock::now();
            PlannerResult result = run_planner(sc, planner, p, options.primitives);
            rec.planning_time = std::chrono::duration<double>(Deadline::Clock::now() - t0).count();
            rec.status = run_status(result);
            rec.stats = result.stats;
            if (result.solved()) {
                rec.path_cost = path_cost(*sc.robot, result.path);
                rec.path = std::move(result.path);
            }
        } catch (const std::exception& e) {
            rec.status = RunStatus::Error;
            rec.error = e.what();
        }
    };

    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, options.workers)), total);
    if (workers <= 1) {
        for (std::size_t k = 0; k < total; ++k) run_one(k);
        return records;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < total; k = next++) run_one(k);
        });
    for (auto& t : pool) t.join();
    return records;
}

TimeSummary summarize_times(std::vector<double> times) {
    TimeSummary s;
    if (times.empty()) return s;
    std::sort(times.begin(), times.end());
    s.count = times.size();
    s.min = times.front();
    s.max = times.back();
    const std::size_t mid = times.size() / 2;
    s.median = times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
    double log_sum = 0.0;
    for (double t : times) log_sum += std::log(std::max(t, 1e-12));
    s.geometric_mean = std::exp(log_sum / static_cast<double>(times.size()));
    return s;
}

BenchmarkReport aggregate(const std::vector<RunRecord>& records) {
    if (records.empty()) throw ContractViolation("aggregate: no records");
    BenchmarkReport report;
    report.records = records;
    for (PlannerId planner : {PlannerId::AraStar, PlannerId::RrtConnect}) {
        std::vector<std::string> suites;
        for (const auto& r : records)
            if (r.planner == planner && std::find(suites.begin(), suites.end(), r.suite) == suites.end())
                suites.push_back(r.suite);
        for (const auto& suite : suites) {
            SuiteSummary s;
            s.suite = suite;
            s.planner = planner;
            std::vector<double> solved, all;
            for (const auto& r : records) {
                if (r.planner != planner || r.suite != suite) continue;
                ++s.total;
                all.push_back(r.planning_time);
                switch (r.status) {
                case RunStatus::SolvedForward: ++s.success_forward; solved.push_back(r.planning_time); break;
                case RunStatus::SolvedBackward: ++s.success_backward; solved.push_back(r.planning_time); break;
                case RunStatus::Failure:
                case RunStatus::Error: ++s.failure; break;
                case RunStatus::Unsolvable: ++s.unsolvable; break;
                }
            }
            s.success_rate = static_cast<double>(s.success_forward + s.success_backward) / static_cast<double>(s.total);
            s.solved_times = summarize_times(std::move(solved));
            s.all_times = summarize_times(std::move(all));
            report.summaries.push_back(std::move(s));
        }
    }
    return report;
}

std::string emit_csv(const std::vector<RunRecord>& records) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << r.scenario << ',' << to_string(r.planner) << ',' << r.seed << ',' << to_string(r.status) << ','
            << format_double(r.planning_time) << ',';
        if (r.path_cost) out << format_double(*r.path_cost);
        out << '\n';
    }
    return out.str();
}

std::vector<RunRecord> parse_csv(std::string_view text) {
    const auto lines = lines_of(text);
    if (lines.empty() || lines.front() != kCsvHeader) throw ParseError("missing CSV header", 1);
    std::vector<RunRecord> records;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i + 1);
        if (lines[i].empty()) continue;
        const auto f = split(lines[i], ',');
        if (f.size() != 6) throw ParseError("expected 6 fields", line_no);
        RunRecord r;
        r.scenario = f[0];
        try {
            r.planner = parse_planner_id(f[1]);
            r.status = parse_run_status(f[3]);
            std::size_t used = 0;
            r.seed = std::stoull(f[2], &used);
            if (used != f[2].size()) throw std::invalid_argument(f[2]);
        } catch (const std::exception& e) {
            throw ParseError(e.what(), line_no);
        }
        r.planning_time = parse_number(f[4], line_no);
        if (!f[5].empty()) r.path_cost = parse_number(f[5], line_no);
        records.push_back(std::move(r));
    }
    return records;
}

std::string emit_report(const BenchmarkReport& report, ReportFormat format) {
    if (format == ReportFormat::Csv) return emit_csv(report.records);

    std::ostringstream out;
    for (PlannerId planner : {PlannerId::AraStar, PlannerId::RrtConnect}) {
        bool any = false;
        for (const auto& s : report.summaries) any = any || s.planner == planner;
        if (!any) continue;
        out << "Benchmarking results for " << (planner == PlannerId::AraStar ? "ARA*" : "RRT-Connect") << ".\n";
        out << "suite, success_forward, success_backward, failure, unsolvable\n";
        for (const auto& s : report.summaries) {
            if (s.planner != planner) continue;
            out << s.suite << ", " << s.success_forward << ", ";
            // RRT-Connect grows both trees inside one attempt; no backward column.
            if (planner == PlannerId::RrtConnect)
                out << "-";
            else
                out << s.success_backward;
            out << ", " << s.failure << ", " << s.unsolvable << '\n';
        }
        out << '\n';
    }

    out << "Planning time (s) over solved runs.\n";
    out << "suite, planner, success_rate, solved, min, median, geomean, max\n";
    char buf[256];
    for (const auto& s : report.summaries) {
        out << s.suite << ", " << to_string(s.planner) << ", ";
        std::snprintf(buf, sizeof buf, "%.3f, %zu", s.success_rate, s.solved_times.count);
        out << buf;
        if (s.solved_times.empty()) {
            out << ", -, -, -, -\n";
        } else {
            std::snprintf(buf, sizeof buf, ", %.6f, %.6f, %.6f, %.6f\n", s.solved_times.min, s.solved_times.median,
                          s.solved_times.geometric_mean, s.solved_times.max);
            out << buf;
        }
    }
    if (!report.environment.empty()) {
        out << '\n';
        for (const auto& [k, v] : report.environment) out << "# " << k << ": " << v << '\n';
    }
    return out.str();
}

std::vector<Scenario> load_suite(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    if (fs::is_directory(dir / "generated"))
        for (const auto& e : fs::directory_iterator(dir / "generated"))
            if (e.is_regular_file() && e.path().extension() == ".scenario") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        if (!fs::exists(dir / "base.scenario")) throw ParseError("suite " + dir.string() + " has no scenarios");
        files.push_back(dir / "base.scenario");
    }
    std::vector<Scenario> out;
    for (const auto& f : files) out.push_back(load_scenario(f));
    return out;
}

void write_scenarios(const std::vector<Scenario>& scenarios, const std::filesystem::path& source_dir,
                     const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    for (Scenario sc : scenarios) {
        fs::path robot(sc.robot_file);
        if (robot.is_relative()) robot = fs::weakly_canonical(fs::absolute(source_dir) / robot);
        sc.robot_file = fs::relative(robot, fs::weakly_canonical(fs::absolute(dir))).generic_string();
        std::ofstream out(dir / (sc.name + ".scenario"));
        if (!out) throw ValidationError("cannot write scenario to " + dir.string());
        out << serialize_scenario(sc);
    }
}

std::string emit_path_csv(const Path& path) {
    std::ostringstream out;
    const Eigen::Index n = path.empty() ? 0 : path.front().size();
    for (Eigen::Index i = 0; i < n; ++i) out << (i ? "," : "") << 'q' << i;
    out << '\n';
    for (const auto& w : path.waypoints) {
        for (Eigen::Index i = 0; i < w.size(); ++i) out << (i ? "," : "") << format_double(w[i]);
        out << '\n';
    }
    return out.str();
}

Path parse_path_csv(std::string_view text) {
    const auto lines = lines_of(text);
    if (lines.empty()) throw ParseError("empty path file");
    const std::size_t n = split(lines.front(), ',').size();
    Path path;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto f = split(lines[i], ',');
        const int line_no = static_cast<int>(i + 1);
        if (f.size() != n) throw ParseError("expected " + std::to_string(n) + " values", line_no);
        Configuration q(static_cast<Eigen::Index>(n));
        for (std::size_t k = 0; k < n; ++k) q[static_cast<Eigen::Index>(k)] = parse_number(f[k], line_no);
        path.waypoints.push_back(std::move(q));
    }
    return path;
}

} // namespace planbench
