#include "support.hpp"

#include "planbench/bench.hpp"
#include "planbench/error.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace planbench;

namespace {

std::vector<RunRecord> records_for(const std::string& suite, PlannerId planner, std::size_t fwd, std::size_t bwd,
                                   std::size_t fail, std::size_t unsolvable, std::size_t errors = 0) {
    std::vector<RunRecord> out;
    auto add = [&](RunStatus status, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            RunRecord r;
            r.suite = suite;
            r.scenario = suite + "_" + std::to_string(out.size());
            r.planner = planner;
            r.seed = out.size();
            r.status = status;
            r.planning_time = 0.001 * static_cast<double>(out.size() + 1);
            out.push_back(r);
        }
    };
    add(RunStatus::SolvedForward, fwd);
    add(RunStatus::SolvedBackward, bwd);
    add(RunStatus::Failure, fail);
    add(RunStatus::Unsolvable, unsolvable);
    add(RunStatus::Error, errors);
    return out;
}

std::vector<RunRecord> published_records() {
    std::vector<RunRecord> all;
    auto append = [&](std::vector<RunRecord> v) { all.insert(all.end(), v.begin(), v.end()); };
    append(records_for("shelf_zero_test", PlannerId::AraStar, 47, 53, 0, 0));
    append(records_for("shelf_height_test", PlannerId::AraStar, 47, 52, 0, 1));
    append(records_for("shelf_height_rot_test", PlannerId::AraStar, 43, 43, 6, 8));
    append(records_for("shelf_zero_test", PlannerId::RrtConnect, 85, 0, 15, 0));
    append(records_for("shelf_height_test", PlannerId::RrtConnect, 82, 0, 18, 0));
    append(records_for("shelf_height_rot_test", PlannerId::RrtConnect, 76, 0, 24, 0));
    return all;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

} // namespace

TEST(Report, RendersPublishedRows) {
    const BenchmarkReport report = aggregate(published_records());
    const auto l = lines(emit_report(report, ReportFormat::Table));
    ASSERT_GE(l.size(), 11u);
    EXPECT_EQ(l[0], "Benchmarking results for ARA*.");
    EXPECT_EQ(l[1], "suite, success_forward, success_backward, failure, unsolvable");
    EXPECT_EQ(l[2], "shelf_zero_test, 47, 53, 0, 0");
    EXPECT_EQ(l[3], "shelf_height_test, 47, 52, 0, 1");
    EXPECT_EQ(l[4], "shelf_height_rot_test, 43, 43, 6, 8");
    EXPECT_EQ(l[6], "Benchmarking results for RRT-Connect.");
    EXPECT_EQ(l[8], "shelf_zero_test, 85, -, 15, 0");
    EXPECT_EQ(l[9], "shelf_height_test, 82, -, 18, 0");
    EXPECT_EQ(l[10], "shelf_height_rot_test, 76, -, 24, 0");
}

TEST(Report, FailureTotalsMatchPublishedProse) {
    const BenchmarkReport report = aggregate(published_records());
    std::size_t ara_fail = 0, ara_unsolvable = 0, rrt_fail = 0;
    for (const auto& s : report.summaries) {
        if (s.planner == PlannerId::AraStar) {
            ara_fail += s.failure;
            ara_unsolvable += s.unsolvable;
        } else {
            rrt_fail += s.failure + s.unsolvable;
        }
    }
    EXPECT_EQ(ara_fail + ara_unsolvable, 15u);
    EXPECT_EQ(ara_unsolvable, 9u);
    EXPECT_EQ(rrt_fail, 57u);
    EXPECT_DOUBLE_EQ(report.summaries[3].success_rate, 0.85);
}

TEST(Report, CountsAreConserved) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 200; ++k) {
        std::vector<RunRecord> all;
        const int suites = 1 + static_cast<int>(rng() % 3);
        for (int s = 0; s < suites; ++s) {
            const auto planner = rng() % 2 ? PlannerId::AraStar : PlannerId::RrtConnect;
            auto v = records_for("s" + std::to_string(s), planner, rng() % 5, planner == PlannerId::AraStar ? rng() % 5 : 0,
                                 rng() % 5, rng() % 3, rng() % 2);
            all.insert(all.end(), v.begin(), v.end());
        }
        if (all.empty()) continue;
        const BenchmarkReport report = aggregate(all);
        std::size_t total = 0;
        for (const auto& s : report.summaries) {
            ASSERT_EQ(s.success_forward + s.success_backward + s.failure + s.unsolvable, s.total);
            ASSERT_EQ(s.solved_times.count, s.success_forward + s.success_backward);
            ASSERT_EQ(s.all_times.count, s.total);
            ASSERT_GE(s.success_rate, 0.0);
            ASSERT_LE(s.success_rate, 1.0);
            total += s.total;
        }
        ASSERT_EQ(total, all.size());
    }
}

TEST(Report, ErrorsCountAsFailures) {
    const BenchmarkReport report = aggregate(records_for("x", PlannerId::AraStar, 1, 0, 1, 0, 2));
    EXPECT_EQ(report.summaries[0].failure, 3u);
}

TEST(Report, AllFailureSuiteHasNoTimes) {
    const BenchmarkReport report = aggregate(records_for("x", PlannerId::RrtConnect, 0, 0, 4, 0));
    EXPECT_EQ(report.summaries[0].success_rate, 0.0);
    const std::string text = emit_report(report, ReportFormat::Table);
    EXPECT_NE(text.find("x, rrt-connect, 0.000, 0, -, -, -, -"), std::string::npos) << text;
    EXPECT_THROW(aggregate({}), ContractViolation);
}

TEST(Report, EnvironmentLinesAppended) {
    BenchmarkReport report = aggregate(records_for("x", PlannerId::AraStar, 1, 0, 0, 0));
    report.environment["workers"] = "1";
    EXPECT_NE(emit_report(report, ReportFormat::Table).find("# workers: 1\n"), std::string::npos);
}

TEST(Times, Summary) {
    const TimeSummary s = summarize_times({4.0, 1.0, 2.0, 8.0});
    EXPECT_EQ(s.count, 4u);
    EXPECT_EQ(s.min, 1.0);
    EXPECT_EQ(s.max, 8.0);
    EXPECT_EQ(s.median, 3.0);
    EXPECT_NEAR(s.geometric_mean, std::pow(64.0, 0.25), 1e-12);
    EXPECT_EQ(summarize_times({5.0, 1.0, 3.0}).median, 3.0);
    EXPECT_TRUE(summarize_times({}).empty());
}

TEST(Csv, RoundTrip) {
    auto records = records_for("x", PlannerId::AraStar, 2, 1, 1, 1, 1);
    records[0].path_cost = 1.0 / 3.0;
    records[1].planning_time = 1e-7;
    const std::string text = emit_csv(records);
    EXPECT_EQ(text.substr(0, kCsvHeader.size()), kCsvHeader);
    const auto back = parse_csv(text);
    ASSERT_EQ(back.size(), records.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back[i].scenario, records[i].scenario);
        EXPECT_EQ(back[i].planner, records[i].planner);
        EXPECT_EQ(back[i].seed, records[i].seed);
        EXPECT_EQ(back[i].status, records[i].status);
        EXPECT_EQ(back[i].planning_time, records[i].planning_time);
        EXPECT_EQ(back[i].path_cost, records[i].path_cost);
    }
    EXPECT_EQ(emit_csv({}), std::string(kCsvHeader) + "\n");
    EXPECT_TRUE(parse_csv(emit_csv({})).empty());
}

TEST(Csv, MalformedInputReportsLine) {
    EXPECT_THROW(parse_csv("a,b\n"), ParseError);
    try {
        parse_csv(std::string(kCsvHeader) + "\ns,ara-star,1,solved-forward,0.1,\ns,ara-star,x,failure,0.1,\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
    }
    EXPECT_THROW(parse_csv(std::string(kCsvHeader) + "\ns,prm,1,failure,0.1,\n"), ParseError);
}

TEST(PathCsv, RoundTrip) {
    Path p;
    p.waypoints = {Eigen::Vector3d(0.1, 1.0 / 3.0, -2), Eigen::Vector3d(1e-17, 4, 5)};
    const Path back = parse_path_csv(emit_path_csv(p));
    EXPECT_EQ(back.waypoints, p.waypoints);
    EXPECT_EQ(emit_path_csv(p).substr(0, 9), "q0,q1,q2\n");
    EXPECT_TRUE(parse_path_csv(emit_path_csv(Path{})).empty());
    EXPECT_THROW(parse_path_csv("q0,q1\n1,2,3\n"), ParseError);
}

TEST(Status, Mapping) {
    EXPECT_EQ(run_status(PlannerResult::timeout()), RunStatus::Failure);
    EXPECT_EQ(run_status(PlannerResult::unsolvable(QueryValidity::GoalInCollision)), RunStatus::Unsolvable);
    EXPECT_EQ(run_status(PlannerResult::solved_with(Path{}, PlannerResult::Direction::Backward)),
              RunStatus::SolvedBackward);
    for (auto s : {RunStatus::SolvedForward, RunStatus::SolvedBackward, RunStatus::Failure, RunStatus::Unsolvable,
                   RunStatus::Error})
        EXPECT_EQ(parse_run_status(to_string(s)), s);
    EXPECT_EQ(parse_planner_id("ara-star"), PlannerId::AraStar);
    EXPECT_THROW(parse_planner_id("prm"), ValidationError);
}

TEST(Suite, LoadPrefersGeneratedScenarios) {
    EXPECT_EQ(load_suite(support::data_dir() / "suites/shelf_slot").size(), 30u);
    EXPECT_EQ(load_suite(support::data_dir() / "suites/shelf_zero").size(), 1u);
}

TEST(Suite, WrittenScenariosReload) {
    namespace fs = std::filesystem;
    const fs::path base = support::data_dir() / "suites/shelf_zero";
    const Scenario s = load_scenario(base / "base.scenario");
    const auto variations = generate_variations(s, VariationFamily::PlusHeight, 3, 5);
    const fs::path dir = fs::temp_directory_path() / "planbench_test_suite" / "generated";
    fs::remove_all(dir.parent_path());
    write_scenarios(variations, base, dir);
    const auto back = load_suite(dir.parent_path());
    ASSERT_EQ(back.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(back[i].world, variations[i].world);
        EXPECT_EQ(back[i].start, variations[i].start);
    }
    fs::remove_all(dir.parent_path());
}

TEST(Suite, RunIsDeterministicAndOrdered) {
    const auto scenarios = load_suite(support::data_dir() / "suites/shelf_slot");
    const std::vector<Scenario> few(scenarios.begin(), scenarios.begin() + 3);
    PlannerParams params = load_params(support::data_dir() / "params/first_solution.params.yaml");
    RunOptions opts;
    opts.suite = "shelf_slot";
    opts.primitives = load_primitives(support::data_dir() / "primitives/shelf_slot.yaml");
    const auto a = run_suite(few, PlannerId::RrtConnect, params, 2, 10, opts);
    opts.workers = 2;
    const auto b = run_suite(few, PlannerId::RrtConnect, params, 2, 10, opts);
    ASSERT_EQ(a.size(), 6u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].scenario, few[i / 2].name);
        EXPECT_EQ(a[i].seed, 10 + i);
        EXPECT_EQ(a[i].status, b[i].status);
        ASSERT_EQ(a[i].path.has_value(), b[i].path.has_value());
        if (a[i].path) {
            EXPECT_EQ(a[i].path->waypoints, b[i].path->waypoints);
        }
    }
}

TEST(Suite, WorkerCountFromEnvironment) {
    ::setenv("PLANBENCH_WORKERS", "4", 1);
    EXPECT_EQ(worker_count(), 4);
    EXPECT_EQ(worker_count(2), 2);
    ::setenv("PLANBENCH_WORKERS", "junk", 1);
    EXPECT_EQ(worker_count(), 1);
    ::unsetenv("PLANBENCH_WORKERS");
    EXPECT_EQ(worker_count(), 1);
}
