#pragma once

#include "planbench/collision.hpp"
#include "planbench/robot_model.hpp"
#include "planbench/world.hpp"

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace planbench {

/// Wall-clock slack allowed past the time budget.
inline constexpr double kBudgetGrace = 0.05;

/// Samples drawn inside a region goal (plus its center) when deciding
/// whether the goal is in collision.
inline constexpr int kGoalRepresentativeSamples = 32;

struct Query {
    Configuration start;
    GoalSpec goal;
    double time_budget = 1.0;
};

Query make_query(const Scenario& scenario, double default_goal_tolerance = 0.0);

/// Polyline in C-space.
struct Path {
    std::vector<Configuration> waypoints;

    std::size_t size() const { return waypoints.size(); }
    bool empty() const { return waypoints.empty(); }
    const Configuration& front() const { return waypoints.front(); }
    const Configuration& back() const { return waypoints.back(); }
};

bool operator==(const Path& a, const Path& b);

enum class QueryValidity { Ok, StartInCollision, GoalInCollision };

std::string to_string(QueryValidity v);

struct PlannerResult {
    enum class Status { Solved, FailureTimeout, Unsolvable };
    enum class Direction { Forward, Backward };

    Status status = Status::FailureTimeout;
    Path path;
    Direction direction = Direction::Forward;
    QueryValidity unsolvable_reason = QueryValidity::Ok;
    double planning_time = 0.0;
    std::map<std::string, long long> stats;

    bool solved() const { return status == Status::Solved; }

    static PlannerResult solved_with(Path path, Direction direction);
    static PlannerResult timeout();
    static PlannerResult unsolvable(QueryValidity reason);
};

std::string to_string(PlannerResult::Status s);
std::string to_string(PlannerResult::Direction d);

/// Graph over configurations; edges carry their C-space length.
struct SearchGraph {
    struct Edge {
        std::size_t parent;
        std::size_t child;
        double cost;
    };

    std::vector<Configuration> nodes;
    std::vector<Edge> edges;

    std::size_t add_node(Configuration q);
    /// Adds parent -> child with cost = config_distance; rejects self-loops
    /// and out-of-range indices.
    void add_edge(const RobotModel& robot, std::size_t parent, std::size_t child);
};

/// Monotonic deadline polled by the planners at loop boundaries.
class Deadline {
public:
    using Clock = std::chrono::steady_clock;

    explicit Deadline(double seconds) : Deadline(Clock::now(), seconds) {}
    Deadline(Clock::time_point start, double seconds)
        : end_(start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds))) {}

    bool expired() const { return Clock::now() >= end_; }
    double remaining() const { return std::chrono::duration<double>(end_ - Clock::now()).count(); }
    Clock::time_point end() const { return end_; }

private:
    Clock::time_point end_;
};

bool goal_satisfied(const GoalSpec& goal, const Configuration& q);

/// Configurations that stand for the goal: the target for config goals; the
/// region center followed by `kGoalRepresentativeSamples` seeded uniform
/// samples of region ∩ joint limits for region goals.
std::vector<Configuration> goal_representatives(const RobotModel& robot, const GoalSpec& goal, std::uint64_t seed);

/// First collision-free goal representative: the target for config goals, or
/// up to `attempts` seeded samples for region goals.
std::optional<Configuration> free_goal_representative(const RobotModel& robot, const WorldModel& world,
                                                      const GoalSpec& goal, std::uint64_t seed,
                                                      int attempts = kGoalRepresentativeSamples);

QueryValidity validate_query(const RobotModel& robot, const WorldModel& world, const Query& query,
                             std::uint64_t seed = 0);

double path_cost(const RobotModel& robot, const Path& path);

bool validate_path(const RobotModel& robot, const WorldModel& world, const Query& query, const Path& path,
                   double step);

} // namespace planbench
