#include "planbench/planner.hpp"

#include "planbench/error.hpp"

#include <algorithm>

namespace planbench {

Query make_query(const Scenario& scenario, double default_goal_tolerance) {
    return {scenario.start, scenario.goal.with_default_tolerance(default_goal_tolerance), scenario.time_budget};
}

bool operator==(const Path& a, const Path& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.waypoints[i].size() != b.waypoints[i].size()) return false;
        if (!(a.waypoints[i].array() == b.waypoints[i].array()).all()) return false;
    }
    return true;
}

std::string to_string(QueryValidity v) {
    switch (v) {
    case QueryValidity::Ok: return "ok";
    case QueryValidity::StartInCollision: return "start_in_collision";
    case QueryValidity::GoalInCollision: return "goal_in_collision";
    }
    return "?";
}

std::string to_string(PlannerResult::Status s) {
    switch (s) {
    case PlannerResult::Status::Solved: return "solved";
    case PlannerResult::Status::FailureTimeout: return "failure_timeout";
    case PlannerResult::Status::Unsolvable: return "unsolvable";
    }
    return "?";
}

std::string to_string(PlannerResult::Direction d) {
    return d == PlannerResult::Direction::Forward ? "forward" : "backward";
}

PlannerResult PlannerResult::solved_with(Path path, Direction direction) {
    PlannerResult r;
    r.status = Status::Solved;
    r.path = std::move(path);
    r.direction = direction;
    return r;
}

PlannerResult PlannerResult::timeout() {
    PlannerResult r;
    r.status = Status::FailureTimeout;
    return r;
}

PlannerResult PlannerResult::unsolvable(QueryValidity reason) {
    PlannerResult r;
    r.status = Status::Unsolvable;
    r.unsolvable_reason = reason;
    return r;
}

std::size_t SearchGraph::add_node(Configuration q) {
    nodes.push_back(std::move(q));
    return nodes.size() - 1;
}

void SearchGraph::add_edge(const RobotModel& robot, std::size_t parent, std::size_t child) {
    if (parent >= nodes.size() || child >= nodes.size()) throw ContractViolation("SearchGraph: index out of range");
    if (parent == child) throw ContractViolation("SearchGraph: self-loop");
    edges.push_back({parent, child, config_distance(robot, nodes[parent], nodes[child])});
}

bool goal_satisfied(const GoalSpec& goal, const Configuration& q) {
    const Configuration lo = goal.box_lower();
    const Configuration hi = goal.box_upper();
    if (q.size() != lo.size()) throw ContractViolation("goal_satisfied: dimension mismatch");
    if (goal.kind == GoalSpec::Kind::Config) {
        const Eigen::VectorXd tol = goal.tolerance_or_zero();
        return ((q - goal.target).cwiseAbs().array() <= tol.array()).all();
    }
    return (q.array() >= lo.array()).all() && (q.array() <= hi.array()).all();
}

std::vector<Configuration> goal_representatives(const RobotModel& robot, const GoalSpec& goal, std::uint64_t seed) {
    if (goal.kind == GoalSpec::Kind::Config) return {goal.target};
    const Configuration lo = goal.lower.cwiseMax(robot.lower());
    const Configuration hi = goal.upper.cwiseMin(robot.upper());
    std::vector<Configuration> reps;
    reps.push_back(0.5 * (lo + hi));
    Rng rng(seed);
    for (int k = 0; k < kGoalRepresentativeSamples; ++k) {
        Configuration q(robot.dof());
        for (std::size_t i = 0; i < robot.dof(); ++i)
            q[i] = lo[i] == hi[i] ? lo[i] : std::uniform_real_distribution<double>(lo[i], hi[i])(rng);
        reps.push_back(std::move(q));
    }
    return reps;
}

std::optional<Configuration> free_goal_representative(const RobotModel& robot, const WorldModel& world,
                                                      const GoalSpec& goal, std::uint64_t seed, int attempts) {
    if (goal.kind == GoalSpec::Kind::Config) {
        if (check_config(robot, world, goal.target).is_free()) return goal.target;
        return std::nullopt;
    }
    const Configuration lo = goal.lower.cwiseMax(robot.lower());
    const Configuration hi = goal.upper.cwiseMin(robot.upper());
    Rng rng(seed);
    for (int k = 0; k < attempts; ++k) {
        Configuration q(robot.dof());
        for (std::size_t i = 0; i < robot.dof(); ++i)
            q[i] = lo[i] == hi[i] ? lo[i] : std::uniform_real_distribution<double>(lo[i], hi[i])(rng);
        if (check_config(robot, world, q).is_free()) return q;
    }
    return std::nullopt;
}

QueryValidity validate_query(const RobotModel& robot, const WorldModel& world, const Query& query,
                             std::uint64_t seed) {
    if (!check_config(robot, world, query.start).is_free()) return QueryValidity::StartInCollision;
    for (const auto& q : goal_representatives(robot, query.goal, seed))
        if (check_config(robot, world, q).is_free()) return QueryValidity::Ok;
    return QueryValidity::GoalInCollision;
}

double path_cost(const RobotModel& robot, const Path& path) {
    if (path.empty()) throw ContractViolation("path_cost: empty path");
    double cost = 0.0;
    for (std::size_t k = 1; k < path.size(); ++k) cost += config_distance(robot, path.waypoints[k - 1], path.waypoints[k]);
    return cost;
}

bool validate_path(const RobotModel& robot, const WorldModel& world, const Query& query, const Path& path,
                   double step) {
    if (path.empty()) return false;
    for (const auto& w : path.waypoints)
        if (static_cast<std::size_t>(w.size()) != robot.dof()) return false;
    if (!(path.front().array() == query.start.array()).all()) return false;
    if (!goal_satisfied(query.goal, path.back())) return false;
    if (path.size() == 1) return check_config(robot, world, path.front()).is_free();
    for (std::size_t k = 1; k < path.size(); ++k)
        if (!check_motion(robot, world, path.waypoints[k - 1], path.waypoints[k], step)) return false;
    return true;
}

} // namespace planbench
