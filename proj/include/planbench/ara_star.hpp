#pragma once

#include "planbench/planner.hpp"

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

namespace planbench {

/// Discretized configuration: joint i sits at lo_i + coords[i] * resolution_i.
struct LatticeState {
    std::vector<int> coords;

    bool operator==(const LatticeState&) const = default;
    auto operator<=>(const LatticeState&) const = default;
};

struct LatticeStateHash {
    std::size_t operator()(const LatticeState& s) const noexcept;
};

/// Largest valid coordinate per joint.
std::vector<int> lattice_extent(const RobotModel& robot);

/// Nearest lattice cell, clamped to the joint range. When a joint range is a
/// whole number of cells the decoded value lies within resolution/2 of q.
LatticeState discretize(const RobotModel& robot, const Configuration& q);
Configuration decode(const RobotModel& robot, const LatticeState& s);
bool lattice_within_limits(const RobotModel& robot, const LatticeState& s);

/// Integer joint-space moves, closed under negation, plus the radius within
/// which the adaptive goal-snap move is tried.
class MotionPrimitiveSet {
public:
    MotionPrimitiveSet(std::vector<std::vector<int>> primitives, double snap_radius);

    const std::vector<std::vector<int>>& primitives() const { return primitives_; }
    std::size_t size() const { return primitives_.size(); }
    double snap_radius() const { return snap_radius_; }

    bool contains(const std::vector<int>& delta) const;

private:
    std::vector<std::vector<int>> primitives_;
    double snap_radius_;
};

/// Extra moves and snap radius read from a primitives file.
struct PrimitivesFile {
    std::vector<std::vector<int>> primitives;
    std::optional<double> snap_radius;
};

PrimitivesFile parse_primitives(std::string_view text);
PrimitivesFile load_primitives(const std::filesystem::path& file);

/// One-cell diagonal length, sqrt(sum w_i r_i^2).
double default_snap_radius(const RobotModel& robot);

/// The 2n single-joint +-1 moves, the file's extra vectors and their
/// negations. Throws ValidationError on vectors of the wrong length.
MotionPrimitiveSet default_primitives(const RobotModel& robot, const PrimitivesFile& extra = {});

struct AraParams {
    std::vector<double> epsilon_schedule{3.0, 2.0, 1.5, 1.0};
    double edge_step = 0.05;
    std::uint64_t seed = 0;
    double budget_split = 0.5; // share of the budget given to the forward attempt

    void validate() const;
};

/// A successor is either a lattice state or the exact goal configuration
/// reached by the adaptive snap move.
struct Successor {
    std::optional<LatticeState> state;
    Configuration config;
    double cost;

    bool is_goal_snap() const { return !state.has_value(); }
};

std::vector<Successor> successors(const LatticeState& s, const MotionPrimitiveSet& primitives,
                                  const RobotModel& robot, const WorldModel& world,
                                  const std::optional<Configuration>& goal_config, double edge_step,
                                  CheckCounter* counter = nullptr);

/// Weighted distance from decode(s) to the nearest point of the goal set.
double heuristic(const LatticeState& s, const GoalSpec& goal, const RobotModel& robot);
double heuristic(const Configuration& q, const GoalSpec& goal, const RobotModel& robot);

inline constexpr double kNoSolution = std::numeric_limits<double>::infinity();

struct SearchStats {
    std::vector<double> epsilons;         // inflation of each started iteration
    std::vector<long long> expansions;    // per iteration
    std::vector<double> incumbent_costs;  // per iteration, kNoSolution when none
    long long reopened = 0;
    long long generated = 0;
    std::size_t collision_checks = 0;
    double final_epsilon = 0.0;           // last iteration that ran to completion
    bool deadline_hit = false;

    long long total_expansions() const;
};

struct SearchOutcome {
    std::optional<Path> path; // decode(start) ... goal-satisfying configuration
    double cost = kNoSolution;
    SearchStats stats;
};

/// Anytime repairing A* over the lattice. Each iteration expands states at
/// most once in order of g + eps * h (ties: larger g, then lexicographic
/// state), reusing g-values and carrying locally inconsistent states into the
/// next iteration. `goal_config`, when set, enables the snap move.
SearchOutcome ara_search(const LatticeState& start, const GoalSpec& goal, const MotionPrimitiveSet& primitives,
                         const AraParams& params, const RobotModel& robot, const WorldModel& world,
                         const Deadline& deadline, const std::optional<Configuration>& goal_config = std::nullopt);

/// Forward search with the first `budget_split` of the budget, then a
/// backward search (goal representative toward the start) with the rest.
PlannerResult plan_ara_star(const RobotModel& robot, const WorldModel& world, const Query& query,
                            const MotionPrimitiveSet& primitives, const AraParams& params);

} // namespace planbench
