#pragma once

#include "planbench/planner.hpp"

#include <cstdint>
#include <vector>

namespace planbench {

struct RrtParams {
    double step_eta = 0.5;   // max extension length, weighted C-space units
    double edge_step = 0.05; // edge validation resolution
    long long max_iterations = 0; // 0: limited by the time budget only
    std::uint64_t seed = 0;

    /// Throws ValidationError when an invariant is broken.
    void validate() const;
};

/// Rooted tree; parents_[0] == 0 marks the root.
class Tree {
public:
    enum class Root { Start, Goal };

    Tree(Configuration root, Root kind) : nodes_{std::move(root)}, parents_{0}, kind_(kind) {}

    std::size_t size() const { return nodes_.size(); }
    const Configuration& node(std::size_t i) const { return nodes_[i]; }
    std::size_t parent(std::size_t i) const { return parents_[i]; }
    Root kind() const { return kind_; }

    std::size_t add(Configuration q, std::size_t parent);

    /// Nodes from the root down to `i`.
    std::vector<Configuration> branch(std::size_t i) const;

private:
    std::vector<Configuration> nodes_;
    std::vector<std::size_t> parents_;
    Root kind_;
};

/// Linear scan; ties go to the lowest index.
std::size_t nearest(const RobotModel& robot, const Tree& tree, const Configuration& q);

struct ExtendResult {
    enum class Status { Reached, Advanced, Trapped };
    Status status;
    std::size_t node = 0;
};

ExtendResult extend(Tree& tree, const Configuration& target, const RrtParams& params, const RobotModel& robot,
                    const WorldModel& world, CheckCounter* counter = nullptr);

/// Repeated extend toward a fixed target. Returns Reached, or Trapped with
/// `node` set to the last node added (or the nearest node when none was).
ExtendResult connect(Tree& tree, const Configuration& target, const RrtParams& params, const RobotModel& robot,
                     const WorldModel& world, CheckCounter* counter = nullptr,
                     const Deadline* deadline = nullptr);

PlannerResult plan_rrt_connect(const RobotModel& robot, const WorldModel& world, const Query& query,
                               const RrtParams& params);

} // namespace planbench
