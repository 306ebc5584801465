#include "planbench/rrt_connect.hpp"

#include "planbench/error.hpp"

#include <algorithm>
#include <limits>

namespace planbench {

void RrtParams::validate() const {
    if (!(step_eta > 0.0)) throw ValidationError("rrt_connect.step_eta must be positive");
    if (!(edge_step > 0.0)) throw ValidationError("rrt_connect.edge_step must be positive");
    if (step_eta < edge_step) throw ValidationError("rrt_connect.step_eta must be at least edge_step");
    if (max_iterations < 0) throw ValidationError("rrt_connect.max_iterations must be non-negative");
}

std::size_t Tree::add(Configuration q, std::size_t parent) {
    nodes_.push_back(std::move(q));
    parents_.push_back(parent);
    return nodes_.size() - 1;
}

std::vector<Configuration> Tree::branch(std::size_t i) const {
    std::vector<Configuration> out;
    while (true) {
        out.push_back(nodes_[i]);
        if (i == 0) break;
        i = parents_[i];
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::size_t nearest(const RobotModel& robot, const Tree& tree, const Configuration& q) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const double d = config_distance(robot, tree.node(i), q);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

ExtendResult extend(Tree& tree, const Configuration& target, const RrtParams& params, const RobotModel& robot,
                    const WorldModel& world, CheckCounter* counter) {
    const std::size_t near = nearest(robot, tree, target);
    const Configuration& q_near = tree.node(near);
    const double d = config_distance(robot, q_near, target);
    if (d == 0.0) return {ExtendResult::Status::Reached, near};

    const bool reaches = d <= params.step_eta;
    Configuration q_new = reaches ? target : Configuration(q_near + (params.step_eta / d) * (target - q_near));
    if (!check_motion(robot, world, q_near, q_new, params.edge_step, counter))
        return {ExtendResult::Status::Trapped, near};
    const std::size_t added = tree.add(std::move(q_new), near);
    return {reaches ? ExtendResult::Status::Reached : ExtendResult::Status::Advanced, added};
}

ExtendResult connect(Tree& tree, const Configuration& target, const RrtParams& params, const RobotModel& robot,
                     const WorldModel& world, CheckCounter* counter, const Deadline* deadline) {
    ExtendResult last{ExtendResult::Status::Trapped, nearest(robot, tree, target)};
    while (true) {
        const ExtendResult r = extend(tree, target, params, robot, world, counter);
        if (r.status == ExtendResult::Status::Reached) return r;
        if (r.status == ExtendResult::Status::Trapped) return last;
        last.node = r.node;
        if (deadline && deadline->expired()) return last;
    }
}

PlannerResult plan_rrt_connect(const RobotModel& robot, const WorldModel& world, const Query& query,
                               const RrtParams& params) {
    const auto started = Deadline::Clock::now();
    const Deadline deadline(started, query.time_budget);
    params.validate();
    require_dimension(robot, query.start, "plan_rrt_connect");

    auto finish = [&](PlannerResult r, const CheckCounter& checks, long long iterations, std::size_t nodes) {
        r.planning_time = std::chrono::duration<double>(Deadline::Clock::now() - started).count();
        r.stats["iterations"] = iterations;
        r.stats["samples"] = iterations;
        r.stats["collision_checks"] = static_cast<long long>(checks.configs);
        r.stats["tree_nodes"] = static_cast<long long>(nodes);
        return r;
    };

    CheckCounter checks;
    const QueryValidity validity = validate_query(robot, world, query, params.seed);
    if (validity != QueryValidity::Ok) return finish(PlannerResult::unsolvable(validity), checks, 0, 0);

    if (goal_satisfied(query.goal, query.start))
        return finish(PlannerResult::solved_with(Path{{query.start}}, PlannerResult::Direction::Forward), checks, 0, 1);

    const auto goal_root = free_goal_representative(robot, world, query.goal, params.seed);
    if (!goal_root) return finish(PlannerResult::unsolvable(QueryValidity::GoalInCollision), checks, 0, 0);

    Tree start_tree(query.start, Tree::Root::Start);
    Tree goal_tree(*goal_root, Tree::Root::Goal);
    Tree* a = &start_tree;
    Tree* b = &goal_tree;
    // Offset the sampling stream from the goal-representative stream.
    Rng rng(params.seed ^ 0x9e3779b97f4a7c15ULL);

    long long iteration = 0;
    while (!deadline.expired() && (params.max_iterations == 0 || iteration < params.max_iterations)) {
        ++iteration;
        const Configuration q_rand = sample_uniform(robot, rng);
        const ExtendResult ea = extend(*a, q_rand, params, robot, world, &checks);
        if (ea.status != ExtendResult::Status::Trapped) {
            const Configuration& q_new = a->node(ea.node);
            const ExtendResult cb = connect(*b, q_new, params, robot, world, &checks, &deadline);
            if (cb.status == ExtendResult::Status::Reached) {
                const std::size_t meet_start = a == &start_tree ? ea.node : cb.node;
                const std::size_t meet_goal = a == &start_tree ? cb.node : ea.node;
                std::vector<Configuration> waypoints = start_tree.branch(meet_start);
                std::vector<Configuration> tail = goal_tree.branch(meet_goal);
                // The meeting configuration is shared; keep one copy.
                for (auto it = tail.rbegin() + 1; it != tail.rend(); ++it) waypoints.push_back(*it);
                return finish(PlannerResult::solved_with(Path{std::move(waypoints)}, PlannerResult::Direction::Forward),
                              checks, iteration, start_tree.size() + goal_tree.size());
            }
        }
        std::swap(a, b);
    }
    return finish(PlannerResult::timeout(), checks, iteration, start_tree.size() + goal_tree.size());
}

} // namespace planbench
