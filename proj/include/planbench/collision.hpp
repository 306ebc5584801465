#pragma once

#include "planbench/robot_model.hpp"
#include "planbench/world.hpp"

#include <cstddef>
#include <string>

namespace planbench {

struct CollisionResult {
    enum class Status { Free, WorldCollision, SelfCollision, LimitsViolation };

    Status status = Status::Free;
    // WorldCollision: (sphere, obstacle). SelfCollision: (sphere, sphere).
    // LimitsViolation: (joint, unused).
    std::size_t first = 0;
    std::size_t second = 0;

    static CollisionResult free() { return {}; }
    static CollisionResult world(std::size_t sphere, std::size_t obstacle) {
        return {Status::WorldCollision, sphere, obstacle};
    }
    static CollisionResult self(std::size_t a, std::size_t b) { return {Status::SelfCollision, a, b}; }
    static CollisionResult limits(std::size_t joint) { return {Status::LimitsViolation, joint, 0}; }

    bool is_free() const { return status == Status::Free; }
    bool operator==(const CollisionResult&) const = default;
};

std::string to_string(const CollisionResult& r);

/// Signed distance from the surface of a sphere to the surface of an
/// obstacle; negative when they overlap.
double sphere_obstacle_distance(const Eigen::Vector3d& center, double radius, const Obstacle& obstacle);

/// Signed distance from a point to the obstacle surface (negative inside).
double point_obstacle_distance(const Eigen::Vector3d& point, const Obstacle& obstacle);

/// Checks joint limits, then world contact (spheres in order, obstacles in
/// order), then self contact over sphere pairs (i < j). Touching is free.
CollisionResult check_config(const RobotModel& robot, const WorldModel& world, const Configuration& q);

/// Collision-check counter shared by the motion checker and planners.
struct CheckCounter {
    std::size_t configs = 0;
};

/// Number of configurations check_motion evaluates for a segment of C-space
/// length `distance`: ceil(distance / step) + 1.
std::size_t motion_check_count(double distance, double step);

/// Validates the straight segment a -> b at ceil(d / step) + 1 evenly spaced
/// configurations, endpoints included. The pair is visited in a canonical
/// order so the result does not depend on the argument order.
bool check_motion(const RobotModel& robot, const WorldModel& world, const Configuration& a, const Configuration& b,
                  double step, CheckCounter* counter = nullptr);

} // namespace planbench
