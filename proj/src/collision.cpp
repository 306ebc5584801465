#include "planbench/collision.hpp"

#include "planbench/error.hpp"

#include <algorithm>
#include <cmath>

namespace planbench {

namespace {

/// Point expressed in the obstacle frame (inverse yaw about z).
Eigen::Vector3d to_obstacle_frame(const Eigen::Vector3d& p, const Obstacle& o) {
    const Eigen::Vector3d d = p - o.center;
    const double c = std::cos(o.yaw);
    const double s = std::sin(o.yaw);
    return {c * d.x() + s * d.y(), -s * d.x() + c * d.y(), d.z()};
}

double box_distance(const Eigen::Vector3d& local, const Eigen::Vector3d& half) {
    const Eigen::Vector3d q = local.cwiseAbs() - half;
    const double outside = q.cwiseMax(0.0).norm();
    const double inside = std::min(q.maxCoeff(), 0.0);
    return outside + inside;
}

double cylinder_distance(const Eigen::Vector3d& local, double radius, double half_height) {
    const double radial = std::hypot(local.x(), local.y()) - radius;
    const double axial = std::abs(local.z()) - half_height;
    const double outside = std::hypot(std::max(radial, 0.0), std::max(axial, 0.0));
    const double inside = std::min(std::max(radial, axial), 0.0);
    return outside + inside;
}

bool lexicographically_less(const Configuration& a, const Configuration& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return false;
}

} // namespace

std::string to_string(const CollisionResult& r) {
    switch (r.status) {
    case CollisionResult::Status::Free: return "free";
    case CollisionResult::Status::WorldCollision:
        return "world_collision(sphere " + std::to_string(r.first) + ", obstacle " + std::to_string(r.second) + ")";
    case CollisionResult::Status::SelfCollision:
        return "self_collision(sphere " + std::to_string(r.first) + ", sphere " + std::to_string(r.second) + ")";
    case CollisionResult::Status::LimitsViolation: return "limits_violation(joint " + std::to_string(r.first) + ")";
    }
    return "?";
}

double point_obstacle_distance(const Eigen::Vector3d& point, const Obstacle& o) {
    switch (o.shape) {
    case ShapeKind::Box: return box_distance(to_obstacle_frame(point, o), o.half_extents);
    case ShapeKind::Cylinder: return cylinder_distance(to_obstacle_frame(point, o), o.radius, o.half_height);
    case ShapeKind::Sphere: return (point - o.center).norm() - o.radius;
    }
    return 0.0;
}

double sphere_obstacle_distance(const Eigen::Vector3d& center, double radius, const Obstacle& obstacle) {
    return point_obstacle_distance(center, obstacle) - radius;
}

CollisionResult check_config(const RobotModel& robot, const WorldModel& world, const Configuration& q) {
    require_dimension(robot, q, "check_config");
    for (std::size_t i = 0; i < robot.dof(); ++i) {
        const auto& l = robot.joint(i).limits;
        if (!(q[i] >= l.lo && q[i] <= l.hi)) return CollisionResult::limits(i);
    }
    const auto placed = forward_kinematics(robot, q);
    for (std::size_t s = 0; s < placed.size(); ++s)
        for (std::size_t o = 0; o < world.obstacles.size(); ++o)
            if (sphere_obstacle_distance(placed[s].center, placed[s].radius, world.obstacles[o]) < 0.0)
                return CollisionResult::world(s, o);
    for (std::size_t a = 0; a < placed.size(); ++a) {
        for (std::size_t b = a + 1; b < placed.size(); ++b) {
            if (robot.self_pair_ignored(a, b)) continue;
            if ((placed[a].center - placed[b].center).norm() < placed[a].radius + placed[b].radius)
                return CollisionResult::self(a, b);
        }
    }
    return CollisionResult::free();
}

std::size_t motion_check_count(double distance, double step) {
    if (!(step > 0.0)) throw ContractViolation("check_motion: step must be positive");
    return static_cast<std::size_t>(std::ceil(distance / step)) + 1;
}

bool check_motion(const RobotModel& robot, const WorldModel& world, const Configuration& a, const Configuration& b,
                  double step, CheckCounter* counter) {
    const double d = config_distance(robot, a, b);
    const std::size_t n = motion_check_count(d, step);
    const bool swap = lexicographically_less(b, a);
    const Configuration& from = swap ? b : a;
    const Configuration& to = swap ? a : b;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
        if (counter) ++counter->configs;
        if (!check_config(robot, world, interpolate(robot, from, to, t)).is_free()) return false;
    }
    return true;
}

} // namespace planbench
