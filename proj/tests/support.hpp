#pragma once

#include "planbench/bench.hpp"

#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace support {

inline std::filesystem::path data_dir() { return PLANBENCH_DATA_DIR; }

inline std::shared_ptr<const planbench::RobotModel> manipulator() {
    static const auto robot =
        std::make_shared<const planbench::RobotModel>(planbench::load_robot(data_dir() / "robots/manipulator8.robot.yaml"));
    return robot;
}

/// Cartesian point robot: n prismatic joints along x, y, z over [0, extent]
/// carrying one sphere.
inline planbench::RobotModel gantry(std::size_t n, double extent, double resolution, double radius = 0.05) {
    std::vector<planbench::JointSpec> joints;
    const char* names[] = {"x", "y", "z"};
    for (std::size_t i = 0; i < n; ++i) {
        planbench::JointSpec j;
        j.name = names[i];
        j.kind = planbench::JointKind::Prismatic;
        j.axis = Eigen::Vector3d::Unit(static_cast<Eigen::Index>(i));
        j.limits = {0.0, extent};
        j.resolution = resolution;
        joints.push_back(j);
    }
    return planbench::RobotModel(std::move(joints), {{n - 1, Eigen::Vector3d::Zero(), radius}});
}

/// Planar two-link arm: revolute about z, link lengths 1, one sphere per link.
inline planbench::RobotModel planar_arm() {
    planbench::JointSpec a;
    a.name = "a";
    a.limits = {-3.0, 3.0};
    planbench::JointSpec b = a;
    b.name = "b";
    b.origin_xyz = {1.0, 0.0, 0.0};
    return planbench::RobotModel({a, b}, {{0, {0.5, 0, 0}, 0.1}, {1, {1.0, 0, 0}, 0.1}});
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Random obstacle of any shape with its center inside the given box.
inline planbench::Obstacle random_obstacle(std::mt19937_64& rng, const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
                                           double min_size, double max_size) {
    const Eigen::Vector3d c(uniform(rng, lo.x(), hi.x()), uniform(rng, lo.y(), hi.y()), uniform(rng, lo.z(), hi.z()));
    const double yaw = uniform(rng, -3.14159, 3.14159);
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
        return planbench::Obstacle::box(c,
                                        {uniform(rng, min_size, max_size), uniform(rng, min_size, max_size),
                                         uniform(rng, min_size, max_size)},
                                        yaw);
    case 1:
        return planbench::Obstacle::cylinder(c, uniform(rng, min_size, max_size), uniform(rng, min_size, max_size), yaw);
    default:
        return planbench::Obstacle::sphere(c, uniform(rng, min_size, max_size));
    }
}

struct LatticeInstance {
    planbench::RobotModel robot;
    planbench::WorldModel world;
    planbench::LatticeState start;
    planbench::LatticeState goal;
};

inline planbench::LatticeState random_free_state(const planbench::RobotModel& r, const planbench::WorldModel& w,
                                                 std::mt19937_64& rng) {
    const auto extent = planbench::lattice_extent(r);
    for (;;) {
        planbench::LatticeState s;
        for (int e : extent) s.coords.push_back(std::uniform_int_distribution<int>(0, e)(rng));
        if (planbench::check_config(r, w, planbench::decode(r, s)).is_free()) return s;
    }
}

/// 2- or 3-DOF gantry on a 9-cells-per-axis dyadic lattice among 2 to 6
/// random obstacles, with free start and goal cells.
inline LatticeInstance random_lattice_instance(std::mt19937_64& rng) {
    const std::size_t n = rng() % 2 ? 3 : 2;
    LatticeInstance in{gantry(n, 1.0, 0.125), {}, {}, {}};
    const int count = std::uniform_int_distribution<int>(2, 6)(rng);
    const double zmax = n == 3 ? 1.0 : 0.0;
    for (int i = 0; i < count; ++i)
        in.world.obstacles.push_back(random_obstacle(rng, {0.1, 0.1, 0}, {0.9, 0.9, zmax}, 0.05, 0.2));
    in.start = random_free_state(in.robot, in.world, rng);
    in.goal = random_free_state(in.robot, in.world, rng);
    return in;
}

inline planbench::Query query(const Eigen::VectorXd& start, const Eigen::VectorXd& goal, double budget = 5.0,
                              double tol = 0.0) {
    return {start, planbench::GoalSpec::config(goal, Eigen::VectorXd::Constant(goal.size(), tol)), budget};
}

} // namespace support
