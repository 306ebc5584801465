#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace planbench {

/// Joint values, one per degree of freedom (radians or meters).
using Configuration = Eigen::VectorXd;

using Rng = std::mt19937_64;

enum class JointKind { Revolute, Prismatic };

struct JointLimits {
    double lo = 0.0;
    double hi = 0.0;
};

struct JointSpec {
    std::string name;
    JointKind kind = JointKind::Revolute;
    Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
    Eigen::Vector3d origin_xyz = Eigen::Vector3d::Zero();
    Eigen::Vector3d origin_rpy = Eigen::Vector3d::Zero();
    JointLimits limits;
    double weight = 1.0;
    double resolution = 0.1;
};

/// Sphere rigidly attached to the frame after joint `link`.
struct CollisionSphere {
    std::size_t link = 0;
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    double radius = 0.0;
};

struct PlacedSphere {
    Eigen::Vector3d center;
    double radius;
};

/// Serial kinematic chain with a sphere-set collision body. Immutable once
/// constructed; the constructor enforces all invariants and throws
/// ValidationError otherwise.
class RobotModel {
public:
    RobotModel(std::vector<JointSpec> joints, std::vector<CollisionSphere> spheres,
               std::vector<std::pair<std::size_t, std::size_t>> self_collision_ignored = {});

    std::size_t dof() const { return joints_.size(); }
    const std::vector<JointSpec>& joints() const { return joints_; }
    const JointSpec& joint(std::size_t i) const { return joints_[i]; }
    const std::vector<CollisionSphere>& spheres() const { return spheres_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& ignored_pairs() const {
        return ignored_;
    }

    /// Fixed parent-to-joint transform (origin translation + RPY).
    const Eigen::Isometry3d& joint_origin(std::size_t i) const { return origins_[i]; }

    /// True when the pair is skipped by self-collision checking: same link,
    /// chain-adjacent links, or listed in the ignore set.
    bool self_pair_ignored(std::size_t a, std::size_t b) const;

    Eigen::VectorXd lower() const;
    Eigen::VectorXd upper() const;
    Eigen::VectorXd weights() const;
    Eigen::VectorXd resolutions() const;

private:
    std::vector<JointSpec> joints_;
    std::vector<CollisionSphere> spheres_;
    std::vector<std::pair<std::size_t, std::size_t>> ignored_;
    std::vector<Eigen::Isometry3d> origins_;
    std::vector<std::vector<bool>> ignore_matrix_;
};

/// Roll-pitch-yaw (fixed-axis XYZ) to rotation: Rz(yaw) * Ry(pitch) * Rx(roll).
Eigen::Matrix3d rpy_to_matrix(const Eigen::Vector3d& rpy);

/// World-frame transform of every joint frame (after the joint's motion).
std::vector<Eigen::Isometry3d> link_transforms(const RobotModel& robot, const Configuration& q);

std::vector<PlacedSphere> forward_kinematics(const RobotModel& robot, const Configuration& q);

/// Weighted Euclidean distance sqrt(sum w_i (a_i - b_i)^2).
double config_distance(const RobotModel& robot, const Configuration& a, const Configuration& b);

/// (1 - t) a + t b, exact at both endpoints.
Configuration interpolate(const RobotModel& robot, const Configuration& a, const Configuration& b,
                          double t);

bool within_limits(const RobotModel& robot, const Configuration& q);

Configuration sample_uniform(const RobotModel& robot, Rng& rng);

/// Throws ContractViolation unless q has one value per joint.
void require_dimension(const RobotModel& robot, const Configuration& q, std::string_view what);

RobotModel parse_robot(std::string_view text);
RobotModel load_robot(const std::filesystem::path& file);
std::string serialize_robot(const RobotModel& robot);

} // namespace planbench
