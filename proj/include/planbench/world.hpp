#pragma once

#include "planbench/robot_model.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace planbench {

enum class ShapeKind { Box, Cylinder, Sphere };

/// Primitive obstacle. Orientation is a yaw about world z (ignored for spheres).
/// Box uses `half_extents`; cylinder uses `radius` and `half_height` (axis along
/// the obstacle z); sphere uses `radius`.
struct Obstacle {
    ShapeKind shape = ShapeKind::Box;
    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    double yaw = 0.0;
    Eigen::Vector3d half_extents = Eigen::Vector3d::Zero();
    double radius = 0.0;
    double half_height = 0.0;

    static Obstacle box(const Eigen::Vector3d& center, const Eigen::Vector3d& half_extents, double yaw = 0.0);
    static Obstacle cylinder(const Eigen::Vector3d& center, double radius, double half_height, double yaw = 0.0);
    static Obstacle sphere(const Eigen::Vector3d& center, double radius);

    bool operator==(const Obstacle&) const = default;
};

/// Throws ValidationError when a size scalar is not positive.
void validate_obstacle(const Obstacle& o);

struct WorldModel {
    std::vector<Obstacle> obstacles;

    bool operator==(const WorldModel&) const = default;
};

/// Either a target configuration with per-joint tolerance, or a box region in
/// joint space. A config goal may leave its tolerance unset; planners then
/// apply their configured default.
struct GoalSpec {
    enum class Kind { Config, Region };

    Kind kind = Kind::Config;
    Configuration target;
    std::optional<Eigen::VectorXd> tolerance;
    Configuration lower;
    Configuration upper;

    static GoalSpec config(Configuration target, std::optional<Eigen::VectorXd> tolerance = std::nullopt);
    static GoalSpec region(Configuration lower, Configuration upper);

    /// Copy with an unset tolerance filled by a uniform default.
    GoalSpec with_default_tolerance(double tol) const;

    /// Per-joint tolerance, zero when unset.
    Eigen::VectorXd tolerance_or_zero() const;

    /// Closest point of the goal set to q (per-joint clamp).
    Configuration closest_point(const Configuration& q) const;

    /// Lower/upper corners of the goal set (tolerance box for config goals).
    Configuration box_lower() const;
    Configuration box_upper() const;
};

bool operator==(const GoalSpec& a, const GoalSpec& b);

/// Shelf-style variation controls. Obstacles are addressed by list position:
/// `shelf_indices` move with height/rotation changes, `object_indices` also
/// receive xy jitter. Ranges are [lo, hi]; jitter is a symmetric half-width.
struct VariationSpec {
    Eigen::Vector2d object_jitter_xy{0.1, 0.1};
    Eigen::Vector2d height_range{-0.15, 0.15};
    Eigen::Vector2d yaw_range_deg{-30.0, 30.0};
    std::vector<std::size_t> shelf_indices;
    std::vector<std::size_t> object_indices;

    bool operator==(const VariationSpec&) const = default;
};

struct Scenario {
    std::string name;
    std::string robot_file;
    std::shared_ptr<const RobotModel> robot;
    Configuration start;
    GoalSpec goal;
    WorldModel world;
    double time_budget = 1.0;
    std::optional<VariationSpec> variation;
};

/// Field equality; robots compare by file path, not by pointer.
bool operator==(const Scenario& a, const Scenario& b);

/// Parses and validates a scenario. The robot file is resolved relative to
/// `base_dir` and loaded.
Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {});

/// Parses a scenario and validates it against an already-loaded robot; the
/// document's `robot` path is kept but not opened.
Scenario parse_scenario(std::string_view text, std::shared_ptr<const RobotModel> robot);

Scenario load_scenario(const std::filesystem::path& file);

std::string serialize_scenario(const Scenario& scenario);

/// Throws ValidationError when the scenario breaks an invariant.
void validate_scenario(const Scenario& scenario);

enum class VariationFamily { ObjectsOnly, PlusHeight, PlusRotation };

VariationFamily parse_family(std::string_view name);
std::string family_name(VariationFamily family);

/// Deterministic shelf-scene variations. The random draw sequence is the same
/// for every family, so equal seeds give nested perturbations.
std::vector<Scenario> generate_variations(const Scenario& base, VariationFamily family, int count,
                                          std::uint64_t seed);

} // namespace planbench
