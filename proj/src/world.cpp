#include "planbench/world.hpp"

#include "planbench/error.hpp"
#include "yaml_util.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace planbench {

namespace {

bool same_vector(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return a.size() == b.size() && (a.array() == b.array()).all();
}

const char* shape_name(ShapeKind s) {
    switch (s) {
    case ShapeKind::Box: return "box";
    case ShapeKind::Cylinder: return "cylinder";
    case ShapeKind::Sphere: return "sphere";
    }
    return "?";
}

std::vector<std::size_t> as_indices(const YAML::Node& node, const char* what) {
    using namespace detail;
    if (!node.IsSequence()) throw ParseError(std::string("expected a list for '") + what + "'", line_of(node));
    std::vector<std::size_t> out;
    for (const auto& n : node) {
        const long v = as<long>(n, what);
        if (v < 0) throw ValidationError(std::string(what) + ": negative index");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

Eigen::Vector2d as_pair(const YAML::Node& node, const char* what) {
    using namespace detail;
    if (node.IsScalar()) {
        const double v = as_double(node, what);
        return {v, v};
    }
    const Eigen::VectorXd v = as_vector(node, what);
    if (v.size() != 2) throw ParseError(std::string("expected 2 values for '") + what + "'", line_of(node));
    return v;
}

Obstacle parse_obstacle(const YAML::Node& on) {
    using namespace detail;
    if (!on.IsMap()) throw ParseError("obstacle must be a mapping", line_of(on));
    const auto shape = as<std::string>(require(on, "shape"), "shape");
    Obstacle o;
    o.center = as_vector3(require(on, "center"), "center");
    if (shape == "box") {
        reject_unknown_keys(on, {"shape", "center", "yaw", "half_extents"});
        o.shape = ShapeKind::Box;
        o.half_extents = as_vector3(require(on, "half_extents"), "half_extents");
    } else if (shape == "cylinder") {
        reject_unknown_keys(on, {"shape", "center", "yaw", "radius", "half_height"});
        o.shape = ShapeKind::Cylinder;
        o.radius = as_double(require(on, "radius"), "radius");
        o.half_height = as_double(require(on, "half_height"), "half_height");
    } else if (shape == "sphere") {
        reject_unknown_keys(on, {"shape", "center", "yaw", "radius"});
        o.shape = ShapeKind::Sphere;
        o.radius = as_double(require(on, "radius"), "radius");
    } else {
        throw ValidationError("unknown obstacle shape '" + shape + "' (line " + std::to_string(line_of(on)) + ")");
    }
    if (on["yaw"]) o.yaw = as_double(on["yaw"], "yaw");
    if (o.shape == ShapeKind::Sphere) o.yaw = 0.0;
    validate_obstacle(o);
    return o;
}

Scenario parse_document(std::string_view text) {
    using namespace detail;
    const YAML::Node doc = load_document(text);
    if (!doc.IsMap()) throw ParseError("scenario must be a mapping", line_of(doc));
    reject_unknown_keys(doc, {"name", "robot", "start", "goal", "world", "time_budget_s", "variation"});

    Scenario sc;
    sc.name = as<std::string>(require(doc, "name"), "name");
    sc.robot_file = as<std::string>(require(doc, "robot"), "robot");
    sc.start = as_vector(require(doc, "start"), "start");

    const YAML::Node gn = require(doc, "goal");
    const auto type = as<std::string>(require(gn, "type"), "type");
    if (type == "config") {
        reject_unknown_keys(gn, {"type", "target", "tolerance"});
        std::optional<Eigen::VectorXd> tol;
        if (gn["tolerance"]) tol = as_vector(gn["tolerance"], "tolerance");
        sc.goal = GoalSpec::config(as_vector(require(gn, "target"), "target"), tol);
    } else if (type == "region") {
        reject_unknown_keys(gn, {"type", "lower", "upper"});
        sc.goal = GoalSpec::region(as_vector(require(gn, "lower"), "lower"), as_vector(require(gn, "upper"), "upper"));
    } else {
        throw ValidationError("unknown goal type '" + type + "'");
    }

    if (const YAML::Node wn = doc["world"]) {
        if (!wn.IsNull()) {
            reject_unknown_keys(wn, {"obstacles"});
            if (const YAML::Node obs = wn["obstacles"]) {
                if (!obs.IsSequence()) throw ParseError("'obstacles' must be a list", line_of(obs));
                for (const auto& on : obs) sc.world.obstacles.push_back(parse_obstacle(on));
            }
        }
    }

    sc.time_budget = as_double(require(doc, "time_budget_s"), "time_budget_s");

    if (const YAML::Node vn = doc["variation"]) {
        reject_unknown_keys(vn, {"object_jitter_xy", "height_range", "yaw_range_deg", "shelf_indices", "object_indices"});
        VariationSpec v;
        if (vn["object_jitter_xy"]) v.object_jitter_xy = as_pair(vn["object_jitter_xy"], "object_jitter_xy");
        if (vn["height_range"]) v.height_range = as_pair(vn["height_range"], "height_range");
        if (vn["yaw_range_deg"]) v.yaw_range_deg = as_pair(vn["yaw_range_deg"], "yaw_range_deg");
        if (vn["shelf_indices"]) v.shelf_indices = as_indices(vn["shelf_indices"], "shelf_indices");
        if (vn["object_indices"]) v.object_indices = as_indices(vn["object_indices"], "object_indices");
        sc.variation = v;
    }
    return sc;
}

void check_dim(const Eigen::VectorXd& v, std::size_t n, const char* what) {
    if (static_cast<std::size_t>(v.size()) != n)
        throw ValidationError(std::string(what) + ": expected " + std::to_string(n) + " values, got " +
                              std::to_string(v.size()));
}

} // namespace

Obstacle Obstacle::box(const Eigen::Vector3d& center, const Eigen::Vector3d& half_extents, double yaw) {
    Obstacle o;
    o.shape = ShapeKind::Box;
    o.center = center;
    o.half_extents = half_extents;
    o.yaw = yaw;
    return o;
}

Obstacle Obstacle::cylinder(const Eigen::Vector3d& center, double radius, double half_height, double yaw) {
    Obstacle o;
    o.shape = ShapeKind::Cylinder;
    o.center = center;
    o.radius = radius;
    o.half_height = half_height;
    o.yaw = yaw;
    return o;
}

Obstacle Obstacle::sphere(const Eigen::Vector3d& center, double radius) {
    Obstacle o;
    o.shape = ShapeKind::Sphere;
    o.center = center;
    o.radius = radius;
    return o;
}

void validate_obstacle(const Obstacle& o) {
    switch (o.shape) {
    case ShapeKind::Box:
        if (!(o.half_extents.array() > 0.0).all()) throw ValidationError("box half_extents must be positive");
        break;
    case ShapeKind::Cylinder:
        if (!(o.radius > 0.0) || !(o.half_height > 0.0))
            throw ValidationError("cylinder radius and half_height must be positive");
        break;
    case ShapeKind::Sphere:
        if (!(o.radius > 0.0)) throw ValidationError("sphere radius must be positive");
        break;
    }
}

GoalSpec GoalSpec::config(Configuration target, std::optional<Eigen::VectorXd> tolerance) {
    GoalSpec g;
    g.kind = Kind::Config;
    g.target = std::move(target);
    g.tolerance = std::move(tolerance);
    return g;
}

GoalSpec GoalSpec::region(Configuration lower, Configuration upper) {
    GoalSpec g;
    g.kind = Kind::Region;
    g.lower = std::move(lower);
    g.upper = std::move(upper);
    return g;
}

GoalSpec GoalSpec::with_default_tolerance(double tol) const {
    GoalSpec g = *this;
    if (g.kind == Kind::Config && !g.tolerance) g.tolerance = Eigen::VectorXd::Constant(target.size(), tol);
    return g;
}

Eigen::VectorXd GoalSpec::tolerance_or_zero() const {
    return tolerance ? *tolerance : Eigen::VectorXd::Zero(target.size());
}

Configuration GoalSpec::box_lower() const {
    return kind == Kind::Config ? Configuration(target - tolerance_or_zero()) : lower;
}

Configuration GoalSpec::box_upper() const {
    return kind == Kind::Config ? Configuration(target + tolerance_or_zero()) : upper;
}

Configuration GoalSpec::closest_point(const Configuration& q) const {
    if (kind == Kind::Config && !tolerance) return target;
    return q.cwiseMax(box_lower()).cwiseMin(box_upper());
}

bool operator==(const GoalSpec& a, const GoalSpec& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == GoalSpec::Kind::Config) {
        if (!same_vector(a.target, b.target) || a.tolerance.has_value() != b.tolerance.has_value()) return false;
        return !a.tolerance || same_vector(*a.tolerance, *b.tolerance);
    }
    return same_vector(a.lower, b.lower) && same_vector(a.upper, b.upper);
}

bool operator==(const Scenario& a, const Scenario& b) {
    return a.name == b.name && a.robot_file == b.robot_file && same_vector(a.start, b.start) && a.goal == b.goal &&
           a.world == b.world && a.time_budget == b.time_budget && a.variation == b.variation;
}

void validate_scenario(const Scenario& sc) {
    if (!sc.robot) throw ValidationError("scenario has no robot model");
    const RobotModel& robot = *sc.robot;
    const std::size_t n = robot.dof();
    check_dim(sc.start, n, "start");
    if (!(sc.time_budget > 0.0)) throw ValidationError("time_budget_s must be positive");
    const GoalSpec& g = sc.goal;
    if (g.kind == GoalSpec::Kind::Config) {
        check_dim(g.target, n, "goal.target");
        if (g.tolerance) {
            check_dim(*g.tolerance, n, "goal.tolerance");
            if (!(g.tolerance->array() >= 0.0).all()) throw ValidationError("goal.tolerance must be non-negative");
        }
    } else {
        check_dim(g.lower, n, "goal.lower");
        check_dim(g.upper, n, "goal.upper");
        if (!(g.lower.array() <= g.upper.array()).all()) throw ValidationError("goal.lower must not exceed goal.upper");
        if (!(g.lower.array() <= robot.upper().array()).all() || !(g.upper.array() >= robot.lower().array()).all())
            throw ValidationError("goal region does not intersect the joint limits");
    }
    for (const auto& o : sc.world.obstacles) validate_obstacle(o);
    if (sc.variation) {
        for (auto i : sc.variation->shelf_indices)
            if (i >= sc.world.obstacles.size()) throw ValidationError("variation.shelf_indices out of range");
        for (auto i : sc.variation->object_indices)
            if (i >= sc.world.obstacles.size()) throw ValidationError("variation.object_indices out of range");
    }
}

Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
    Scenario sc = parse_document(text);
    std::filesystem::path robot_path(sc.robot_file);
    if (robot_path.is_relative() && !base_dir.empty()) robot_path = base_dir / robot_path;
    sc.robot = std::make_shared<const RobotModel>(load_robot(robot_path));
    validate_scenario(sc);
    return sc;
}

Scenario parse_scenario(std::string_view text, std::shared_ptr<const RobotModel> robot) {
    Scenario sc = parse_document(text);
    sc.robot = std::move(robot);
    validate_scenario(sc);
    return sc;
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open scenario file " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), file.parent_path());
}

std::string serialize_scenario(const Scenario& sc) {
    using detail::emit_vector;
    YAML::Emitter out;
    detail::configure(out);
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << sc.name;
    out << YAML::Key << "robot" << YAML::Value << sc.robot_file;
    out << YAML::Key << "start" << YAML::Value;
    emit_vector(out, sc.start);
    out << YAML::Key << "goal" << YAML::Value << YAML::BeginMap;
    if (sc.goal.kind == GoalSpec::Kind::Config) {
        out << YAML::Key << "type" << YAML::Value << "config";
        out << YAML::Key << "target" << YAML::Value;
        emit_vector(out, sc.goal.target);
        if (sc.goal.tolerance) {
            out << YAML::Key << "tolerance" << YAML::Value;
            emit_vector(out, *sc.goal.tolerance);
        }
    } else {
        out << YAML::Key << "type" << YAML::Value << "region";
        out << YAML::Key << "lower" << YAML::Value;
        emit_vector(out, sc.goal.lower);
        out << YAML::Key << "upper" << YAML::Value;
        emit_vector(out, sc.goal.upper);
    }
    out << YAML::EndMap;
    out << YAML::Key << "world" << YAML::Value << YAML::BeginMap << YAML::Key << "obstacles" << YAML::Value
        << YAML::BeginSeq;
    for (const auto& o : sc.world.obstacles) {
        out << YAML::Flow << YAML::BeginMap;
        out << YAML::Key << "shape" << YAML::Value << shape_name(o.shape);
        out << YAML::Key << "center" << YAML::Value;
        emit_vector(out, o.center);
        if (o.shape != ShapeKind::Sphere) out << YAML::Key << "yaw" << YAML::Value << o.yaw;
        switch (o.shape) {
        case ShapeKind::Box:
            out << YAML::Key << "half_extents" << YAML::Value;
            emit_vector(out, o.half_extents);
            break;
        case ShapeKind::Cylinder:
            out << YAML::Key << "radius" << YAML::Value << o.radius;
            out << YAML::Key << "half_height" << YAML::Value << o.half_height;
            break;
        case ShapeKind::Sphere:
            out << YAML::Key << "radius" << YAML::Value << o.radius;
            break;
        }
        out << YAML::EndMap;
    }
    out << YAML::EndSeq << YAML::EndMap;
    out << YAML::Key << "time_budget_s" << YAML::Value << sc.time_budget;
    if (sc.variation) {
        const auto& v = *sc.variation;
        out << YAML::Key << "variation" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "object_jitter_xy" << YAML::Value;
        emit_vector(out, v.object_jitter_xy);
        out << YAML::Key << "height_range" << YAML::Value;
        emit_vector(out, v.height_range);
        out << YAML::Key << "yaw_range_deg" << YAML::Value;
        emit_vector(out, v.yaw_range_deg);
        out << YAML::Key << "shelf_indices" << YAML::Value << YAML::Flow << v.shelf_indices;
        out << YAML::Key << "object_indices" << YAML::Value << YAML::Flow << v.object_indices;
        out << YAML::EndMap;
    }
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

VariationFamily parse_family(std::string_view name) {
    if (name == "objects" || name == "objects_only") return VariationFamily::ObjectsOnly;
    if (name == "height" || name == "plus_height") return VariationFamily::PlusHeight;
    if (name == "rotation" || name == "plus_rotation") return VariationFamily::PlusRotation;
    throw ValidationError("unknown variation family '" + std::string(name) + "'");
}

std::string family_name(VariationFamily family) {
    switch (family) {
    case VariationFamily::ObjectsOnly: return "objects";
    case VariationFamily::PlusHeight: return "height";
    case VariationFamily::PlusRotation: return "rotation";
    }
    return "?";
}

std::vector<Scenario> generate_variations(const Scenario& base, VariationFamily family, int count,
                                          std::uint64_t seed) {
    if (count < 1) throw ContractViolation("generate_variations: count must be at least 1");
    const VariationSpec spec = base.variation.value_or(VariationSpec{});
    const std::size_t n_obstacles = base.world.obstacles.size();
    for (auto i : spec.shelf_indices)
        if (i >= n_obstacles) throw ValidationError("variation.shelf_indices out of range");
    for (auto i : spec.object_indices)
        if (i >= n_obstacles) throw ValidationError("variation.object_indices out of range");

    // Shelf and objects move together under height/rotation changes.
    std::vector<bool> moves(n_obstacles, false);
    for (auto i : spec.shelf_indices) moves[i] = true;
    for (auto i : spec.object_indices) moves[i] = true;

    auto uniform = [](Rng& rng, double lo, double hi) {
        return lo == hi ? lo : std::uniform_real_distribution<double>(lo, hi)(rng);
    };

    Rng rng(seed);
    std::vector<Scenario> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        Scenario sc = base;
        char suffix[16];
        std::snprintf(suffix, sizeof suffix, "_%03d", k);
        sc.name = base.name + suffix;

        // Every family consumes the same draws in the same order.
        std::vector<Eigen::Vector2d> jitter;
        for (std::size_t j = 0; j < spec.object_indices.size(); ++j)
            jitter.emplace_back(uniform(rng, -spec.object_jitter_xy.x(), spec.object_jitter_xy.x()),
                                uniform(rng, -spec.object_jitter_xy.y(), spec.object_jitter_xy.y()));
        const double dz = uniform(rng, spec.height_range.x(), spec.height_range.y());
        const double yaw = uniform(rng, spec.yaw_range_deg.x(), spec.yaw_range_deg.y()) * std::numbers::pi / 180.0;

        auto& obs = sc.world.obstacles;
        for (std::size_t j = 0; j < spec.object_indices.size(); ++j)
            obs[spec.object_indices[j]].center.head<2>() += jitter[j];
        if (family != VariationFamily::ObjectsOnly) {
            for (std::size_t i = 0; i < n_obstacles; ++i)
                if (moves[i]) obs[i].center.z() += dz;
        }
        if (family == VariationFamily::PlusRotation) {
            const Eigen::Matrix3d rot = Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix();
            for (std::size_t i = 0; i < n_obstacles; ++i) {
                if (!moves[i]) continue;
                obs[i].center = rot * obs[i].center;
                if (obs[i].shape != ShapeKind::Sphere) obs[i].yaw += yaw;
            }
        }
        out.push_back(std::move(sc));
    }
    return out;
}

} // namespace planbench
