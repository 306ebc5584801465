#include "planbench/robot_model.hpp"

#include "planbench/error.hpp"
#include "yaml_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace planbench {

namespace {

std::string joint_kind_name(JointKind kind) {
    return kind == JointKind::Revolute ? "revolute" : "prismatic";
}

} // namespace

Eigen::Matrix3d rpy_to_matrix(const Eigen::Vector3d& rpy) {
    return (Eigen::AngleAxisd(rpy.z(), Eigen::Vector3d::UnitZ()) *
            Eigen::AngleAxisd(rpy.y(), Eigen::Vector3d::UnitY()) *
            Eigen::AngleAxisd(rpy.x(), Eigen::Vector3d::UnitX()))
        .toRotationMatrix();
}

RobotModel::RobotModel(std::vector<JointSpec> joints, std::vector<CollisionSphere> spheres,
                       std::vector<std::pair<std::size_t, std::size_t>> self_collision_ignored)
    : joints_(std::move(joints)), spheres_(std::move(spheres)), ignored_(std::move(self_collision_ignored)) {
    if (joints_.empty()) throw ValidationError("robot must have at least one joint");
    for (const auto& j : joints_) {
        const std::string who = "joint '" + j.name + "': ";
        if (!(j.limits.lo < j.limits.hi)) throw ValidationError(who + "lower limit must be below upper limit");
        if (std::abs(j.axis.norm() - 1.0) > 1e-9) throw ValidationError(who + "axis must have unit norm");
        if (!(j.weight > 0.0)) throw ValidationError(who + "weight must be positive");
        if (!(j.resolution > 0.0)) throw ValidationError(who + "resolution must be positive");
        if (j.resolution > j.limits.hi - j.limits.lo)
            throw ValidationError(who + "resolution exceeds joint range");
        Eigen::Isometry3d origin = Eigen::Isometry3d::Identity();
        origin.translation() = j.origin_xyz;
        origin.linear() = rpy_to_matrix(j.origin_rpy);
        origins_.push_back(origin);
    }
    for (const auto& s : spheres_) {
        if (s.link >= joints_.size()) throw ValidationError("collision sphere references unknown link");
        if (!(s.radius > 0.0)) throw ValidationError("collision sphere radius must be positive");
    }
    ignore_matrix_.assign(spheres_.size(), std::vector<bool>(spheres_.size(), false));
    for (auto [a, b] : ignored_) {
        if (a >= spheres_.size() || b >= spheres_.size())
            throw ValidationError("self_collision_ignore references unknown sphere");
        ignore_matrix_[a][b] = ignore_matrix_[b][a] = true;
    }
}

bool RobotModel::self_pair_ignored(std::size_t a, std::size_t b) const {
    const auto la = spheres_[a].link;
    const auto lb = spheres_[b].link;
    if ((la > lb ? la - lb : lb - la) <= 1) return true;
    return ignore_matrix_[a][b];
}

Eigen::VectorXd RobotModel::lower() const {
    Eigen::VectorXd v(dof());
    for (std::size_t i = 0; i < dof(); ++i) v[i] = joints_[i].limits.lo;
    return v;
}

Eigen::VectorXd RobotModel::upper() const {
    Eigen::VectorXd v(dof());
    for (std::size_t i = 0; i < dof(); ++i) v[i] = joints_[i].limits.hi;
    return v;
}

Eigen::VectorXd RobotModel::weights() const {
    Eigen::VectorXd v(dof());
    for (std::size_t i = 0; i < dof(); ++i) v[i] = joints_[i].weight;
    return v;
}

Eigen::VectorXd RobotModel::resolutions() const {
    Eigen::VectorXd v(dof());
    for (std::size_t i = 0; i < dof(); ++i) v[i] = joints_[i].resolution;
    return v;
}

void require_dimension(const RobotModel& robot, const Configuration& q, std::string_view what) {
    if (static_cast<std::size_t>(q.size()) != robot.dof())
        throw ContractViolation(std::string(what) + ": expected " + std::to_string(robot.dof()) +
                                " joint values, got " + std::to_string(q.size()));
}

std::vector<Eigen::Isometry3d> link_transforms(const RobotModel& robot, const Configuration& q) {
    require_dimension(robot, q, "forward_kinematics");
    std::vector<Eigen::Isometry3d> frames;
    frames.reserve(robot.dof());
    Eigen::Isometry3d current = Eigen::Isometry3d::Identity();
    for (std::size_t i = 0; i < robot.dof(); ++i) {
        const auto& j = robot.joint(i);
        current = current * robot.joint_origin(i);
        if (j.kind == JointKind::Revolute)
            current.rotate(Eigen::AngleAxisd(q[i], j.axis));
        else
            current.translate(q[i] * j.axis);
        frames.push_back(current);
    }
    return frames;
}

std::vector<PlacedSphere> forward_kinematics(const RobotModel& robot, const Configuration& q) {
    const auto frames = link_transforms(robot, q);
    std::vector<PlacedSphere> placed;
    placed.reserve(robot.spheres().size());
    for (const auto& s : robot.spheres()) placed.push_back({frames[s.link] * s.center, s.radius});
    return placed;
}

double config_distance(const RobotModel& robot, const Configuration& a, const Configuration& b) {
    require_dimension(robot, a, "config_distance");
    require_dimension(robot, b, "config_distance");
    double sum = 0.0;
    for (std::size_t i = 0; i < robot.dof(); ++i) {
        const double d = a[i] - b[i];
        sum += robot.joint(i).weight * d * d;
    }
    return std::sqrt(sum);
}

Configuration interpolate(const RobotModel& robot, const Configuration& a, const Configuration& b, double t) {
    require_dimension(robot, a, "interpolate");
    require_dimension(robot, b, "interpolate");
    if (!(t >= 0.0 && t <= 1.0)) throw ContractViolation("interpolate: t must lie in [0, 1]");
    return (1.0 - t) * a + t * b;
}

bool within_limits(const RobotModel& robot, const Configuration& q) {
    require_dimension(robot, q, "within_limits");
    for (std::size_t i = 0; i < robot.dof(); ++i) {
        const auto& l = robot.joint(i).limits;
        if (!(q[i] >= l.lo && q[i] <= l.hi)) return false;
    }
    return true;
}

Configuration sample_uniform(const RobotModel& robot, Rng& rng) {
    Configuration q(robot.dof());
    for (std::size_t i = 0; i < robot.dof(); ++i) {
        const auto& l = robot.joint(i).limits;
        std::uniform_real_distribution<double> dist(l.lo, l.hi);
        q[i] = std::clamp(dist(rng), l.lo, l.hi);
    }
    return q;
}

RobotModel parse_robot(std::string_view text) {
    using namespace detail;
    const YAML::Node doc = load_document(text);
    if (!doc.IsMap()) throw ParseError("robot file must be a mapping", line_of(doc));
    reject_unknown_keys(doc, {"name", "joints", "collision_spheres", "self_collision_ignore"});

    std::vector<JointSpec> joints;
    const YAML::Node jnodes = require(doc, "joints");
    if (!jnodes.IsSequence()) throw ParseError("'joints' must be a list", line_of(jnodes));
    for (const auto& jn : jnodes) {
        reject_unknown_keys(jn, {"name", "type", "axis", "origin_xyz", "origin_rpy", "limits", "weight",
                                 "resolution"});
        JointSpec j;
        j.name = as<std::string>(require(jn, "name"), "name");
        const auto type = as<std::string>(require(jn, "type"), "type");
        if (type == "revolute")
            j.kind = JointKind::Revolute;
        else if (type == "prismatic")
            j.kind = JointKind::Prismatic;
        else
            throw ValidationError("joint '" + j.name + "': unknown type '" + type + "'");
        j.axis = as_vector3(require(jn, "axis"), "axis");
        if (jn["origin_xyz"]) j.origin_xyz = as_vector3(jn["origin_xyz"], "origin_xyz");
        if (jn["origin_rpy"]) j.origin_rpy = as_vector3(jn["origin_rpy"], "origin_rpy");
        const Eigen::VectorXd lim = as_vector(require(jn, "limits"), "limits");
        if (lim.size() != 2) throw ParseError("'limits' must hold [lo, hi]", line_of(jn["limits"]));
        j.limits = {lim[0], lim[1]};
        if (jn["weight"]) j.weight = as_double(jn["weight"], "weight");
        j.resolution = as_double(require(jn, "resolution"), "resolution");
        joints.push_back(std::move(j));
    }

    std::vector<CollisionSphere> spheres;
    if (const YAML::Node snodes = doc["collision_spheres"]) {
        if (!snodes.IsSequence()) throw ParseError("'collision_spheres' must be a list", line_of(snodes));
        for (const auto& sn : snodes) {
            reject_unknown_keys(sn, {"link", "center", "radius"});
            const long link = as<long>(require(sn, "link"), "link");
            if (link < 0) throw ValidationError("collision sphere link must be non-negative");
            spheres.push_back({static_cast<std::size_t>(link), as_vector3(require(sn, "center"), "center"),
                               as_double(require(sn, "radius"), "radius")});
        }
    }

    std::vector<std::pair<std::size_t, std::size_t>> ignored;
    if (const YAML::Node inodes = doc["self_collision_ignore"]) {
        if (!inodes.IsSequence()) throw ParseError("'self_collision_ignore' must be a list", line_of(inodes));
        for (const auto& pn : inodes) {
            if (!pn.IsSequence() || pn.size() != 2)
                throw ParseError("ignore entries must be index pairs", line_of(pn));
            const long a = as<long>(pn[0], "self_collision_ignore");
            const long b = as<long>(pn[1], "self_collision_ignore");
            if (a < 0 || b < 0) throw ValidationError("self_collision_ignore indices must be non-negative");
            ignored.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
        }
    }
    return RobotModel(std::move(joints), std::move(spheres), std::move(ignored));
}

RobotModel load_robot(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open robot file " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_robot(buf.str());
}

std::string serialize_robot(const RobotModel& robot) {
    YAML::Emitter out;
    detail::configure(out);
    out << YAML::BeginMap << YAML::Key << "joints" << YAML::Value << YAML::BeginSeq;
    for (const auto& j : robot.joints()) {
        out << YAML::BeginMap;
        out << YAML::Key << "name" << YAML::Value << j.name;
        out << YAML::Key << "type" << YAML::Value << joint_kind_name(j.kind);
        out << YAML::Key << "axis" << YAML::Value;
        detail::emit_vector(out, j.axis);
        out << YAML::Key << "origin_xyz" << YAML::Value;
        detail::emit_vector(out, j.origin_xyz);
        out << YAML::Key << "origin_rpy" << YAML::Value;
        detail::emit_vector(out, j.origin_rpy);
        out << YAML::Key << "limits" << YAML::Value << YAML::Flow << YAML::BeginSeq << j.limits.lo
            << j.limits.hi << YAML::EndSeq;
        out << YAML::Key << "weight" << YAML::Value << j.weight;
        out << YAML::Key << "resolution" << YAML::Value << j.resolution;
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::Key << "collision_spheres" << YAML::Value << YAML::BeginSeq;
    for (const auto& s : robot.spheres()) {
        out << YAML::Flow << YAML::BeginMap << YAML::Key << "link" << YAML::Value << s.link;
        out << YAML::Key << "center" << YAML::Value;
        detail::emit_vector(out, s.center);
        out << YAML::Key << "radius" << YAML::Value << s.radius << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::Key << "self_collision_ignore" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (auto [a, b] : robot.ignored_pairs()) out << YAML::Flow << YAML::BeginSeq << a << b << YAML::EndSeq;
    out << YAML::EndSeq << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

} // namespace planbench
