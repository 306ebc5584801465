#include "oracles.hpp"
#include "support.hpp"

#include "planbench/error.hpp"
#include "planbench/robot_model.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace planbench;

namespace {

RobotModel single_revolute() {
    JointSpec j;
    j.name = "j";
    j.limits = {-3.0, 3.0};
    return RobotModel({j}, {{0, {1.0, 0.0, 0.0}, 0.1}});
}

} // namespace

TEST(Kinematics, IdentityAtZero) {
    const RobotModel r = single_revolute();
    const auto s = forward_kinematics(r, Configuration::Zero(1));
    ASSERT_EQ(s.size(), 1u);
    EXPECT_NEAR((s[0].center - Eigen::Vector3d(1, 0, 0)).norm(), 0.0, 1e-12);
    EXPECT_DOUBLE_EQ(s[0].radius, 0.1);
}

TEST(Kinematics, QuarterTurnAboutZ) {
    const RobotModel r = single_revolute();
    Configuration q(1);
    q << M_PI / 2;
    const auto s = forward_kinematics(r, q);
    EXPECT_NEAR((s[0].center - Eigen::Vector3d(0, 1, 0)).norm(), 0.0, 1e-12);
}

TEST(Kinematics, PlanarArmElbow) {
    const RobotModel r = support::planar_arm();
    const auto s = forward_kinematics(r, Eigen::Vector2d(M_PI / 2, -M_PI / 2));
    EXPECT_NEAR((s[0].center - Eigen::Vector3d(0, 0.5, 0)).norm(), 0.0, 1e-12);
    EXPECT_NEAR((s[1].center - Eigen::Vector3d(1, 1, 0)).norm(), 0.0, 1e-12);
}

TEST(Kinematics, PrismaticTranslatesAlongAxis) {
    const RobotModel r = support::gantry(3, 1.0, 0.125);
    const auto s = forward_kinematics(r, Eigen::Vector3d(0.25, 0.5, 0.75));
    EXPECT_NEAR((s[0].center - Eigen::Vector3d(0.25, 0.5, 0.75)).norm(), 0.0, 1e-15);
}

TEST(Kinematics, MatchesMatrixChainOracle) {
    const auto robot = support::manipulator();
    Rng rng(7);
    for (int k = 0; k < 200; ++k) {
        const Configuration q = sample_uniform(*robot, rng);
        const auto got = forward_kinematics(*robot, q);
        const auto want = oracle::fk_centers(*robot, q);
        ASSERT_EQ(got.size(), want.size());
        for (std::size_t i = 0; i < got.size(); ++i)
            for (int c = 0; c < 3; ++c) ASSERT_NEAR(got[i].center[c], want[i][c], 1e-9);
    }
}

TEST(Kinematics, RpyOrderIsYawPitchRoll) {
    const Eigen::Vector3d rpy(0.3, -0.2, 1.1);
    const Eigen::Matrix3d m = rpy_to_matrix(rpy);
    const oracle::Mat4 o = oracle::mul(oracle::rot_z(1.1), oracle::mul(oracle::rot_y(-0.2), oracle::rot_x(0.3)));
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) EXPECT_NEAR(m(r, c), o[r][c], 1e-15);
}

TEST(Kinematics, WrongDimensionIsContractViolation) {
    const auto robot = support::manipulator();
    EXPECT_THROW(forward_kinematics(*robot, Configuration::Zero(3)), ContractViolation);
}

TEST(Distance, MetricAxioms) {
    const auto robot = support::manipulator();
    Rng rng(3);
    for (int k = 0; k < 500; ++k) {
        const Configuration a = sample_uniform(*robot, rng);
        const Configuration b = sample_uniform(*robot, rng);
        const Configuration c = sample_uniform(*robot, rng);
        EXPECT_EQ(config_distance(*robot, a, a), 0.0);
        EXPECT_GT(config_distance(*robot, a, b), 0.0);
        EXPECT_EQ(config_distance(*robot, a, b), config_distance(*robot, b, a));
        EXPECT_LE(config_distance(*robot, a, c), config_distance(*robot, a, b) + config_distance(*robot, b, c) + 1e-12);
    }
}

TEST(Distance, WeightedEuclidean) {
    JointSpec a;
    a.name = "a";
    a.limits = {-1, 1};
    a.weight = 4.0;
    JointSpec b = a;
    b.name = "b";
    b.weight = 1.0;
    const RobotModel r({a, b}, {{1, Eigen::Vector3d::Zero(), 0.1}});
    EXPECT_DOUBLE_EQ(config_distance(r, Eigen::Vector2d(0, 0), Eigen::Vector2d(0.5, 1.0)), std::sqrt(4 * 0.25 + 1.0));
}

TEST(Interpolate, EndpointsExactAndLinear) {
    const auto robot = support::manipulator();
    Rng rng(5);
    for (int k = 0; k < 100; ++k) {
        const Configuration a = sample_uniform(*robot, rng);
        const Configuration b = sample_uniform(*robot, rng);
        EXPECT_TRUE((interpolate(*robot, a, b, 0.0).array() == a.array()).all());
        EXPECT_TRUE((interpolate(*robot, a, b, 1.0).array() == b.array()).all());
        const double t = support::uniform(rng, 0, 1);
        const Configuration m = interpolate(*robot, a, b, t);
        EXPECT_NEAR(config_distance(*robot, a, m), t * config_distance(*robot, a, b), 1e-9);
    }
}

TEST(Interpolate, RejectsParameterOutsideUnitInterval) {
    const auto robot = support::manipulator();
    const Configuration z = Configuration::Zero(8);
    EXPECT_THROW(interpolate(*robot, z, z, 1.5), ContractViolation);
    EXPECT_THROW(interpolate(*robot, z, z, -0.1), ContractViolation);
}

TEST(Limits, BoundariesAreInside) {
    const auto robot = support::manipulator();
    EXPECT_TRUE(within_limits(*robot, robot->lower()));
    EXPECT_TRUE(within_limits(*robot, robot->upper()));
    Configuration q = robot->upper();
    q[3] += 1e-9;
    EXPECT_FALSE(within_limits(*robot, q));
}

TEST(Sampling, UniformMeanWithinThreeStandardErrors) {
    const auto robot = support::manipulator();
    Rng rng(11);
    const int n = 20000;
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(8);
    for (int k = 0; k < n; ++k) {
        const Configuration q = sample_uniform(*robot, rng);
        ASSERT_TRUE(within_limits(*robot, q));
        sum += q;
    }
    const Eigen::VectorXd mean = sum / n;
    for (int i = 0; i < 8; ++i) {
        const double lo = robot->lower()[i], hi = robot->upper()[i];
        const double se = (hi - lo) / std::sqrt(12.0 * n);
        EXPECT_NEAR(mean[i], 0.5 * (lo + hi), 3 * se) << "joint " << i;
    }
}

TEST(Sampling, SameSeedSameSequence) {
    const auto robot = support::manipulator();
    Rng a(42), b(42);
    for (int k = 0; k < 50; ++k) EXPECT_EQ(sample_uniform(*robot, a), sample_uniform(*robot, b));
}

TEST(RobotModelValidation, RejectsBrokenModels) {
    JointSpec j;
    j.name = "j";
    j.limits = {1.0, -1.0};
    EXPECT_THROW(RobotModel({j}, {{0, Eigen::Vector3d::Zero(), 0.1}}), ValidationError);
    j.limits = {-1.0, 1.0};
    EXPECT_THROW(RobotModel({j}, {{1, Eigen::Vector3d::Zero(), 0.1}}), ValidationError);
    EXPECT_THROW(RobotModel({j}, {{0, Eigen::Vector3d::Zero(), 0.0}}), ValidationError);
    j.axis = {1, 1, 0};
    EXPECT_THROW(RobotModel({j}, {{0, Eigen::Vector3d::Zero(), 0.1}}), ValidationError);
    EXPECT_THROW(RobotModel({}, {}), ValidationError);
}

TEST(RobotModelValidation, SelfPairsSkipAdjacentAndListed) {
    const auto robot = support::manipulator();
    EXPECT_TRUE(robot->self_pair_ignored(0, 1));   // same link
    EXPECT_TRUE(robot->self_pair_ignored(3, 4));   // links 1 and 2
    EXPECT_TRUE(robot->self_pair_ignored(2, 4));   // listed
    EXPECT_TRUE(robot->self_pair_ignored(4, 2));
    EXPECT_FALSE(robot->self_pair_ignored(0, 12));
}

TEST(RobotFile, RoundTrip) {
    const auto robot = support::manipulator();
    const RobotModel back = parse_robot(serialize_robot(*robot));
    ASSERT_EQ(back.dof(), robot->dof());
    for (std::size_t i = 0; i < robot->dof(); ++i) {
        EXPECT_EQ(back.joint(i).name, robot->joint(i).name);
        EXPECT_EQ(back.joint(i).axis, robot->joint(i).axis);
        EXPECT_EQ(back.joint(i).origin_xyz, robot->joint(i).origin_xyz);
        EXPECT_EQ(back.joint(i).limits.lo, robot->joint(i).limits.lo);
        EXPECT_EQ(back.joint(i).resolution, robot->joint(i).resolution);
    }
    ASSERT_EQ(back.spheres().size(), robot->spheres().size());
    EXPECT_EQ(back.ignored_pairs(), robot->ignored_pairs());
}

TEST(RobotFile, ErrorsCarryLineNumbers) {
    try {
        parse_robot("name: r\njoints:\n  - {name: a, type: revolute, axis: [0, 0, 1], limits: [0, 1], colour: red}\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
    }
    EXPECT_THROW(parse_robot("name: r\njoints: [\n"), ParseError);
}
