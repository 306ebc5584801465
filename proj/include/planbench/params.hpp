#pragma once

#include "planbench/ara_star.hpp"
#include "planbench/rrt_connect.hpp"

#include <cstdint>
#include <filesystem>
#include <string_view>

namespace planbench {

struct CommonParams {
    double edge_step = 0.05;
    double goal_tolerance_default = 0.0;
    std::uint64_t seed = 0;
};

/// Parameters file: a `common` section plus `rrt_connect` and `ara_star`
/// sections. Keys in a planner section override the common ones; unknown keys
/// are rejected.
struct PlannerParams {
    CommonParams common;
    RrtParams rrt_connect;
    AraParams ara_star;

    /// Same parameters with every seed replaced (harness repetitions).
    PlannerParams with_seed(std::uint64_t seed) const;
};

PlannerParams parse_params(std::string_view text);
PlannerParams load_params(const std::filesystem::path& file);

} // namespace planbench
