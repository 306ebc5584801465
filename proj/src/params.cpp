#include "planbench/params.hpp"

#include "planbench/error.hpp"
#include "yaml_util.hpp"

#include <fstream>
#include <sstream>

namespace planbench {

PlannerParams PlannerParams::with_seed(std::uint64_t seed) const {
    PlannerParams p = *this;
    p.common.seed = seed;
    p.rrt_connect.seed = seed;
    p.ara_star.seed = seed;
    return p;
}

PlannerParams parse_params(std::string_view text) {
    using namespace detail;
    const YAML::Node doc = load_document(text);
    PlannerParams p;
    if (doc.IsNull()) return p;
    reject_unknown_keys(doc, {"common", "rrt_connect", "ara_star"});

    if (const YAML::Node c = doc["common"]) {
        reject_unknown_keys(c, {"edge_step", "goal_tolerance_default", "seed"});
        if (c["edge_step"]) p.common.edge_step = as_double(c["edge_step"], "edge_step");
        if (c["goal_tolerance_default"])
            p.common.goal_tolerance_default = as_double(c["goal_tolerance_default"], "goal_tolerance_default");
        if (c["seed"]) p.common.seed = as<std::uint64_t>(c["seed"], "seed");
    }
    if (!(p.common.edge_step > 0.0)) throw ValidationError("common.edge_step must be positive");
    if (!(p.common.goal_tolerance_default >= 0.0))
        throw ValidationError("common.goal_tolerance_default must be non-negative");

    p.rrt_connect.edge_step = p.common.edge_step;
    p.rrt_connect.seed = p.common.seed;
    if (const YAML::Node r = doc["rrt_connect"]) {
        reject_unknown_keys(r, {"step_eta", "edge_step", "max_iterations", "seed"});
        if (r["step_eta"]) p.rrt_connect.step_eta = as_double(r["step_eta"], "step_eta");
        if (r["edge_step"]) p.rrt_connect.edge_step = as_double(r["edge_step"], "edge_step");
        if (r["max_iterations"]) p.rrt_connect.max_iterations = as<long long>(r["max_iterations"], "max_iterations");
        if (r["seed"]) p.rrt_connect.seed = as<std::uint64_t>(r["seed"], "seed");
    }
    p.rrt_connect.validate();

    p.ara_star.edge_step = p.common.edge_step;
    p.ara_star.seed = p.common.seed;
    if (const YAML::Node a = doc["ara_star"]) {
        reject_unknown_keys(a, {"epsilon_schedule", "edge_step", "seed", "budget_split"});
        if (a["epsilon_schedule"]) {
            const Eigen::VectorXd eps = as_vector(a["epsilon_schedule"], "epsilon_schedule");
            p.ara_star.epsilon_schedule.assign(eps.data(), eps.data() + eps.size());
        }
        if (a["edge_step"]) p.ara_star.edge_step = as_double(a["edge_step"], "edge_step");
        if (a["seed"]) p.ara_star.seed = as<std::uint64_t>(a["seed"], "seed");
        if (a["budget_split"]) p.ara_star.budget_split = as_double(a["budget_split"], "budget_split");
    }
    p.ara_star.validate();
    return p;
}

PlannerParams load_params(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open params file " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_params(buf.str());
}

} // namespace planbench
