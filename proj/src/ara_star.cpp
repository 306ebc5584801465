#include "planbench/ara_star.hpp"

#include "planbench/error.hpp"
#include "yaml_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace planbench {

std::size_t LatticeStateHash::operator()(const LatticeState& s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int c : s.coords) {
        h ^= static_cast<std::size_t>(static_cast<unsigned>(c)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::vector<int> lattice_extent(const RobotModel& robot) {
    std::vector<int> extent(robot.dof());
    for (std::size_t i = 0; i < robot.dof(); ++i) {
        const auto& j = robot.joint(i);
        extent[i] = static_cast<int>(std::floor((j.limits.hi - j.limits.lo) / j.resolution + 1e-9));
    }
    return extent;
}

LatticeState discretize(const RobotModel& robot, const Configuration& q) {
    require_dimension(robot, q, "discretize");
    const auto extent = lattice_extent(robot);
    LatticeState s;
    s.coords.resize(robot.dof());
    for (std::size_t i = 0; i < robot.dof(); ++i) {
        const auto& j = robot.joint(i);
        const long c = std::lround((q[i] - j.limits.lo) / j.resolution);
        s.coords[i] = static_cast<int>(std::clamp<long>(c, 0, extent[i]));
    }
    return s;
}

Configuration decode(const RobotModel& robot, const LatticeState& s) {
    if (s.coords.size() != robot.dof()) throw ContractViolation("decode: dimension mismatch");
    Configuration q(robot.dof());
    for (std::size_t i = 0; i < robot.dof(); ++i) {
        const auto& j = robot.joint(i);
        q[i] = std::min(j.limits.lo + s.coords[i] * j.resolution, j.limits.hi);
    }
    return q;
}

bool lattice_within_limits(const RobotModel& robot, const LatticeState& s) {
    if (s.coords.size() != robot.dof()) return false;
    const auto extent = lattice_extent(robot);
    for (std::size_t i = 0; i < robot.dof(); ++i)
        if (s.coords[i] < 0 || s.coords[i] > extent[i]) return false;
    return true;
}

MotionPrimitiveSet::MotionPrimitiveSet(std::vector<std::vector<int>> primitives, double snap_radius)
    : primitives_(std::move(primitives)), snap_radius_(snap_radius) {
    if (!(snap_radius_ >= 0.0)) throw ValidationError("snap_radius must be non-negative");
    if (primitives_.empty()) throw ValidationError("motion primitive set is empty");
    const std::size_t n = primitives_.front().size();
    for (const auto& p : primitives_) {
        if (p.size() != n) throw ValidationError("motion primitives differ in length");
        if (std::all_of(p.begin(), p.end(), [](int v) { return v == 0; }))
            throw ValidationError("zero motion primitive");
    }
    for (const auto& p : primitives_) {
        std::vector<int> neg(p.size());
        std::transform(p.begin(), p.end(), neg.begin(), [](int v) { return -v; });
        if (!contains(neg)) throw ValidationError("motion primitives are not closed under negation");
    }
}

bool MotionPrimitiveSet::contains(const std::vector<int>& delta) const {
    return std::find(primitives_.begin(), primitives_.end(), delta) != primitives_.end();
}

PrimitivesFile parse_primitives(std::string_view text) {
    using namespace detail;
    const YAML::Node doc = load_document(text);
    PrimitivesFile out;
    if (doc.IsNull()) return out;
    reject_unknown_keys(doc, {"primitives", "snap_radius"});
    if (const YAML::Node list = doc["primitives"]) {
        if (!list.IsSequence()) throw ParseError("'primitives' must be a list", line_of(list));
        for (const auto& pn : list) {
            if (!pn.IsSequence()) throw ParseError("primitive must be a list of integers", line_of(pn));
            std::vector<int> delta;
            for (const auto& v : pn) delta.push_back(as<int>(v, "primitives"));
            out.primitives.push_back(std::move(delta));
        }
    }
    if (doc["snap_radius"]) out.snap_radius = as_double(doc["snap_radius"], "snap_radius");
    return out;
}

PrimitivesFile load_primitives(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open primitives file " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_primitives(buf.str());
}

double default_snap_radius(const RobotModel& robot) {
    return std::sqrt((robot.weights().array() * robot.resolutions().array().square()).sum());
}

MotionPrimitiveSet default_primitives(const RobotModel& robot, const PrimitivesFile& extra) {
    const std::size_t n = robot.dof();
    std::vector<std::vector<int>> prims;
    auto add = [&](std::vector<int> p) {
        if (std::find(prims.begin(), prims.end(), p) == prims.end()) prims.push_back(std::move(p));
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (int sign : {1, -1}) {
            std::vector<int> p(n, 0);
            p[i] = sign;
            add(std::move(p));
        }
    }
    for (const auto& p : extra.primitives) {
        if (p.size() != n)
            throw ValidationError("motion primitive has " + std::to_string(p.size()) + " entries, robot has " +
                                  std::to_string(n) + " joints");
        if (std::all_of(p.begin(), p.end(), [](int v) { return v == 0; }))
            throw ValidationError("zero motion primitive");
        std::vector<int> neg(n);
        std::transform(p.begin(), p.end(), neg.begin(), [](int v) { return -v; });
        add(p);
        add(std::move(neg));
    }
    return MotionPrimitiveSet(std::move(prims), extra.snap_radius.value_or(default_snap_radius(robot)));
}

void AraParams::validate() const {
    if (epsilon_schedule.empty()) throw ValidationError("ara_star.epsilon_schedule must not be empty");
    for (std::size_t i = 0; i < epsilon_schedule.size(); ++i) {
        if (!(epsilon_schedule[i] >= 1.0)) throw ValidationError("ara_star.epsilon_schedule entries must be >= 1");
        if (i > 0 && !(epsilon_schedule[i] < epsilon_schedule[i - 1]))
            throw ValidationError("ara_star.epsilon_schedule must be strictly decreasing");
    }
    if (!(edge_step > 0.0)) throw ValidationError("ara_star.edge_step must be positive");
    if (!(budget_split > 0.0 && budget_split < 1.0)) throw ValidationError("ara_star.budget_split must lie in (0, 1)");
}

long long SearchStats::total_expansions() const {
    long long total = 0;
    for (auto e : expansions) total += e;
    return total;
}

std::vector<Successor> successors(const LatticeState& s, const MotionPrimitiveSet& primitives,
                                  const RobotModel& robot, const WorldModel& world,
                                  const std::optional<Configuration>& goal_config, double edge_step,
                                  CheckCounter* counter) {
    const Configuration from = decode(robot, s);
    std::vector<Successor> out;
    for (const auto& delta : primitives.primitives()) {
        LatticeState next = s;
        for (std::size_t i = 0; i < next.coords.size(); ++i) next.coords[i] += delta[i];
        if (!lattice_within_limits(robot, next)) continue;
        Configuration to = decode(robot, next);
        if (!check_config(robot, world, to).is_free()) continue;
        if (!check_motion(robot, world, from, to, edge_step, counter)) continue;
        const double cost = config_distance(robot, from, to);
        out.push_back({std::move(next), std::move(to), cost});
    }
    if (goal_config) {
        const double d = config_distance(robot, from, *goal_config);
        if (d <= primitives.snap_radius() && check_motion(robot, world, from, *goal_config, edge_step, counter))
            out.push_back({std::nullopt, *goal_config, d});
    }
    return out;
}

double heuristic(const Configuration& q, const GoalSpec& goal, const RobotModel& robot) {
    return config_distance(robot, q, goal.closest_point(q));
}

double heuristic(const LatticeState& s, const GoalSpec& goal, const RobotModel& robot) {
    return heuristic(decode(robot, s), goal, robot);
}

namespace {

constexpr int kNone = -1;

/// Lattice coordinates packed into one integer when every joint's extent fits.
class CoordPacker {
public:
    explicit CoordPacker(const std::vector<int>& extent) {
        int total = 0;
        for (int e : extent) {
            int bits = 1;
            while ((1LL << bits) <= e) ++bits;
            shifts_.push_back(total);
            total += bits;
        }
        fits_ = total <= 64;
    }

    bool fits() const { return fits_; }

    std::uint64_t pack(const int* coords) const {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < shifts_.size(); ++i)
            key |= static_cast<std::uint64_t>(coords[i]) << shifts_[i];
        return key;
    }

private:
    std::vector<int> shifts_;
    bool fits_ = false;
};

struct Node {
    bool snap_goal = false;
    bool free = false;
    bool goal = false;
    bool in_open = false;
    bool in_incons = false;
    bool successors_ready = false;
    double h = 0.0;
    double g = kNoSolution;
    double key_f = 0.0;
    double key_g = 0.0;
    int parent = kNone;
    int closed_in = kNone; // iteration in which the node was expanded
    std::size_t succ_begin = 0;
    std::size_t succ_count = 0;
};

class AraSearch {
public:
    AraSearch(const GoalSpec& goal, const MotionPrimitiveSet& primitives, const AraParams& params,
              const RobotModel& robot, const WorldModel& world, const std::optional<Configuration>& goal_config)
        : goal_(goal), primitives_(primitives), params_(params), robot_(robot), world_(world),
          goal_config_(goal_config), dof_(robot.dof()), extent_(lattice_extent(robot)), packer_(extent_),
          open_(OpenOrder{this}) {}

    SearchOutcome run(const LatticeState& start, const Deadline& deadline);

private:
    struct OpenOrder {
        const AraSearch* self;
        bool operator()(int a, int b) const { return self->precedes(a, b); }
    };

    bool precedes(int a, int b) const;
    const int* coords(int id) const { return coords_.data() + static_cast<std::size_t>(id) * dof_; }
    Configuration config(int id) const;
    int node_for(const int* coords);
    int snap_node();
    void expand(int id);
    void push_open(int id, double eps);
    void erase_open(int id);
    Path reconstruct(int id) const;

    Node& at(int id) { return nodes_[static_cast<std::size_t>(id)]; }
    const Node& at(int id) const { return nodes_[static_cast<std::size_t>(id)]; }

    const GoalSpec& goal_;
    const MotionPrimitiveSet& primitives_;
    const AraParams& params_;
    const RobotModel& robot_;
    const WorldModel& world_;
    const std::optional<Configuration>& goal_config_;
    std::size_t dof_;
    std::vector<int> extent_;
    CoordPacker packer_;

    std::vector<Node> nodes_;
    std::vector<int> coords_; // dof_ entries per node; the snap node stores zeros
    std::vector<std::pair<int, double>> succ_;
    std::unordered_map<std::uint64_t, int> packed_index_;
    std::map<std::vector<int>, int> wide_index_;
    int snap_id_ = kNone;
    std::set<int, OpenOrder> open_;
    std::vector<int> incons_;
    int iteration_ = 0;
    double eps_ = 1.0;
    SearchStats stats_;
    CheckCounter checks_;
};

bool AraSearch::precedes(int a, int b) const {
    const Node& x = at(a);
    const Node& y = at(b);
    if (x.key_f != y.key_f) return x.key_f < y.key_f;
    if (x.key_g != y.key_g) return x.key_g > y.key_g;
    if (x.snap_goal != y.snap_goal) return x.snap_goal;
    return std::lexicographical_compare(coords(a), coords(a) + dof_, coords(b), coords(b) + dof_);
}

Configuration AraSearch::config(int id) const {
    if (at(id).snap_goal) return *goal_config_;
    Configuration q(static_cast<Eigen::Index>(dof_));
    const int* c = coords(id);
    for (std::size_t i = 0; i < dof_; ++i) {
        const auto& j = robot_.joint(i);
        q[static_cast<Eigen::Index>(i)] = std::min(j.limits.lo + c[i] * j.resolution, j.limits.hi);
    }
    return q;
}

int AraSearch::node_for(const int* c) {
    const int next_id = static_cast<int>(nodes_.size());
    if (packer_.fits()) {
        const auto [it, inserted] = packed_index_.try_emplace(packer_.pack(c), next_id);
        if (!inserted) return it->second;
    } else {
        const auto [it, inserted] = wide_index_.try_emplace(std::vector<int>(c, c + dof_), next_id);
        if (!inserted) return it->second;
    }
    coords_.insert(coords_.end(), c, c + dof_);
    nodes_.emplace_back();
    const Configuration q = config(next_id);
    Node& n = at(next_id);
    n.free = check_config(robot_, world_, q).is_free();
    ++checks_.configs;
    n.goal = goal_satisfied(goal_, q);
    n.h = heuristic(q, goal_, robot_);
    return next_id;
}

int AraSearch::snap_node() {
    if (snap_id_ != kNone) return snap_id_;
    snap_id_ = static_cast<int>(nodes_.size());
    coords_.insert(coords_.end(), dof_, 0);
    nodes_.emplace_back();
    Node& n = at(snap_id_);
    n.snap_goal = true;
    n.free = true;
    n.goal = goal_satisfied(goal_, *goal_config_);
    n.h = heuristic(*goal_config_, goal_, robot_);
    return snap_id_;
}

void AraSearch::push_open(int id, double eps) {
    if (at(id).in_open) open_.erase(id);
    Node& n = at(id);
    n.key_f = n.g + eps * n.h;
    n.key_g = n.g;
    n.in_open = true;
    open_.insert(id);
}

void AraSearch::erase_open(int id) {
    open_.erase(id);
    at(id).in_open = false;
}

// Same successor relation as successors(), with per-state collision results
// cached and successor lists computed once per state.
void AraSearch::expand(int id) {
    if (!at(id).successors_ready) {
        const Configuration from = config(id);
        const std::vector<int> base(coords(id), coords(id) + dof_);
        std::vector<int> next(dof_);
        std::vector<std::pair<int, double>> found;
        for (const auto& delta : primitives_.primitives()) {
            bool inside = true;
            for (std::size_t i = 0; i < dof_; ++i) {
                next[i] = base[i] + delta[i];
                inside = inside && next[i] >= 0 && next[i] <= extent_[i];
            }
            if (!inside) continue;
            const int t = node_for(next.data());
            if (!at(t).free) continue;
            const Configuration to = config(t);
            if (!check_motion(robot_, world_, from, to, params_.edge_step, &checks_)) continue;
            found.emplace_back(t, config_distance(robot_, from, to));
        }
        if (goal_config_) {
            const double d = config_distance(robot_, from, *goal_config_);
            if (d <= primitives_.snap_radius() &&
                check_motion(robot_, world_, from, *goal_config_, params_.edge_step, &checks_))
                found.emplace_back(snap_node(), d);
        }
        stats_.generated += static_cast<long long>(found.size());
        Node& n = at(id);
        n.succ_begin = succ_.size();
        n.succ_count = found.size();
        n.successors_ready = true;
        succ_.insert(succ_.end(), found.begin(), found.end());
    }

    const double g = at(id).g;
    const std::size_t begin = at(id).succ_begin;
    const std::size_t end = begin + at(id).succ_count;
    for (std::size_t k = begin; k < end; ++k) {
        const auto [t, cost] = succ_[k];
        const double candidate = g + cost;
        if (!(candidate < at(t).g)) continue;
        at(t).g = candidate;
        at(t).parent = id;
        if (at(t).closed_in == iteration_) {
            if (!at(t).in_incons) {
                at(t).in_incons = true;
                incons_.push_back(t);
                ++stats_.reopened;
            }
        } else {
            push_open(t, eps_);
        }
    }
}

Path AraSearch::reconstruct(int id) const {
    Path p;
    for (int cur = id; cur != kNone; cur = at(cur).parent) p.waypoints.push_back(config(cur));
    std::reverse(p.waypoints.begin(), p.waypoints.end());
    return p;
}

SearchOutcome AraSearch::run(const LatticeState& start, const Deadline& deadline) {
    SearchOutcome out;
    const int start_id = node_for(start.coords.data());
    at(start_id).g = 0.0;

    int incumbent = kNone;
    double incumbent_cost = kNoSolution;
    bool first = true;

    for (double eps : params_.epsilon_schedule) {
        eps_ = eps;
        ++iteration_;
        if (first) {
            push_open(start_id, eps);
            first = false;
        } else {
            // OPEN <- OPEN u INCONS, keyed under the new inflation.
            std::vector<int> pending(open_.begin(), open_.end());
            for (int id : incons_) {
                at(id).in_incons = false;
                pending.push_back(id);
            }
            incons_.clear();
            open_.clear();
            for (int id : pending) at(id).in_open = false;
            for (int id : pending) push_open(id, eps);
        }
        stats_.epsilons.push_back(eps);
        stats_.expansions.push_back(0);

        bool aborted = false;
        while (!open_.empty()) {
            const int top = *open_.begin();
            if (incumbent_cost <= at(top).key_f) break;
            if (deadline.expired()) {
                aborted = true;
                break;
            }
            erase_open(top);
            at(top).closed_in = iteration_;
            ++stats_.expansions.back();
            if (at(top).goal) {
                if (at(top).g < incumbent_cost) {
                    incumbent_cost = at(top).g;
                    incumbent = top;
                }
                continue;
            }
            expand(top);
        }
        stats_.incumbent_costs.push_back(incumbent_cost);
        if (aborted) {
            stats_.deadline_hit = true;
            break;
        }
        stats_.final_epsilon = eps;
        if (incumbent == kNone) break; // reachable lattice exhausted without a goal
    }

    stats_.collision_checks = checks_.configs;
    out.stats = std::move(stats_);
    if (incumbent != kNone) {
        out.path = reconstruct(incumbent);
        out.cost = incumbent_cost;
    }
    return out;
}

/// Lattice cell to enter the search from q: the nearest cell when it is free
/// and reachable in a straight line, otherwise the closest such corner of the
/// cell box around q.
std::optional<LatticeState> entry_cell(const RobotModel& robot, const WorldModel& world, const Configuration& q,
                                       double edge_step, CheckCounter& checks) {
    auto usable = [&](const LatticeState& s) {
        if (!lattice_within_limits(robot, s)) return false;
        const Configuration c = decode(robot, s);
        return check_motion(robot, world, q, c, edge_step, &checks);
    };
    const LatticeState nearest_cell = discretize(robot, q);
    if (usable(nearest_cell)) return nearest_cell;

    const std::size_t n = robot.dof();
    if (n > 12) return std::nullopt;
    std::vector<LatticeState> corners;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        LatticeState s;
        s.coords.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& j = robot.joint(i);
            const double x = (q[i] - j.limits.lo) / j.resolution;
            s.coords[i] = static_cast<int>((mask >> i) & 1U ? std::ceil(x) : std::floor(x));
        }
        if (s != nearest_cell && std::find(corners.begin(), corners.end(), s) == corners.end()) corners.push_back(s);
    }
    std::stable_sort(corners.begin(), corners.end(), [&](const LatticeState& a, const LatticeState& b) {
        return config_distance(robot, q, decode(robot, a)) < config_distance(robot, q, decode(robot, b));
    });
    for (const auto& s : corners)
        if (usable(s)) return s;
    return std::nullopt;
}

bool same_config(const Configuration& a, const Configuration& b) {
    return (a.array() == b.array()).all();
}

} // namespace

SearchOutcome ara_search(const LatticeState& start, const GoalSpec& goal, const MotionPrimitiveSet& primitives,
                         const AraParams& params, const RobotModel& robot, const WorldModel& world,
                         const Deadline& deadline, const std::optional<Configuration>& goal_config) {
    params.validate();
    if (!lattice_within_limits(robot, start)) throw ContractViolation("ara_search: start state outside the lattice");
    for (const auto& p : primitives.primitives())
        if (p.size() != robot.dof()) throw ContractViolation("ara_search: primitive length differs from robot DOF");
    AraSearch search(goal, primitives, params, robot, world, goal_config);
    return search.run(start, deadline);
}

PlannerResult plan_ara_star(const RobotModel& robot, const WorldModel& world, const Query& query,
                            const MotionPrimitiveSet& primitives, const AraParams& params) {
    const auto started = Deadline::Clock::now();
    params.validate();
    require_dimension(robot, query.start, "plan_ara_star");
    const Deadline deadline(started, query.time_budget);
    const Deadline forward_deadline(started, query.time_budget * params.budget_split);

    CheckCounter checks;
    long long forward_expansions = 0;
    long long backward_expansions = 0;
    auto finish = [&](PlannerResult r) {
        r.planning_time = std::chrono::duration<double>(Deadline::Clock::now() - started).count();
        r.stats["expansions_forward"] = forward_expansions;
        r.stats["expansions_backward"] = backward_expansions;
        r.stats["expansions"] = forward_expansions + backward_expansions;
        r.stats["collision_checks"] = static_cast<long long>(checks.configs);
        return r;
    };

    const QueryValidity validity = validate_query(robot, world, query, params.seed);
    if (validity != QueryValidity::Ok) return finish(PlannerResult::unsolvable(validity));
    if (goal_satisfied(query.goal, query.start))
        return finish(PlannerResult::solved_with(Path{{query.start}}, PlannerResult::Direction::Forward));

    const auto goal_rep = free_goal_representative(robot, world, query.goal, params.seed);

    // Forward: start -> goal.
    if (auto cell = entry_cell(robot, world, query.start, params.edge_step, checks)) {
        SearchOutcome fwd = ara_search(*cell, query.goal, primitives, params, robot, world, forward_deadline, goal_rep);
        forward_expansions = fwd.stats.total_expansions();
        checks.configs += fwd.stats.collision_checks;
        if (fwd.path) {
            Path path;
            if (!same_config(fwd.path->front(), query.start)) path.waypoints.push_back(query.start);
            for (auto& w : fwd.path->waypoints) path.waypoints.push_back(std::move(w));
            return finish(PlannerResult::solved_with(std::move(path), PlannerResult::Direction::Forward));
        }
    }

    // Backward: goal representative -> start, then reversed.
    if (goal_rep) {
        Eigen::VectorXd tol = 0.5 * robot.resolutions();
        const GoalSpec reverse_goal = GoalSpec::config(query.start, tol);
        if (auto cell = entry_cell(robot, world, *goal_rep, params.edge_step, checks)) {
            SearchOutcome bwd = ara_search(*cell, reverse_goal, primitives, params, robot, world, deadline, query.start);
            backward_expansions = bwd.stats.total_expansions();
            checks.configs += bwd.stats.collision_checks;
            if (bwd.path) {
                std::vector<Configuration> reversed;
                reversed.reserve(bwd.path->size() + 2);
                const Configuration& last = bwd.path->back();
                bool junction_ok = true;
                if (!same_config(last, query.start)) {
                    junction_ok = check_motion(robot, world, query.start, last, params.edge_step, &checks);
                    reversed.push_back(query.start);
                }
                if (junction_ok) {
                    for (auto it = bwd.path->waypoints.rbegin(); it != bwd.path->waypoints.rend(); ++it)
                        reversed.push_back(*it);
                    if (!same_config(reversed.back(), *goal_rep)) reversed.push_back(*goal_rep);
                    return finish(PlannerResult::solved_with(Path{std::move(reversed)}, PlannerResult::Direction::Backward));
                }
            }
        }
    }
    return finish(PlannerResult::timeout());
}

} // namespace planbench
