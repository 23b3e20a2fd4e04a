#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "searrt/encounter.hpp"
#include "searrt/sampling.hpp"

namespace searrt::planner {

using encounter::CompliantRegion;
using encounter::ShipDomain;
using encounter::VesselState;
using geom::Point;
using sampling::SampleSpace;
using sampling::SamplingMode;

struct Waypoint {
    double north = 0.0;
    double east = 0.0;
    double radius_of_acceptance = 0.0;
};

struct TreeNode {
    int id = 0;
    Point position;
    int parent = -1;  // -1 for root
    double cost_from_root = 0.0;
    double arrival_time = 0.0;  // s since planning time
};

/// Incremental 2-d tree over node positions; nearest ties break on the
/// lowest payload id.
class KdTree2 {
public:
    void insert(const Point& p, int payload);
    int nearest(const Point& p) const;
    void within_radius(const Point& p, double radius, std::vector<int>& out) const;
    std::size_t size() const { return nodes_.size(); }

private:
    struct Node {
        Point p;
        int payload;
        int left = -1;
        int right = -1;
    };
    std::vector<Node> nodes_;
    void nearest_rec(int idx, int depth, const Point& q, double& best_d2, int& best) const;
    void radius_rec(int idx, int depth, const Point& q, double r, std::vector<int>& out) const;
};

class PlanTree {
public:
    /// Creates the tree with its root at `start`.
    explicit PlanTree(const Point& start);

    int add_node(const Point& p, int parent, double edge_length, double edge_time);
    const TreeNode& node(int id) const { return nodes_[id]; }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<int>& children(int id) const { return children_[id]; }
    const std::vector<int>& solutions() const { return solutions_; }
    void mark_solution(int id) { solutions_.push_back(id); }

    int nearest_node(const Point& p) const;
    std::vector<int> near_nodes(const Point& p, double radius) const;

    /// Reparent `id` onto `new_parent` and propagate cost/time deltas
    /// through the subtree.
    void reparent(int id, int new_parent, double edge_length, double edge_time);

private:
    std::vector<TreeNode> nodes_;
    std::vector<std::vector<int>> children_;
    std::vector<int> solutions_;
    KdTree2 index_;
};

enum class Strategy { RectRejection, InformedRectRejection, HalfAnnulus, EllipticalHalfAnnulus };

const char* to_string(Strategy s);
std::optional<Strategy> strategy_from_string(const std::string& name);

struct PlannerParams {
    int max_iterations = 2000;
    double steer_step = 300.0;             // m
    double near_radius_constant = 0.0;     // 0: derived from the region area
    double goal_radius = 0.0;              // 0: defaults to radius_of_acceptance
    double min_turn_radius = 300.0;        // m
    double radius_of_acceptance = 300.0;   // m
    double collision_check_dt = 4.0;       // s, tightened per scenario
    std::uint64_t seed = 1;
    Strategy strategy = Strategy::HalfAnnulus;
    SamplingMode mode = SamplingMode::ExactAreaUniform;
};

struct Scenario {
    VesselState own_ship;
    std::optional<VesselState> target;
    CompliantRegion region;
    ShipDomain domain;
};

struct IterationRecord {
    int iteration = 0;
    double c_best = std::numeric_limits<double>::infinity();
    double elapsed_s = 0.0;
    SampleSpace space = SampleSpace::HalfAnnulus;
    long cumulative_draws = 0;
};

struct PlanResult {
    std::optional<std::vector<Waypoint>> path;
    double cost = std::numeric_limits<double>::infinity();
    double c_min = 0.0;
    PlanTree tree;
    std::vector<IterationRecord> log;
    long samples_to_first_solution = -1;  // draws, including rejected; -1 if unsolved
    long total_draws = 0;

    bool solved() const { return path.has_value(); }
};

Point extend_towards(const Point& from, const Point& to, double steer_step);

/// Edge validity: turning radius at the parent junction, time-resolved
/// ship-domain clearance against the target, and containment in the
/// compliant region.
bool feasible_edge(const PlanTree& tree, int parent_id, const Point& candidate,
                   const Scenario& scenario, const PlannerParams& params,
                   double collision_dt);

/// Waypoints from root to the lowest-cost solution node, goal appended.
std::optional<std::vector<Waypoint>> extract_path(const PlanTree& tree, const Point& goal_point,
                                                  double radius_of_acceptance);

PlanResult plan(const Scenario& scenario, const PlannerParams& params);

}  // namespace searrt::planner
