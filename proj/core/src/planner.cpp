#include "searrt/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

namespace searrt::planner {

namespace {
constexpr double kPi = std::numbers::pi;

double dist2(const Point& a, const Point& b) {
    const double dn = a.north - b.north;
    const double de = a.east - b.east;
    return dn * dn + de * de;
}
}  // namespace

// ---------------------------------------------------------------- KdTree2

void KdTree2::insert(const Point& p, int payload) {
    const int idx = static_cast<int>(nodes_.size());
    nodes_.push_back({p, payload});
    if (idx == 0) return;
    int cur = 0;
    int depth = 0;
    for (;;) {
        Node& n = nodes_[cur];
        const bool left = (depth % 2 == 0) ? (p.north < n.p.north) : (p.east < n.p.east);
        int& slot = left ? n.left : n.right;
        if (slot == -1) {
            slot = idx;
            return;
        }
        cur = slot;
        ++depth;
    }
}

int KdTree2::nearest(const Point& p) const {
    if (nodes_.empty()) return -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    int best = -1;
    nearest_rec(0, 0, p, best_d2, best);
    return best;
}

void KdTree2::nearest_rec(int idx, int depth, const Point& q, double& best_d2, int& best) const {
    if (idx == -1) return;
    const Node& n = nodes_[idx];
    const double d2 = dist2(n.p, q);
    if (d2 < best_d2 || (d2 == best_d2 && n.payload < best)) {
        best_d2 = d2;
        best = n.payload;
    }
    const double delta =
        (depth % 2 == 0) ? (q.north - n.p.north) : (q.east - n.p.east);
    const int first = delta < 0.0 ? n.left : n.right;
    const int second = delta < 0.0 ? n.right : n.left;
    nearest_rec(first, depth + 1, q, best_d2, best);
    if (delta * delta <= best_d2) {
        nearest_rec(second, depth + 1, q, best_d2, best);
    }
}

void KdTree2::within_radius(const Point& p, double radius, std::vector<int>& out) const {
    out.clear();
    if (nodes_.empty() || radius < 0.0) return;
    radius_rec(0, 0, p, radius, out);
}

void KdTree2::radius_rec(int idx, int depth, const Point& q, double r,
                         std::vector<int>& out) const {
    if (idx == -1) return;
    const Node& n = nodes_[idx];
    if (dist2(n.p, q) <= r * r) out.push_back(n.payload);
    const double delta =
        (depth % 2 == 0) ? (q.north - n.p.north) : (q.east - n.p.east);
    if (delta - r <= 0.0) radius_rec(n.left, depth + 1, q, r, out);
    if (delta + r >= 0.0) radius_rec(n.right, depth + 1, q, r, out);
}

// --------------------------------------------------------------- PlanTree

PlanTree::PlanTree(const Point& start) {
    nodes_.push_back({0, start, -1, 0.0, 0.0});
    children_.emplace_back();
    index_.insert(start, 0);
}

int PlanTree::add_node(const Point& p, int parent, double edge_length, double edge_time) {
    const int id = static_cast<int>(nodes_.size());
    const TreeNode& par = nodes_[parent];
    nodes_.push_back({id, p, parent, par.cost_from_root + edge_length,
                      par.arrival_time + edge_time});
    children_.emplace_back();
    children_[parent].push_back(id);
    index_.insert(p, id);
    return id;
}

int PlanTree::nearest_node(const Point& p) const {
    return index_.nearest(p);
}

std::vector<int> PlanTree::near_nodes(const Point& p, double radius) const {
    std::vector<int> out;
    index_.within_radius(p, radius, out);
    std::sort(out.begin(), out.end());
    return out;
}

void PlanTree::reparent(int id, int new_parent, double edge_length, double edge_time) {
    TreeNode& n = nodes_[id];
    auto& siblings = children_[n.parent];
    siblings.erase(std::find(siblings.begin(), siblings.end(), id));
    n.parent = new_parent;
    children_[new_parent].push_back(id);

    const TreeNode& par = nodes_[new_parent];
    const double d_cost = par.cost_from_root + edge_length - n.cost_from_root;
    const double d_time = par.arrival_time + edge_time - n.arrival_time;

    std::vector<int> stack{id};
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        nodes_[cur].cost_from_root += d_cost;
        nodes_[cur].arrival_time += d_time;
        for (int child : children_[cur]) stack.push_back(child);
    }
}

// --------------------------------------------------------------- strategy

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::RectRejection: return "rect-rejection";
        case Strategy::InformedRectRejection: return "informed-rect-rejection";
        case Strategy::HalfAnnulus: return "half-annulus";
        case Strategy::EllipticalHalfAnnulus: return "elliptical-half-annulus";
    }
    return "unknown";
}

std::optional<Strategy> strategy_from_string(const std::string& name) {
    if (name == "rect-rejection") return Strategy::RectRejection;
    if (name == "informed-rect-rejection") return Strategy::InformedRectRejection;
    if (name == "half-annulus") return Strategy::HalfAnnulus;
    if (name == "elliptical-half-annulus") return Strategy::EllipticalHalfAnnulus;
    return std::nullopt;
}

// ------------------------------------------------------------- primitives

Point extend_towards(const Point& from, const Point& to, double steer_step) {
    const double d = from.distance_to(to);
    if (d <= 0.0) {
        throw std::invalid_argument("extend_towards: zero-length extension");
    }
    if (d <= steer_step) return to;
    return from + (to - from) * (steer_step / d);
}

bool feasible_edge(const PlanTree& tree, int parent_id, const Point& candidate,
                   const Scenario& scenario, const PlannerParams& params,
                   double collision_dt) {
    const TreeNode& parent = tree.node(parent_id);
    const double edge_len = parent.position.distance_to(candidate);
    if (edge_len <= 0.0) return false;

    // (a) turning radius at the parent junction
    if (parent.parent != -1) {
        const TreeNode& grand = tree.node(parent.parent);
        try {
            const auto turn = geom::required_turning_radius(
                params.radius_of_acceptance, geom::bearing(grand.position, parent.position),
                geom::bearing(parent.position, candidate));
            if (turn && *turn < params.min_turn_radius) return false;
        } catch (const geom::InfeasibleGeometryError&) {
            return false;  // full reversal
        }
    }

    // (c) compliant region containment
    const CompliantRegion& region = scenario.region;
    if (!region.contains(candidate)) return false;
    if (geom::segment_point_distance(parent.position, candidate, region.center) <
        region.r_min * (1.0 - 1e-9)) {
        return false;
    }

    // (b) ship-domain clearance against the constant-velocity target
    if (scenario.target) {
        const double v = scenario.own_ship.speed;
        if (!(v > 0.0)) return false;
        const double edge_time = edge_len / v;
        const Point dir = (candidate - parent.position) * (1.0 / edge_len);
        const encounter::DomainTrack track(*scenario.target, scenario.domain);
        const int steps = std::max(1, static_cast<int>(std::ceil(edge_time / collision_dt)));
        for (int k = 0; k <= steps; ++k) {
            const double s = edge_len * static_cast<double>(k) / steps;
            const double t = parent.arrival_time + s / v;
            const Point own_pos = parent.position + dir * s;
            if (track.violated(own_pos, t)) return false;
        }
    }
    return true;
}

std::optional<std::vector<Waypoint>> extract_path(const PlanTree& tree, const Point& goal_point,
                                                  double radius_of_acceptance) {
    if (tree.solutions().empty()) return std::nullopt;
    int best = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int id : tree.solutions()) {
        const double c = tree.node(id).cost_from_root + tree.node(id).position.distance_to(goal_point);
        if (c < best_cost) {
            best_cost = c;
            best = id;
        }
    }
    std::vector<Waypoint> path;
    for (int cur = best; cur != -1; cur = tree.node(cur).parent) {
        const Point& p = tree.node(cur).position;
        path.push_back({p.north, p.east, radius_of_acceptance});
    }
    std::reverse(path.begin(), path.end());
    path.push_back({goal_point.north, goal_point.east, radius_of_acceptance});
    return path;
}

// ------------------------------------------------------------------- plan

namespace {

/// Solution cost through a node: tree cost plus the closing leg to the goal.
double solution_cost(const PlanTree& tree, int id, const Point& goal) {
    return tree.node(id).cost_from_root + tree.node(id).position.distance_to(goal);
}

std::optional<double> best_solution_cost(const PlanTree& tree, const Point& goal) {
    if (tree.solutions().empty()) return std::nullopt;
    double best = std::numeric_limits<double>::infinity();
    for (int id : tree.solutions()) best = std::min(best, solution_cost(tree, id, goal));
    return best;
}

sampling::Rect region_rect(const CompliantRegion& region) {
    return {region.center.north - region.r_max, region.center.north + region.r_max,
            region.center.east - region.r_max, region.center.east + region.r_max};
}

/// Elliptical half-annulus aligned with the start-goal line, or nullopt
/// when the ellipse is degenerate or cannot clear the keep-out circle.
std::optional<sampling::EllipticalAnnulusSpec> informed_spec(const CompliantRegion& region,
                                                             const Point& start,
                                                             const Point& goal, double c_min,
                                                             double c_best) {
    const double w2 = c_best * c_best - c_min * c_min;
    const double b = std::sqrt(std::max(0.0, w2)) / 2.0;
    sampling::EllipticalAnnulusSpec spec;
    spec.center = (start + goal) * 0.5;
    // The analytic sampler can only subtract a hole concentric with the
    // ellipse. When the keep-out circle sits elsewhere it is handled by
    // the caller's region-containment redraw instead.
    const bool concentric = spec.center.distance_to(region.center) <= 1e-9 * region.r_max;
    spec.r_min = concentric ? region.r_min : 0.0;
    if (!(b > spec.r_min * (1.0 + 1e-9)) || !(b > 0.0)) return std::nullopt;
    spec.a = c_best / 2.0;
    spec.b = b;
    spec.orientation = geom::bearing(start, goal);
    if (region.allowed_arc.full_circle()) {
        spec.allowed_half = sampling::HalfSelect::Both;
    } else {
        // Pick the half whose minor direction points into the allowed arc.
        const double minor_dir = spec.orientation.value() + kPi / 2.0;
        const double arc_mid = region.allowed_arc.midpoint().value();
        spec.allowed_half = std::cos(minor_dir - arc_mid) >= 0.0
                                ? sampling::HalfSelect::Positive
                                : sampling::HalfSelect::Negative;
    }
    return spec;
}

struct DrawResult {
    Point point;
    long draws = 0;
    SampleSpace space = SampleSpace::HalfAnnulus;
};

DrawResult draw_sample(const Scenario& scenario, const PlannerParams& params,
                       const Point& start, const Point& goal, double c_min,
                       std::optional<double> c_best, sampling::RandomSource& rng) {
    const CompliantRegion& region = scenario.region;
    const sampling::AnnulusSpec annulus{region.center, region.r_min, region.r_max,
                                        region.allowed_arc};
    DrawResult out;
    switch (params.strategy) {
        case Strategy::HalfAnnulus: {
            out.point = sampling::sample_half_annulus(annulus, params.mode, rng);
            out.draws = 1;
            return out;
        }
        case Strategy::EllipticalHalfAnnulus: {
            if (sampling::select_space(c_best, c_min, region.r_max) ==
                SampleSpace::EllipticalHalfAnnulus) {
                if (auto spec = informed_spec(region, start, goal, c_min, *c_best)) {
                    // The ellipse can overhang the compliant region; redraw
                    // until the sample lands inside it.
                    constexpr long kMaxAttempts = 4096;
                    for (long attempt = 0; attempt < kMaxAttempts; ++attempt) {
                        out.point =
                            sampling::sample_elliptical_half_annulus(*spec, params.mode, rng);
                        ++out.draws;
                        if (region.contains(out.point)) {
                            out.space = SampleSpace::EllipticalHalfAnnulus;
                            return out;
                        }
                    }
                }
            }
            out.point = sampling::sample_half_annulus(annulus, params.mode, rng);
            ++out.draws;
            return out;
        }
        case Strategy::RectRejection: {
            auto r = sampling::rejection_sample_rect(
                region_rect(region), [&](const Point& p) { return region.contains(p); }, rng);
            out.point = r.point;
            out.draws = r.rejected + 1;
            return out;
        }
        case Strategy::InformedRectRejection: {
            if (c_best) {
                const double cb = *c_best;
                auto in_ellipse = [&](const Point& p) {
                    return p.distance_to(start) + p.distance_to(goal) <= cb;
                };
                // Bounding box of the informed ellipse, clipped to the region box.
                const Point c = (start + goal) * 0.5;
                const double o = geom::bearing(start, goal).value();
                const double a = cb / 2.0;
                const double b = std::sqrt(std::max(0.0, cb * cb - c_min * c_min)) / 2.0;
                const double hn = std::hypot(a * std::cos(o), b * std::sin(o));
                const double he = std::hypot(a * std::sin(o), b * std::cos(o));
                const sampling::Rect rr = region_rect(region);
                const sampling::Rect bounds{
                    std::max(rr.n_min, c.north - hn), std::min(rr.n_max, c.north + hn),
                    std::max(rr.e_min, c.east - he), std::min(rr.e_max, c.east + he)};
                auto r = sampling::rejection_sample_rect(
                    bounds,
                    [&](const Point& p) { return in_ellipse(p) && region.contains(p); }, rng);
                out.point = r.point;
                out.draws = r.rejected + 1;
                out.space = SampleSpace::EllipticalHalfAnnulus;
                return out;
            }
            auto r = sampling::rejection_sample_rect(
                region_rect(region), [&](const Point& p) { return region.contains(p); }, rng);
            out.point = r.point;
            out.draws = r.rejected + 1;
            return out;
        }
    }
    throw std::logic_error("draw_sample: unhandled strategy");
}

}  // namespace

PlanResult plan(const Scenario& scenario, const PlannerParams& params) {
    const CompliantRegion& region = scenario.region;
    const Point start = scenario.own_ship.position;
    const Point goal = region.goal_point;
    const double v = scenario.own_ship.speed;
    if (!(v > 0.0)) throw std::invalid_argument("plan: own ship speed must be positive");
    if (start.distance_to(region.center) < region.r_min * (1.0 - 1e-9)) {
        throw std::invalid_argument("plan: start position lies inside the inner circle");
    }

    const double goal_radius =
        params.goal_radius > 0.0 ? params.goal_radius : params.radius_of_acceptance;
    double collision_dt = params.collision_check_dt;
    if (scenario.target) {
        const double closing = v + scenario.target->speed;
        collision_dt = std::min(collision_dt, scenario.domain.b_sd / (4.0 * closing));
    }
    double near_const = params.near_radius_constant;
    if (near_const <= 0.0) {
        const double area = 0.5 * region.allowed_arc.span *
                            (region.r_max * region.r_max - region.r_min * region.r_min);
        near_const = 2.0 * params.steer_step * std::sqrt(area / kPi);
    }

    PlanResult result{.tree = PlanTree(start)};
    result.c_min = start.distance_to(goal);
    sampling::RandomSource rng(params.seed);
    result.log.reserve(params.max_iterations);

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    PlanTree& tree = result.tree;
    std::vector<int> near;

    for (int iter = 1; iter <= params.max_iterations; ++iter) {
        const std::optional<double> c_best = best_solution_cost(tree, goal);

        const DrawResult draw =
            draw_sample(scenario, params, start, goal, result.c_min, c_best, rng);
        result.total_draws += draw.draws;

        const int nearest = tree.nearest_node(draw.point);
        const Point& nearest_pos = tree.node(nearest).position;
        if (nearest_pos.distance_to(draw.point) > 1e-12) {
            const Point x_new = extend_towards(nearest_pos, draw.point, params.steer_step);
            if (feasible_edge(tree, nearest, x_new, scenario, params, collision_dt)) {
                const double d_nearest = nearest_pos.distance_to(x_new);
                const int id = tree.add_node(x_new, nearest, d_nearest, d_nearest / v);

                const std::size_t n = tree.size();
                const double r_near = std::min(
                    near_const * std::sqrt(std::log(static_cast<double>(n)) / n),
                    params.steer_step);
                near = tree.near_nodes(x_new, r_near);

                // Best parent among the near set.
                int z_min = nearest;
                double c_min_edge = tree.node(nearest).cost_from_root + d_nearest;
                for (int z : near) {
                    if (z == id || z == nearest) continue;
                    const double d = tree.node(z).position.distance_to(x_new);
                    const double c = tree.node(z).cost_from_root + d;
                    if (c < c_min_edge &&
                        feasible_edge(tree, z, x_new, scenario, params, collision_dt)) {
                        z_min = z;
                        c_min_edge = c;
                    }
                }
                if (z_min != nearest) {
                    const double d = tree.node(z_min).position.distance_to(x_new);
                    tree.reparent(id, z_min, d, d / v);
                }

                // Rewire the neighborhood through the new node.
                for (int z : near) {
                    if (z == id || z == tree.node(id).parent || z == 0) continue;
                    const double d = tree.node(id).position.distance_to(tree.node(z).position);
                    const double c_through = tree.node(id).cost_from_root + d;
                    if (c_through < tree.node(z).cost_from_root &&
                        feasible_edge(tree, id, tree.node(z).position, scenario, params,
                                      collision_dt)) {
                        tree.reparent(z, id, d, d / v);
                    }
                }

                if (x_new.distance_to(goal) <= goal_radius) {
                    tree.mark_solution(id);
                    if (result.samples_to_first_solution < 0) {
                        result.samples_to_first_solution = result.total_draws;
                    }
                }
            }
        }

        IterationRecord rec;
        rec.iteration = iter;
        const auto cb = best_solution_cost(tree, goal);
        rec.c_best = cb.value_or(std::numeric_limits<double>::infinity());
        rec.elapsed_s = elapsed();
        rec.space = draw.space;
        rec.cumulative_draws = result.total_draws;
        result.log.push_back(rec);
    }

    result.path = extract_path(tree, goal, params.radius_of_acceptance);
    if (result.path) {
        result.cost = *best_solution_cost(tree, goal);
    }
    return result;
}

}  // namespace searrt::planner
