#include "commands.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "searrt/bench.hpp"
#include "searrt/scenario.hpp"
#include "searrt/svg.hpp"

namespace searrt::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kSchemaVersion = 1;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

json region_json(const encounter::CompliantRegion& region) {
    return {
        {"center", {{"north", region.center.north}, {"east", region.center.east}}},
        {"r_min", region.r_min},
        {"r_max", region.r_max},
        {"arc_start_deg", region.allowed_arc.start.value() * kRadToDeg},
        {"arc_span_deg", region.allowed_arc.span * kRadToDeg},
        {"goal", {{"north", region.goal_point.north}, {"east", region.goal_point.east}}},
    };
}

std::vector<planner::Strategy> parse_strategies(const std::vector<std::string>& names) {
    const std::vector<planner::Strategy> all = {
        planner::Strategy::RectRejection,
        planner::Strategy::InformedRectRejection,
        planner::Strategy::HalfAnnulus,
        planner::Strategy::EllipticalHalfAnnulus,
    };
    if (names.empty() || (names.size() == 1 && names[0] == "all")) return all;
    std::vector<planner::Strategy> out;
    for (const auto& name : names) {
        const auto s = planner::strategy_from_string(name);
        if (!s) throw std::invalid_argument("unknown strategy: " + name);
        out.push_back(*s);
    }
    return out;
}

void draw_plan_svg(const fs::path& path, const scenario::BuiltScenario& built,
                   const planner::PlanResult& result) {
    const auto& region = built.scenario.region;
    const double pad = region.r_max * 1.05;
    svg::Canvas canvas(region.center.north - pad, region.center.north + pad,
                       region.center.east - pad, region.center.east + pad, 900, 900);

    canvas.circle(region.center, region.r_max, "#888", "none", 1.5);
    canvas.circle(region.center, region.r_min, "#c0392b", "#f5d5d0", 1.5);
    if (!region.allowed_arc.full_circle()) {
        // Boundary rays of the compliant arc.
        for (double ang : {region.allowed_arc.start.value(),
                           region.allowed_arc.start.value() + region.allowed_arc.span}) {
            const geom::Point dir{std::cos(ang), std::sin(ang)};
            canvas.line(region.center, region.center + dir * region.r_max, "#888", 1.0, "6,4");
        }
    }

    const auto& tree = result.tree;
    for (std::size_t i = 1; i < tree.size(); ++i) {
        const auto& n = tree.node(static_cast<int>(i));
        canvas.line(tree.node(n.parent).position, n.position, "#b8c6db", 0.6);
    }

    if (result.path) {
        std::vector<geom::Point> pts;
        for (const auto& w : *result.path) pts.push_back({w.north, w.east});
        canvas.polyline(pts, "#1b5e20", 2.5);
        for (const auto& p : pts) canvas.dot(p, 3.0, "#1b5e20");
    }

    const auto& own = built.scenario.own_ship;
    canvas.dot(own.position, 5.0, "#1565c0");
    canvas.line(own.position, own.position + own.velocity() * 60.0, "#1565c0", 2.0);
    if (built.scenario.target) {
        const auto& tv = *built.scenario.target;
        canvas.dot(tv.position, 5.0, "#c62828");
        canvas.line(tv.position, tv.position + tv.velocity() * 60.0, "#c62828", 2.0);
    }
    canvas.dot(region.goal_point, 5.0, "#2e7d32");
    canvas.text({region.center.north + pad * 0.95, region.center.east - pad},
                std::string("encounter: ") + encounter::to_string(built.assessment.kind), 14);
    canvas.write_file(path.string());
}

void draw_bench_svg(const fs::path& path, const bench::CampaignResult& result, int budget,
                    double c_min) {
    const int width = 1000, height = 520, margin = 55;
    svg::Canvas canvas(0, 1, 0, 1, width, height, 0);  // pixel-space drawing only

    const std::map<planner::Strategy, std::string> colors = {
        {planner::Strategy::RectRejection, "#c62828"},
        {planner::Strategy::InformedRectRejection, "#ef6c00"},
        {planner::Strategy::HalfAnnulus, "#1565c0"},
        {planner::Strategy::EllipticalHalfAnnulus, "#2e7d32"},
    };

    // Left panel: mean relative best cost vs iteration.
    const double px0 = margin, px1 = width / 2.0 - 20, py0 = height - margin, py1 = margin;
    double rel_max = 1.0;

    std::map<planner::Strategy, std::vector<double>> mean_curves;
    std::map<planner::Strategy, int> counts;
    for (const auto& t : result.trials) {
        auto& acc = mean_curves[t.strategy];
        if (acc.empty()) acc.assign(budget, 0.0);
        double current = std::numeric_limits<double>::quiet_NaN();
        std::size_t k = 0;
        for (int it = 1; it <= budget; ++it) {
            while (k < t.cost_curve.size() && t.cost_curve[k].first <= it) {
                current = t.cost_curve[k].second;
                ++k;
            }
            // Unsolved prefix drawn at the cap value.
            acc[it - 1] += std::isnan(current) ? 2.0 * c_min : std::min(current, 2.0 * c_min);
        }
        counts[t.strategy] += 1;
    }

    std::ostringstream axes;
    axes << "<g stroke=\"#333\" stroke-width=\"1\">"
         << "<line x1=\"" << px0 << "\" y1=\"" << py0 << "\" x2=\"" << px1 << "\" y2=\"" << py0
         << "\"/>"
         << "<line x1=\"" << px0 << "\" y1=\"" << py0 << "\" x2=\"" << px0 << "\" y2=\"" << py1
         << "\"/></g>"
         << "<text x=\"" << (px0 + px1) / 2 - 60 << "\" y=\"" << height - 12
         << "\" font-size=\"13\" font-family=\"sans-serif\">iteration</text>"
         << "<text x=\"8\" y=\"" << (py0 + py1) / 2
         << "\" font-size=\"13\" font-family=\"sans-serif\">c_best/c_min</text>";
    canvas.raw(axes.str());

    rel_max = 2.0;
    int legend_row = 0;
    for (auto& [strategy, curve] : mean_curves) {
        const int n = counts[strategy];
        std::ostringstream poly;
        poly << "<polyline fill=\"none\" stroke=\"" << colors.at(strategy)
             << "\" stroke-width=\"1.6\" points=\"";
        for (int it = 1; it <= budget; ++it) {
            const double rel = (curve[it - 1] / n) / c_min;
            const double px = px0 + (px1 - px0) * it / budget;
            const double py = py0 - (py0 - py1) * std::min(rel, rel_max) / rel_max;
            poly << px << "," << py << " ";
        }
        poly << "\"/>";
        canvas.raw(poly.str());
        std::ostringstream leg;
        leg << "<text x=\"" << px1 - 230 << "\" y=\"" << py1 + 16 + legend_row * 16
            << "\" font-size=\"12\" font-family=\"sans-serif\" fill=\"" << colors.at(strategy)
            << "\">" << planner::to_string(strategy) << "</text>";
        canvas.raw(leg.str());
        ++legend_row;
    }

    // Right panel: histogram of samples to first solution.
    const double hx0 = width / 2.0 + 40, hx1 = width - margin;
    long max_samples = 1;
    for (const auto& t : result.trials) {
        if (t.solved) max_samples = std::max(max_samples, t.samples_to_first_solution);
    }
    const int bins = 24;
    std::map<planner::Strategy, std::vector<int>> hists;
    for (const auto& t : result.trials) {
        if (!t.solved) continue;
        auto& h = hists[t.strategy];
        if (h.empty()) h.assign(bins, 0);
        int bin = static_cast<int>(static_cast<double>(t.samples_to_first_solution) /
                                   (max_samples + 1) * bins);
        h[std::min(bin, bins - 1)] += 1;
    }
    int hist_max = 1;
    for (auto& [s, h] : hists)
        for (int c : h) hist_max = std::max(hist_max, c);

    std::ostringstream haxes;
    haxes << "<g stroke=\"#333\" stroke-width=\"1\"><line x1=\"" << hx0 << "\" y1=\"" << py0
          << "\" x2=\"" << hx1 << "\" y2=\"" << py0 << "\"/><line x1=\"" << hx0 << "\" y1=\""
          << py0 << "\" x2=\"" << hx0 << "\" y2=\"" << py1 << "\"/></g>"
          << "<text x=\"" << (hx0 + hx1) / 2 - 110 << "\" y=\"" << height - 12
          << "\" font-size=\"13\" font-family=\"sans-serif\">samples to first solution (max "
          << max_samples << ")</text>";
    canvas.raw(haxes.str());

    for (auto& [strategy, h] : hists) {
        std::ostringstream poly;
        poly << "<polyline fill=\"none\" stroke=\"" << colors.at(strategy)
             << "\" stroke-width=\"1.6\" points=\"";
        for (int b = 0; b < bins; ++b) {
            const double px = hx0 + (hx1 - hx0) * (b + 0.5) / bins;
            const double py = py0 - (py0 - py1) * h[b] / hist_max;
            poly << px << "," << py << " ";
        }
        poly << "\"/>";
        canvas.raw(poly.str());
    }
    canvas.write_file(path.string());
}

}  // namespace

std::string default_out_dir() {
    if (const char* env = std::getenv("SEARRT_OUT_DIR")) return env;
    return ".";
}

int cmd_plan(const PlanOptions& options) {
    scenario::ScenarioFile file;
    try {
        file = scenario::load_scenario(options.scenario_path);
    } catch (const scenario::ScenarioError& e) {
        std::cerr << "scenario error (" << e.field << "): " << e.what() << "\n";
        return kExitInputError;
    }

    planner::PlannerParams params = file.params;
    if (options.seed) params.seed = *options.seed;
    if (options.iterations) params.max_iterations = *options.iterations;
    if (options.strategy) {
        const auto s = planner::strategy_from_string(*options.strategy);
        if (!s) {
            std::cerr << "unknown strategy: " << *options.strategy << "\n";
            return kExitInputError;
        }
        params.strategy = *s;
    }

    scenario::BuiltScenario built;
    try {
        built = scenario::build_scenario(file);
    } catch (const encounter::NoActionRequiredError&) {
        const auto assessment = encounter::classify_encounter(file.own_ship, file.target_vessel,
                                                              file.d_act, file.t_act);
        if (assessment.kind == encounter::EncounterKind::CrossingStandOn ||
            assessment.kind == encounter::EncounterKind::OvertakenByTarget) {
            std::cerr << "stand-on: no action required ("
                      << encounter::to_string(assessment.kind) << ")\n";
        } else {
            std::cerr << "no risk: no action required\n";
        }
        return kExitNoSolution;
    } catch (const scenario::ScenarioError& e) {
        std::cerr << "scenario error (" << e.field << "): " << e.what() << "\n";
        return kExitInputError;
    } catch (const encounter::DegenerateGeometryError& e) {
        std::cerr << "degenerate geometry: " << e.what() << "\n";
        return kExitInputError;
    }

    const fs::path out_dir = options.out_dir.empty() ? default_out_dir() : options.out_dir;
    fs::create_directories(out_dir);

    const planner::PlanResult result = planner::plan(built.scenario, params);

    json run;
    run["schema_version"] = kSchemaVersion;
    run["scenario_hash"] = file.hash;
    run["seed"] = params.seed;
    run["timestamp"] = timestamp_utc();
    run["strategy"] = planner::to_string(params.strategy);
    run["iterations"] = params.max_iterations;
    run["assessment"] = {
        {"kind", encounter::to_string(built.assessment.kind)},
        {"cpa_m", built.assessment.cpa},
        {"tcpa_s", built.assessment.tcpa},
        {"relative_bearing_deg", built.assessment.relative_bearing.signed_value() * kRadToDeg},
    };
    run["region"] = region_json(built.scenario.region);
    run["c_min"] = result.c_min;
    run["solved"] = result.solved();
    run["samples_to_first_solution"] = result.samples_to_first_solution;
    run["total_draws"] = result.total_draws;
    if (result.solved()) {
        run["cost"] = result.cost;
        json path = json::array();
        for (const auto& w : *result.path) {
            path.push_back({{"north", w.north}, {"east", w.east},
                            {"radius_of_acceptance", w.radius_of_acceptance}});
        }
        run["path"] = path;
    }
    write_text(out_dir / "path.json", run.dump(2) + "\n");

    std::ostringstream csv;
    csv << "# scenario_hash=" << file.hash << " seed=" << params.seed << "\n";
    csv << "index,north_m,east_m,radius_of_acceptance_m\n";
    if (result.solved()) {
        int i = 0;
        for (const auto& w : *result.path) {
            csv << i++ << "," << w.north << "," << w.east << "," << w.radius_of_acceptance
                << "\n";
        }
    }
    write_text(out_dir / "path.csv", csv.str());

    draw_plan_svg(out_dir / "plan.svg", built, result);

    if (!result.solved()) {
        std::cerr << "no solution within " << params.max_iterations << " iterations\n";
        return kExitNoSolution;
    }
    std::cout << "path cost " << result.cost << " m (c_min " << result.c_min << " m), "
              << result.path->size() << " waypoints -> " << (out_dir / "path.json").string()
              << "\n";
    return kExitSolved;
}

int cmd_bench(const BenchOptions& options) {
    scenario::ScenarioFile file;
    scenario::BuiltScenario built;
    std::vector<planner::Strategy> strategies;
    try {
        file = scenario::load_scenario(options.scenario_path);
        built = scenario::build_scenario(file);
        strategies = parse_strategies(options.strategies);
    } catch (const scenario::ScenarioError& e) {
        std::cerr << "scenario error (" << e.field << "): " << e.what() << "\n";
        return kExitInputError;
    } catch (const encounter::NoActionRequiredError& e) {
        std::cerr << e.what() << "\n";
        return kExitNoSolution;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitInputError;
    }

    bench::CampaignConfig config;
    config.strategies = strategies;
    config.n_trials = options.trials;
    config.budget = options.budget;
    config.base_seed = options.seed;
    config.workers = options.workers;

    const bench::CampaignResult result = bench::run_campaign(built.scenario, file.params, config);

    const fs::path out_dir = options.out_dir.empty() ? default_out_dir() : options.out_dir;
    fs::create_directories(out_dir);

    std::ostringstream csv;
    csv << "# scenario_hash=" << file.hash << " base_seed=" << options.seed << "\n";
    csv << "strategy,trial,seed,solved,samples_to_first_solution,final_cost,"
           "time_to_within_5pct_s,wall_time_s,iterations\n";
    for (const auto& t : result.trials) {
        csv << planner::to_string(t.strategy) << "," << t.trial << "," << t.seed << ","
            << (t.solved ? 1 : 0) << "," << t.samples_to_first_solution << ",";
        if (t.solved) csv << t.final_cost;
        csv << ",";
        if (t.time_to_within_5pct) csv << *t.time_to_within_5pct;
        csv << "," << t.wall_time << "," << t.iterations << "\n";
    }
    write_text(out_dir / "trials.csv", csv.str());

    json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["scenario_hash"] = file.hash;
    summary["base_seed"] = options.seed;
    summary["timestamp"] = timestamp_utc();
    summary["trials_per_strategy"] = options.trials;
    summary["budget"] = options.budget;
    summary["best_known_cost"] = result.summary.best_known_cost;
    summary["hardware"] = {
        {"threads", std::thread::hardware_concurrency()},
#if defined(__clang__)
        {"compiler", "clang"},
#elif defined(__GNUC__)
        {"compiler", "gcc"},
#else
        {"compiler", "unknown"},
#endif
    };
    json per = json::array();
    for (const auto& s : result.summary.strategies) {
        per.push_back({
            {"strategy", planner::to_string(s.strategy)},
            {"n_trials", s.n_trials},
            {"n_solved", s.n_solved},
            {"mean_samples_to_first", s.mean_samples_to_first},
            {"std_samples_to_first", s.std_samples_to_first},
            {"mean_time_to_5pct_s", s.mean_time_to_5pct},
            {"std_time_to_5pct_s", s.std_time_to_5pct},
            {"convergence_rate", s.convergence_rate},
            {"mean_wall_time_s", s.mean_wall_time},
            {"std_wall_time_s", s.std_wall_time},
            {"mean_final_cost", s.mean_final_cost},
            {"std_final_cost", s.std_final_cost},
        });
    }
    summary["strategies"] = per;
    write_text(out_dir / "summary.json", summary.dump(2) + "\n");

    double c_min = built.scenario.own_ship.position.distance_to(built.scenario.region.goal_point);
    draw_bench_svg(out_dir / "bench.svg", result, options.budget, c_min);

    std::cout << "campaign complete: " << result.trials.size() << " trials, best known cost "
              << result.summary.best_known_cost << " m -> " << (out_dir / "summary.json").string()
              << "\n";
    return kExitSolved;
}

int cmd_sample(const SampleOptions& options) {
    const double deg = std::numbers::pi / 180.0;
    sampling::SamplingMode mode;
    if (options.mode == "exact") {
        mode = sampling::SamplingMode::ExactAreaUniform;
    } else if (options.mode == "paper") {
        mode = sampling::SamplingMode::PaperFaithful;
    } else {
        std::cerr << "unknown mode: " << options.mode << " (expected exact or paper)\n";
        return kExitInputError;
    }
    if (options.n < 0) {
        std::cerr << "sample count must be >= 0\n";
        return kExitInputError;
    }

    std::vector<geom::Point> points;
    points.reserve(options.n);
    sampling::RandomSource rng(options.seed);
    const geom::Point center{options.center_north, options.center_east};
    double extent = options.r_max;

    try {
        if (options.space == "half-annulus") {
            sampling::AnnulusSpec spec{center, options.r_min, options.r_max,
                                       {geom::Angle::radians(options.arc_start_deg * deg),
                                        options.arc_span_deg * deg}};
            spec.validate();
            for (long i = 0; i < options.n; ++i) {
                points.push_back(sampling::sample_half_annulus(spec, mode, rng));
            }
        } else if (options.space == "elliptical-half-annulus") {
            sampling::EllipticalAnnulusSpec spec;
            spec.center = center;
            spec.a = options.a;
            spec.b = options.b;
            spec.r_min = options.r_min;
            spec.orientation = geom::Angle::radians(options.orientation_deg * deg);
            if (options.half == "positive") spec.allowed_half = sampling::HalfSelect::Positive;
            else if (options.half == "negative") spec.allowed_half = sampling::HalfSelect::Negative;
            else if (options.half == "both") spec.allowed_half = sampling::HalfSelect::Both;
            else {
                std::cerr << "unknown half: " << options.half << "\n";
                return kExitInputError;
            }
            spec.validate();
            extent = options.a;
            for (long i = 0; i < options.n; ++i) {
                points.push_back(sampling::sample_elliptical_half_annulus(spec, mode, rng));
            }
        } else {
            std::cerr << "unknown space: " << options.space << "\n";
            return kExitInputError;
        }
    } catch (const std::exception& e) {
        std::cerr << "invalid geometry: " << e.what() << "\n";
        return kExitInputError;
    }

    const fs::path out_dir = options.out_dir.empty() ? default_out_dir() : options.out_dir;
    fs::create_directories(out_dir);

    std::ostringstream csv;
    csv << "# space=" << options.space << " seed=" << options.seed << " mode=" << options.mode
        << "\n";
    csv << "north_m,east_m\n";
    for (const auto& p : points) csv << p.north << "," << p.east << "\n";
    write_text(out_dir / "samples.csv", csv.str());

    svg::Canvas canvas(center.north - extent, center.north + extent, center.east - extent,
                       center.east + extent, 800, 800);
    for (const auto& p : points) canvas.dot(p, 1.2, "#1565c0");
    canvas.write_file((out_dir / "samples.svg").string());

    std::cout << points.size() << " samples -> " << (out_dir / "samples.csv").string() << "\n";
    return kExitSolved;
}

}  // namespace searrt::cli
