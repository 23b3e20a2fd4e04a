#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"COLREGs-compliant sampling RRT* planner for ship collision avoidance"};
    app.require_subcommand(1);

    searrt::cli::PlanOptions plan_opts;
    auto* plan = app.add_subcommand("plan", "Plan a path deviation for one scenario");
    plan->add_option("scenario", plan_opts.scenario_path, "Scenario JSON file")->required();
    std::uint64_t plan_seed = 0;
    int plan_iters = 0;
    std::string plan_strategy;
    plan->add_option("--seed", plan_seed, "RNG seed override");
    plan->add_option("--strategy", plan_strategy,
                     "rect-rejection | informed-rect-rejection | half-annulus | "
                     "elliptical-half-annulus");
    plan->add_option("--iterations", plan_iters, "Iteration budget override");
    plan->add_option("--out", plan_opts.out_dir, "Output directory");

    searrt::cli::BenchOptions bench_opts;
    auto* bench = app.add_subcommand("bench", "Run a sampling-strategy comparison campaign");
    bench->add_option("scenario", bench_opts.scenario_path, "Scenario JSON file")->required();
    bench->add_option("--trials", bench_opts.trials, "Trials per strategy");
    bench->add_option("--strategies", bench_opts.strategies,
                      "Strategy names, or 'all'")->delimiter(',');
    bench->add_option("--budget", bench_opts.budget, "Iterations per trial");
    bench->add_option("--seed", bench_opts.seed, "Campaign base seed");
    bench->add_option("--workers", bench_opts.workers, "Worker threads (0 = auto)");
    bench->add_option("--out", bench_opts.out_dir, "Output directory");

    searrt::cli::SampleOptions sample_opts;
    auto* sample = app.add_subcommand("sample", "Emit raw samples from one sampling space");
    sample->add_option("--space", sample_opts.space,
                       "half-annulus | elliptical-half-annulus");
    sample->add_option("--n", sample_opts.n, "Sample count");
    sample->add_option("--seed", sample_opts.seed, "RNG seed");
    sample->add_option("--mode", sample_opts.mode, "exact | paper");
    sample->add_option("--out", sample_opts.out_dir, "Output directory");
    sample->add_option("--center-north", sample_opts.center_north, "Center north, m");
    sample->add_option("--center-east", sample_opts.center_east, "Center east, m");
    sample->add_option("--r-min", sample_opts.r_min, "Inner radius, m");
    sample->add_option("--r-max", sample_opts.r_max, "Outer radius, m (half-annulus)");
    sample->add_option("--arc-start-deg", sample_opts.arc_start_deg, "Arc start bearing, deg");
    sample->add_option("--arc-span-deg", sample_opts.arc_span_deg, "Arc span, deg");
    sample->add_option("--a", sample_opts.a, "Semi-major axis, m (elliptical)");
    sample->add_option("--b", sample_opts.b, "Semi-minor axis, m (elliptical)");
    sample->add_option("--orientation-deg", sample_opts.orientation_deg,
                       "Major-axis bearing, deg");
    sample->add_option("--half", sample_opts.half, "positive | negative | both");

    CLI11_PARSE(app, argc, argv);

    if (plan->parsed()) {
        if (plan->count("--seed")) plan_opts.seed = plan_seed;
        if (plan->count("--iterations")) plan_opts.iterations = plan_iters;
        if (plan->count("--strategy")) plan_opts.strategy = plan_strategy;
        return searrt::cli::cmd_plan(plan_opts);
    }
    if (bench->parsed()) return searrt::cli::cmd_bench(bench_opts);
    if (sample->parsed()) return searrt::cli::cmd_sample(sample_opts);
    return 1;
}
