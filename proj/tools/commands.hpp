#pragma once

#include <optional>
#include <string>
#include <vector>

namespace searrt::cli {

/// Exit codes shared by all subcommands.
inline constexpr int kExitSolved = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNoSolution = 2;

/// Default output directory: $SEARRT_OUT_DIR or the current directory.
std::string default_out_dir();

struct PlanOptions {
    std::string scenario_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> strategy;
    std::optional<int> iterations;
    std::string out_dir;
};
int cmd_plan(const PlanOptions& options);

struct BenchOptions {
    std::string scenario_path;
    int trials = 100;
    std::vector<std::string> strategies;  // empty or {"all"}: every strategy
    int budget = 1000;
    std::uint64_t seed = 1;
    int workers = 0;
    std::string out_dir;
};
int cmd_bench(const BenchOptions& options);

struct SampleOptions {
    std::string space = "half-annulus";  // or "elliptical-half-annulus"
    long n = 1000;
    std::uint64_t seed = 1;
    std::string mode = "exact";  // or "paper"
    std::string out_dir;
    // half-annulus parameters
    double center_north = 0.0;
    double center_east = 0.0;
    double r_min = 0.0;
    double r_max = 1000.0;
    double arc_start_deg = 0.0;
    double arc_span_deg = 360.0;
    // elliptical parameters
    double a = 2000.0;
    double b = 1000.0;
    double orientation_deg = 0.0;
    std::string half = "both";  // positive | negative | both
};
int cmd_sample(const SampleOptions& options);

}  // namespace searrt::cli
