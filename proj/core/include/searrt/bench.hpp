#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "searrt/planner.hpp"

namespace searrt::bench {

using planner::PlannerParams;
using planner::Scenario;
using planner::Strategy;

struct TrialStats {
    Strategy strategy = Strategy::HalfAnnulus;
    int trial = 0;
    std::uint64_t seed = 0;
    bool solved = false;
    long samples_to_first_solution = -1;  // draws, rejected included
    double final_cost = 0.0;
    std::optional<double> time_to_within_5pct;  // s
    double wall_time = 0.0;                     // s
    int iterations = 0;
    /// (iteration, c_best) recorded whenever the best cost improves.
    std::vector<std::pair<int, double>> cost_curve;
};

struct StrategySummary {
    Strategy strategy = Strategy::HalfAnnulus;
    int n_trials = 0;
    int n_solved = 0;
    double mean_samples_to_first = 0.0;
    double std_samples_to_first = 0.0;
    double mean_time_to_5pct = 0.0;
    double std_time_to_5pct = 0.0;
    double convergence_rate = 0.0;  // fraction of trials reaching the 5% band
    double mean_wall_time = 0.0;
    double std_wall_time = 0.0;
    double mean_final_cost = 0.0;
    double std_final_cost = 0.0;
};

struct CampaignSummary {
    double best_known_cost = 0.0;
    int trial_count = 0;
    std::vector<StrategySummary> strategies;
};

struct CampaignConfig {
    std::vector<Strategy> strategies;
    int n_trials = 1;
    int budget = 2000;  // iterations per trial
    std::uint64_t base_seed = 1;
    int workers = 0;  // 0: hardware concurrency
};

struct CampaignResult {
    CampaignSummary summary;
    std::vector<TrialStats> trials;  // ordered by (strategy, trial)
};

/// Per-trial seed, derived deterministically from the campaign seed.
std::uint64_t trial_seed(std::uint64_t base_seed, Strategy strategy, int trial);

/// Reference cost for the 5% convergence band: best cost over one run per
/// strategy with a tenfold iteration budget.
double best_known_cost(const Scenario& scenario, const PlannerParams& base,
                       const CampaignConfig& config);

CampaignResult run_campaign(const Scenario& scenario, const PlannerParams& base,
                            const CampaignConfig& config);

CampaignSummary summarize(const std::vector<TrialStats>& trials, double best_known,
                          const std::vector<Strategy>& strategies);

}  // namespace searrt::bench
