#include "searrt/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "searrt/sampling.hpp"

namespace searrt::bench {

namespace {

struct Accum {
    double sum = 0.0;
    double sum2 = 0.0;
    int n = 0;

    void add(double x) {
        sum += x;
        sum2 += x * x;
        ++n;
    }
    double mean() const { return n > 0 ? sum / n : 0.0; }
    double stdev() const {
        if (n < 2) return 0.0;
        const double m = mean();
        return std::sqrt(std::max(0.0, (sum2 - n * m * m) / (n - 1)));
    }
};

TrialStats run_trial(const Scenario& scenario, const PlannerParams& base, Strategy strategy,
                     int trial, std::uint64_t seed, int budget, double best_known) {
    PlannerParams params = base;
    params.strategy = strategy;
    params.seed = seed;
    params.max_iterations = budget;

    const auto t0 = std::chrono::steady_clock::now();
    const planner::PlanResult result = planner::plan(scenario, params);
    const auto t1 = std::chrono::steady_clock::now();

    TrialStats stats;
    stats.strategy = strategy;
    stats.trial = trial;
    stats.seed = seed;
    stats.solved = result.solved();
    stats.samples_to_first_solution = result.samples_to_first_solution;
    stats.final_cost = result.cost;
    stats.wall_time = std::chrono::duration<double>(t1 - t0).count();
    stats.iterations = static_cast<int>(result.log.size());

    const double band = 1.05 * best_known;
    double last = std::numeric_limits<double>::infinity();
    for (const auto& rec : result.log) {
        if (rec.c_best < last) {
            stats.cost_curve.emplace_back(rec.iteration, rec.c_best);
            last = rec.c_best;
        }
        if (!stats.time_to_within_5pct && rec.c_best <= band) {
            stats.time_to_within_5pct = rec.elapsed_s;
        }
    }
    return stats;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base_seed, Strategy strategy, int trial) {
    return sampling::RandomSource::mix(base_seed, static_cast<std::uint64_t>(strategy) + 1,
                                       static_cast<std::uint64_t>(trial) + 1);
}

double best_known_cost(const Scenario& scenario, const PlannerParams& base,
                       const CampaignConfig& config) {
    double best = std::numeric_limits<double>::infinity();
    for (Strategy s : config.strategies) {
        PlannerParams params = base;
        params.strategy = s;
        params.seed = sampling::RandomSource::mix(config.base_seed, 0x5EEDu,
                                                  static_cast<std::uint64_t>(s));
        params.max_iterations = config.budget * 10;
        const auto result = planner::plan(scenario, params);
        if (result.solved()) best = std::min(best, result.cost);
    }
    return best;
}

CampaignResult run_campaign(const Scenario& scenario, const PlannerParams& base,
                            const CampaignConfig& config) {
    if (config.n_trials < 1) throw std::invalid_argument("run_campaign: n_trials must be >= 1");
    if (config.strategies.empty()) {
        throw std::invalid_argument("run_campaign: no strategies requested");
    }

    const double best_known = best_known_cost(scenario, base, config);

    const int total = static_cast<int>(config.strategies.size()) * config.n_trials;
    CampaignResult result;
    result.trials.resize(total);

    std::atomic<int> next{0};
    const int n_strategies = static_cast<int>(config.strategies.size());
    auto worker = [&] {
        for (;;) {
            const int idx = next.fetch_add(1);
            if (idx >= total) return;
            // Execute round-robin across strategies so slow clock-speed
            // drift over a long campaign biases no strategy's timings;
            // results still land in (strategy, trial) order.
            const int s_idx = idx % n_strategies;
            const int trial = idx / n_strategies;
            const Strategy s = config.strategies[s_idx];
            result.trials[s_idx * config.n_trials + trial] =
                run_trial(scenario, base, s, trial,
                          trial_seed(config.base_seed, s, trial),
                          config.budget, best_known);
        }
    };

    int n_workers = config.workers > 0 ? config.workers
                                       : static_cast<int>(std::thread::hardware_concurrency());
    n_workers = std::max(1, std::min(n_workers, total));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    result.summary = summarize(result.trials, best_known, config.strategies);
    return result;
}

CampaignSummary summarize(const std::vector<TrialStats>& trials, double best_known,
                          const std::vector<Strategy>& strategies) {
    if (trials.empty()) throw std::invalid_argument("summarize: empty trial list");
    CampaignSummary summary;
    summary.best_known_cost = best_known;
    summary.trial_count = static_cast<int>(trials.size());

    for (Strategy s : strategies) {
        StrategySummary out;
        out.strategy = s;
        Accum samples, time5, wall, cost;
        int reached = 0;
        for (const auto& t : trials) {
            if (t.strategy != s) continue;
            ++out.n_trials;
            wall.add(t.wall_time);
            if (t.solved) {
                ++out.n_solved;
                samples.add(static_cast<double>(t.samples_to_first_solution));
                cost.add(t.final_cost);
            }
            if (t.time_to_within_5pct) {
                ++reached;
                time5.add(*t.time_to_within_5pct);
            }
        }
        out.mean_samples_to_first = samples.mean();
        out.std_samples_to_first = samples.stdev();
        out.mean_time_to_5pct = time5.mean();
        out.std_time_to_5pct = time5.stdev();
        out.mean_wall_time = wall.mean();
        out.std_wall_time = wall.stdev();
        out.mean_final_cost = cost.mean();
        out.std_final_cost = cost.stdev();
        out.convergence_rate = out.n_trials > 0 ? static_cast<double>(reached) / out.n_trials : 0.0;
        summary.strategies.push_back(out);
    }
    return summary;
}

}  // namespace searrt::bench
