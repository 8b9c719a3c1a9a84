#include "ratiochart/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "ratiochart/errors.hpp"
#include "ratiochart/experiments.hpp"
#include "ratiochart/fixtures.hpp"
#include "ratiochart/rng.hpp"

namespace ratiochart {

void ArlScenario::validate() const {
    for (double v : {x_r_out, y_r_out, x_r_in, y_r_in, beta_true}) {
        if (!(std::isfinite(v) && v > 0.0)) throw DomainError("scenario: percentiles and shape must be positive");
    }
    if (n_runs < 1) throw DomainError("scenario: n_runs must be at least 1");
    prior.validate();
    chart_config().validate();
}

ChartConfig ArlScenario::chart_config() const {
    ChartConfig config;
    config.n = n;
    config.m = m;
    config.alpha = alpha;
    config.r_level = r_level;
    config.window = PriorWindow::all();
    config.rl_cap = rl_cap;
    return config;
}

ArlScenario table3_base(std::uint64_t master_seed, std::size_t n_runs) {
    ArlScenario s;
    s.master_seed = master_seed;
    s.n_runs = n_runs;
    s.rl_cap = ooc_rl_cap;
    return s;
}

ArlScenario in_control_scenario(std::uint64_t master_seed, std::size_t n_runs) {
    ArlScenario s = table3_base(master_seed, n_runs);
    s.rl_cap = in_control_rl_cap;
    return s;
}

const std::vector<std::pair<double, double>>& table3_pairs() {
    static const std::vector<std::pair<double, double>> pairs = {
        {0.5, 0.8}, {0.5, 1.0}, {0.5, 1.2}, {0.5, 1.5}, {0.8, 0.5}, {0.8, 1.2}, {0.8, 1.5},
        {1.0, 0.5}, {1.0, 1.5}, {1.2, 0.5}, {1.2, 0.8}, {1.5, 0.5}, {1.5, 0.8}, {1.5, 1.0},
    };
    return pairs;
}

RunOutcome simulate_run(const ArlScenario& scenario, std::uint64_t replication_index) {
    Rng rng(stream_seed(scenario.master_seed, replication_index));
    const ReliabilityLevel r = scenario.r_level;
    const auto params = [&](double percentile) {
        return WeibullParams(percentile_to_scale(percentile, scenario.beta_true, r), scenario.beta_true);
    };
    // Draw order per step: the "first" sample, then the "second"; swap_streams
    // decides which process each one feeds.
    const auto draw_pair = [&](const WeibullParams& px, const WeibullParams& py, Sample& xs, Sample& ys) {
        Sample& first = scenario.swap_streams ? ys : xs;
        Sample& second = scenario.swap_streams ? xs : ys;
        weibull_sample_into(rng, scenario.swap_streams ? py : px, first);
        weibull_sample_into(rng, scenario.swap_streams ? px : py, second);
    };

    const WeibullParams x_in = params(scenario.x_r_in);
    const WeibullParams y_in = params(scenario.y_r_in);
    std::vector<Sample> x1(scenario.m, Sample(scenario.n)), y1(scenario.m, Sample(scenario.n));
    for (std::size_t k = 0; k < scenario.m; ++k) draw_pair(x_in, y_in, x1[k], y1[k]);
    TrainingResult trained = phase1_train(x1, y1, scenario.chart_config(), scenario.prior);

    const WeibullParams x_out = params(scenario.x_r_out);
    const WeibullParams y_out = params(scenario.y_r_out);
    Sample xs(scenario.n), ys(scenario.n);
    bool y_pending = false;
    // The chart pulls x then y each step; both are drawn together on the x pull.
    const SampleSource x_source = [&]() -> std::optional<Sample> {
        draw_pair(x_out, y_out, xs, ys);
        y_pending = true;
        return xs;
    };
    const SampleSource y_source = [&]() -> std::optional<Sample> {
        if (!y_pending) throw StateError("simulator: y pulled before x");
        y_pending = false;
        return ys;
    };
    const RunLengthResult rl = run_length(trained.state, x_source, y_source, false);
    return {rl.run_length, rl.steps};
}

ArlEstimate summarize_runs(const std::vector<RunOutcome>& outcomes, std::size_t rl_cap) {
    ArlEstimate est;
    est.runs_used = outcomes.size();
    double sum = 0.0, sum_sq = 0.0, sum_bound = 0.0;
    for (const RunOutcome& o : outcomes) {
        if (!o.run_length) {
            ++est.censored;
            sum_bound += static_cast<double>(rl_cap);
            continue;
        }
        const auto rl = static_cast<double>(*o.run_length);
        sum += rl;
        sum_sq += rl * rl;
        sum_bound += rl;
    }
    const auto used = static_cast<double>(est.uncensored());
    est.arl_lower_bound = outcomes.empty() ? 0.0 : sum_bound / static_cast<double>(outcomes.size());
    if (est.uncensored() == 0) {
        est.arl = std::numeric_limits<double>::quiet_NaN();
        est.sdrl = std::numeric_limits<double>::quiet_NaN();
        est.standard_error = std::numeric_limits<double>::quiet_NaN();
        return est;
    }
    est.arl = sum / used;
    est.sdrl = est.uncensored() > 1 ? std::sqrt(std::max(0.0, (sum_sq - used * est.arl * est.arl) / (used - 1.0))) : 0.0;
    est.standard_error = est.sdrl / std::sqrt(used);
    return est;
}

std::vector<RunOutcome> simulate_runs(const ArlScenario& scenario, std::size_t parallelism) {
    scenario.validate();
    std::vector<RunOutcome> outcomes(scenario.n_runs);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < scenario.n_runs; i = next.fetch_add(1)) {
            try {
                outcomes[i] = simulate_run(scenario, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(scenario.n_runs);
            }
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(parallelism, 1, scenario.n_runs);
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
    return outcomes;
}

ArlEstimate estimate_arl(const ArlScenario& scenario, std::size_t parallelism) {
    return summarize_runs(simulate_runs(scenario, parallelism), scenario.rl_cap);
}

std::vector<ScenarioRow> scenario_table(const ArlScenario& base, const std::vector<std::pair<double, double>>& pairs,
                                        std::size_t parallelism) {
    if (pairs.empty()) throw DomainError("scenario_table: no scenarios");
    std::vector<ScenarioRow> rows;
    for (const auto& [x_out, y_out] : pairs) {
        ArlScenario s = base;
        s.x_r_out = x_out;
        s.y_r_out = y_out;
        rows.push_back({x_out, y_out, x_out / y_out, estimate_arl(s, parallelism)});
    }
    return rows;
}

std::vector<GridCell> prior_sensitivity_grid(const GridInputs& inputs, const std::vector<double>& percentile_factors,
                                             const std::vector<double>& beta_factors, std::uint64_t seed) {
    if (percentile_factors.empty() || beta_factors.empty()) throw DomainError("grid: factor lists must be non-empty");
    const experiments::PhaseOneData phase1 = experiments::bootstrap_phase1(inputs.m, seed);
    const std::vector<Sample> x2 = experiments::phase2_x();
    const std::vector<Sample> y2 = experiments::phase2_y(inputs.y_shift);

    // One shared Phase II stream for every cell: the shifted rows, then resampled ones.
    std::vector<double> pool_x, pool_y;
    for (std::size_t i = 0; i < x2.size(); ++i) {
        pool_x.insert(pool_x.end(), x2[i].begin(), x2[i].end());
        pool_y.insert(pool_y.end(), y2[i].begin(), y2[i].end());
    }
    std::vector<Sample> stream_x = x2, stream_y = y2;
    Rng rng(stream_seed(seed, 1));
    const std::size_t n = x2.front().size();
    for (std::size_t k = 0; k < inputs.max_extension; ++k) {
        Sample xs(n), ys(n);
        for (double& v : xs) v = pool_x[rng.below(pool_x.size())];
        for (double& v : ys) v = pool_y[rng.below(pool_y.size())];
        stream_x.push_back(std::move(xs));
        stream_y.push_back(std::move(ys));
    }

    const PriorSpec base = fixtures::table_prior();
    std::vector<GridCell> cells;
    for (double fp : percentile_factors) {
        for (double fb : beta_factors) {
            PriorSpec prior = base;
            prior.x_r_bar = base.x_r_bar * fp;
            prior.beta_bar = base.beta_bar * fb;
            ChartConfig config = fixtures::table_config(inputs.m);
            TrainingResult trained = phase1_train(phase1.x, phase1.y, config, prior);
            GridCell cell{fp, fb, std::nullopt, *trained.state.frozen_limits()};
            std::size_t j = 0;
            const SampleSource sx = [&]() -> std::optional<Sample> {
                if (j >= stream_x.size()) return std::nullopt;
                return stream_x[j];
            };
            const SampleSource sy = [&]() -> std::optional<Sample> {
                if (j >= stream_y.size()) return std::nullopt;
                return stream_y[j++];
            };
            cell.run_length = run_length(trained.state, sx, sy, false).run_length;
            cells.push_back(cell);
        }
    }
    return cells;
}

}  // namespace ratiochart
