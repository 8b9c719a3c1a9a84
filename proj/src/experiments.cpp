#include "ratiochart/experiments.hpp"

#include "ratiochart/errors.hpp"
#include "ratiochart/fixtures.hpp"
#include "ratiochart/rng.hpp"

namespace ratiochart::experiments {

PhaseOneData bootstrap_phase1(std::size_t m, std::uint64_t seed) {
    const std::size_t m0 = fixtures::in_control_samples;
    if (m < m0) throw RangeError("bootstrap Phase I needs m >= 10");
    const auto& t1 = fixtures::table1();
    const auto& t2 = fixtures::table2();
    PhaseOneData data{{t1.begin(), t1.begin() + m0}, {t2.begin(), t2.begin() + m0}};

    std::vector<double> pool_x, pool_y;
    for (std::size_t i = 0; i < m0; ++i) {
        pool_x.insert(pool_x.end(), t1[i].begin(), t1[i].end());
        pool_y.insert(pool_y.end(), t2[i].begin(), t2[i].end());
    }
    const std::size_t n = t1.front().size();
    Rng rng(stream_seed(seed, 0));
    for (std::size_t k = m0; k < m; ++k) {
        Sample xs(n), ys(n);
        for (double& v : xs) v = pool_x[rng.below(pool_x.size())];
        for (double& v : ys) v = pool_y[rng.below(pool_y.size())];
        data.x.push_back(std::move(xs));
        data.y.push_back(std::move(ys));
    }
    return data;
}

std::vector<Sample> phase2_x() {
    const auto& t1 = fixtures::table1();
    return {t1.begin() + fixtures::in_control_samples, t1.end()};
}

std::vector<Sample> phase2_y(double y_factor) {
    const auto& t2 = fixtures::table2();
    std::vector<Sample> out(t2.begin() + fixtures::in_control_samples, t2.end());
    for (Sample& s : out) {
        for (double& v : s) v *= y_factor;
    }
    return out;
}

ReplayResult replay(const PhaseOneData& phase1, const std::vector<Sample>& x2, const std::vector<Sample>& y2,
                    const ChartConfig& config, const PriorSpec& prior) {
    if (x2.size() != y2.size()) throw ShapeError("phase II streams differ in length");
    TrainingResult trained = phase1_train(phase1.x, phase1.y, config, prior);
    ReplayResult result{std::move(trained.trace), *trained.state.frozen_limits(), std::nullopt, 0,
                        apply_configured_window(std::move(trained.state))};
    for (std::size_t j = 0; j < x2.size(); ++j) {
        const ChartPoint p = phase2_step(result.state, x2[j], y2[j]);
        result.trace.push_back(p);
        ++result.phase2_steps;
        if (p.signal && !result.run_length) result.run_length = j + 1;
    }
    return result;
}

ReplayResult shifted_replay(std::size_t m, PriorWindow window, std::uint64_t seed) {
    ChartConfig config = fixtures::table_config(m);
    config.window = window;
    return replay(bootstrap_phase1(m, seed), phase2_x(), phase2_y(fixtures::phase2_y_shift), config,
                  fixtures::table_prior());
}

}  // namespace ratiochart::experiments
