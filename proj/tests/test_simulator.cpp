#include <doctest.h>

#include <cmath>

#include "ratiochart/errors.hpp"
#include "ratiochart/experiments.hpp"
#include "ratiochart/simulator.hpp"

using namespace ratiochart;

TEST_SUITE("simulator") {

TEST_CASE("replication is a pure function of seed and index") {
    ArlScenario s = table3_base(9, 10);
    s.x_r_out = 0.5;
    const RunOutcome a = simulate_run(s, 3);
    const RunOutcome b = simulate_run(s, 3);
    CHECK(a.run_length == b.run_length);
    REQUIRE(a.run_length);
    CHECK(*a.run_length >= 1);
}

TEST_CASE("estimates do not depend on parallelism") {
    ArlScenario s = table3_base(12, 48);
    s.x_r_out = 0.5;
    s.y_r_out = 1.2;
    const auto one = simulate_runs(s, 1);
    const auto eight = simulate_runs(s, 8);
    REQUIRE(one.size() == eight.size());
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i].run_length == eight[i].run_length);
    const ArlEstimate a = summarize_runs(one, s.rl_cap), b = estimate_arl(s, 8);
    CHECK(a.arl == b.arl);
    CHECK(a.sdrl == b.sdrl);
}

TEST_CASE("summary statistics") {
    std::vector<RunOutcome> o = {{3, 3}, {5, 5}, {std::nullopt, 100}, {4, 4}};
    const ArlEstimate e = summarize_runs(o, 100);
    CHECK(e.runs_used == 4);
    CHECK(e.censored == 1);
    CHECK(e.arl == 4.0);
    CHECK(e.sdrl == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(e.standard_error == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(e.arl_lower_bound == doctest::Approx(28.0).epsilon(1e-15));
    const ArlEstimate same = summarize_runs({{7, 7}, {7, 7}, {7, 7}}, 100);
    CHECK(same.sdrl == 0.0);
    const ArlEstimate none = summarize_runs({{std::nullopt, 100}}, 100);
    CHECK(std::isnan(none.arl));
    CHECK(none.arl_lower_bound == 100.0);
}

TEST_CASE("swapping the processes mirrors the run lengths") {
    ArlScenario a = table3_base(31, 200);
    a.x_r_out = 0.5;
    a.y_r_out = 1.0;
    ArlScenario b = a;
    b.x_r_out = 1.0;
    b.y_r_out = 0.5;
    b.swap_streams = true;
    const ArlEstimate ea = estimate_arl(a, 4), eb = estimate_arl(b, 4);
    const double se = std::sqrt(ea.standard_error * ea.standard_error + eb.standard_error * eb.standard_error);
    CHECK(std::abs(ea.arl - eb.arl) <= 3 * se);
}

TEST_CASE("larger shifts are caught sooner") {
    ArlScenario s = table3_base(5, 150);
    const auto rows = scenario_table(s, {{0.5, 0.8}, {0.5, 1.0}, {0.5, 1.5}}, 4);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].ratio == doctest::Approx(0.625));
    CHECK(rows[0].estimate.arl > rows[1].estimate.arl);
    CHECK(rows[1].estimate.arl > rows[2].estimate.arl);
    for (const auto& r : rows) {
        CHECK(r.estimate.arl >= 1.0);
        CHECK(r.estimate.censored <= r.estimate.runs_used);
    }
    CHECK(scenario_table(s, {{1.5, 0.5}}, 1).size() == 1);
    CHECK_THROWS_AS(scenario_table(s, {}, 1), DomainError);
}

TEST_CASE("scenario validation") {
    ArlScenario s = table3_base(1, 0);
    CHECK_THROWS_AS(estimate_arl(s, 1), DomainError);
    s.n_runs = 1;
    s.x_r_out = -1;
    CHECK_THROWS_AS(estimate_arl(s, 1), DomainError);
    CHECK(table3_pairs().size() == 14);
}

TEST_CASE("prior grid centre reproduces the baseline replay") {
    const auto cells = prior_sensitivity_grid(GridInputs{}, {1.0}, {1.0}, 12345);
    REQUIRE(cells.size() == 1);
    const auto base = experiments::shifted_replay(10, PriorWindow::all(), 12345);
    CHECK(cells[0].run_length == base.run_length);
    CHECK(cells[0].limits.lcl == base.frozen.lcl);
    CHECK_THROWS_AS(prior_sensitivity_grid(GridInputs{}, {}, {1.0}, 1), DomainError);
}

}  // TEST_SUITE
