#include <doctest.h>

#include <algorithm>

#include "ratiochart/chart.hpp"
#include "ratiochart/errors.hpp"
#include "ratiochart/experiments.hpp"
#include "ratiochart/fixtures.hpp"

using namespace ratiochart;

namespace {

std::vector<Sample> rows(const std::vector<Sample>& t, std::size_t from, std::size_t to) {
    return {t.begin() + from, t.begin() + to};
}

TrainingResult train_tables(std::size_t m = 10) {
    return phase1_train(rows(fixtures::table1(), 0, m), rows(fixtures::table2(), 0, m), fixtures::table_config(m),
                        fixtures::table_prior());
}

}  // namespace

TEST_SUITE("chart") {

TEST_CASE("phase I on the lumber tables") {
    const TrainingResult t = train_tables();
    REQUIRE(t.trace.size() == 10);
    for (const ChartPoint& p : t.trace) {
        CHECK(p.phase == PointPhase::phase1);
        CHECK_FALSE(p.signal);
    }
    CHECK(t.state.phase() == ChartPhase::monitoring);
    const ControlLimits f = *t.state.frozen_limits();
    CHECK(f.lcl == t.trace.back().lcl);
    CHECK(f.ucl == t.trace.back().ucl);
    CHECK(f.width() > 0.13);
    CHECK(f.width() < 0.18);
    // anticipated ratio 2.9/3.8 sits inside the limits
    CHECK_FALSE(f.signals(2.9 / 3.8));
}

TEST_CASE("shifted replay signals on the lower side near step 12") {
    const auto r = experiments::shifted_replay(10, PriorWindow::all(), 1);
    REQUIRE(r.run_length);
    CHECK(*r.run_length >= 10);
    CHECK(*r.run_length <= 14);
    const ChartPoint& first = r.trace[10 + *r.run_length - 1];
    CHECK(first.signal);
    CHECK(first.u_hat < first.lcl);
    for (std::size_t i = 10; i < r.trace.size(); ++i) {
        CHECK(r.trace[i].phase == PointPhase::phase2);
        CHECK(r.trace[i].index == i + 1);
        CHECK(r.trace[i].lcl == r.frozen.lcl);
        CHECK(r.trace[i].ucl == r.frozen.ucl);
        CHECK(r.trace[i].signal == r.frozen.signals(r.trace[i].u_hat));
    }
}

TEST_CASE("unshifted phase II stays quiet") {
    const auto r = experiments::replay(experiments::bootstrap_phase1(10, 1), experiments::phase2_x(),
                                       experiments::phase2_y(1.0), fixtures::table_config(10),
                                       fixtures::table_prior());
    CHECK(r.phase2_steps == 15);
    CHECK_FALSE(r.run_length);
}

TEST_CASE("replays are deterministic") {
    const auto a = experiments::shifted_replay(20, PriorWindow::last(10), 77);
    const auto b = experiments::shifted_replay(20, PriorWindow::last(10), 77);
    CHECK(a.trace == b.trace);
}

TEST_CASE("bootstrap extensions are nested") {
    const auto a = experiments::bootstrap_phase1(20, 5);
    const auto b = experiments::bootstrap_phase1(30, 5);
    CHECK(std::equal(a.x.begin(), a.x.end(), b.x.begin()));
    CHECK(std::equal(a.y.begin(), a.y.end(), b.y.begin()));
    CHECK(a.x[3] == fixtures::table1()[3]);
    CHECK_THROWS_AS(experiments::bootstrap_phase1(9, 5), RangeError);
}

TEST_CASE("prior window") {
    const TrainingResult t = train_tables();
    SUBCASE("w = m keeps everything and marks the window") {
        const ChartState s = apply_prior_window(t.state, 10);
        CHECK(s.applied_window() == std::optional<std::size_t>(10));
        CHECK(s.x_history().sample_count() == 10);
        CHECK(s.current_beta_bar() == t.state.current_beta_bar());
    }
    SUBCASE("w < m keeps the last w samples and their beta estimates") {
        const ChartState s = apply_prior_window(t.state, 4);
        CHECK(s.x_history().sample_count() == 4);
        CHECK(std::equal(s.x_history().sample(0).begin(), s.x_history().sample(0).end(),
                         fixtures::table1()[6].begin()));
        CHECK(s.beta_snapshots().size() == 4);
        CHECK(s.current_beta_bar() == doctest::Approx(beta_bar(t.state.snapshots().subspan(6))).epsilon(1e-15));
        CHECK(s.frozen_limits()->lcl == t.state.frozen_limits()->lcl);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(apply_prior_window(t.state, 0), RangeError);
        CHECK_THROWS_AS(apply_prior_window(t.state, 11), RangeError);
        CHECK_THROWS_AS(apply_prior_window(apply_prior_window(t.state, 5), 5), StateError);
        CHECK_THROWS_AS(apply_prior_window(ChartState(fixtures::table_config(10), fixtures::table_prior()), 5),
                        StateError);
    }
}

TEST_CASE("window responsiveness") {
    // RL(last 10) <= RL(all) at m = 20 over ten seeds
    int hits = 0;
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        const auto w = experiments::shifted_replay(20, PriorWindow::last(10), seed).run_length;
        const auto a = experiments::shifted_replay(20, PriorWindow::all(), seed).run_length;
        const double rw = w ? double(*w) : 1e9, ra = a ? double(*a) : 1e9;
        hits += rw <= ra;
    }
    CHECK(hits >= 9);
}

TEST_CASE("training effect on the frozen width") {
    int ordered = 0;
    for (std::uint64_t seed = 200; seed < 210; ++seed) {
        const double w10 = experiments::shifted_replay(10, PriorWindow::all(), seed).frozen.width();
        const double w20 = experiments::shifted_replay(20, PriorWindow::all(), seed).frozen.width();
        const double w30 = experiments::shifted_replay(30, PriorWindow::all(), seed).frozen.width();
        ordered += w30 <= w20 && w20 <= w10;
    }
    CHECK(ordered >= 6);
}

TEST_CASE("state machine errors") {
    ChartState fresh(fixtures::table_config(10), fixtures::table_prior());
    const Sample four = {1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(phase2_step(fresh, four, four), StateError);
    TrainingResult t = train_tables();
    CHECK_THROWS_AS(phase2_step(t.state, Sample{1.0, 2.0}, four), ShapeError);
    CHECK_THROWS_AS(phase2_step(t.state, four, Sample{1.0, 2.0, -3.0, 4.0}), DomainError);
    CHECK(t.state.snapshots().size() == 10);
    CHECK_THROWS_AS(phase1_train(rows(fixtures::table1(), 0, 9), rows(fixtures::table2(), 0, 9),
                                 fixtures::table_config(10), fixtures::table_prior()),
                    ShapeError);
    PriorSpec mismatched = fixtures::table_prior();
    mismatched.r_level = ReliabilityLevel(0.9);
    CHECK_THROWS_AS(ChartState(fixtures::table_config(10), mismatched), DomainError);
    CHECK_THROWS_AS(PriorWindow::parse("last:0"), UsageError);
    CHECK(PriorWindow::parse("last:7") == PriorWindow::last(7));
    CHECK(PriorWindow::parse("7") == PriorWindow::last(7));
    CHECK(PriorWindow::parse("all") == PriorWindow::all());
}

TEST_CASE("run length") {
    SUBCASE("first point already out") {
        TrainingResult t = train_tables();
        const SampleSource x = [] { return std::optional<Sample>(Sample{3.0, 3.0, 3.0, 3.0}); };
        const SampleSource y = [] { return std::optional<Sample>(Sample{40.0, 40.0, 40.0, 40.0}); };
        const RunLengthResult r = run_length(t.state, x, y);
        CHECK(r.run_length == std::optional<std::size_t>(1));
        CHECK(r.points.size() == 1);
    }
    SUBCASE("exhausted stream is censored") {
        TrainingResult t = train_tables();
        int left = 3;
        const SampleSource x = [&]() -> std::optional<Sample> {
            if (left-- <= 0) return std::nullopt;
            return fixtures::table1()[10];
        };
        const SampleSource y = [] { return std::optional<Sample>(fixtures::table2()[10]); };
        const RunLengthResult r = run_length(t.state, x, y);
        CHECK(r.censored());
        CHECK(r.exhausted);
        CHECK(r.steps == 3);
    }
    SUBCASE("cap") {
        ChartConfig cfg = fixtures::table_config(10);
        cfg.rl_cap = 4;
        TrainingResult t = phase1_train(rows(fixtures::table1(), 0, 10), rows(fixtures::table2(), 0, 10), cfg,
                                        fixtures::table_prior());
        std::size_t j = 10;
        const SampleSource x = [&] { return std::optional<Sample>(fixtures::table1()[j]); };
        const SampleSource y = [&] { return std::optional<Sample>(fixtures::table2()[j++]); };
        const RunLengthResult r = run_length(t.state, x, y, false);
        CHECK(r.censored());
        CHECK_FALSE(r.exhausted);
        CHECK(r.steps == 4);
        CHECK(r.points.empty());
    }
}

}  // TEST_SUITE
