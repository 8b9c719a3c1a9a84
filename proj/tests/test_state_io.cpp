#include <doctest.h>

#include <string>

#include "ratiochart/distributions.hpp"
#include "ratiochart/errors.hpp"
#include "ratiochart/experiments.hpp"
#include "ratiochart/fixtures.hpp"
#include "ratiochart/state_io.hpp"

using namespace ratiochart;

namespace {

TrainingResult trained(std::size_t m, PriorWindow window = PriorWindow::all()) {
    const auto d = experiments::bootstrap_phase1(m, 3);
    ChartConfig cfg = fixtures::table_config(m);
    cfg.window = window;
    return phase1_train(d.x, d.y, cfg, fixtures::table_prior());
}

}  // namespace

TEST_SUITE("state_io") {

TEST_CASE("round trip after phase I") {
    const TrainingResult t = trained(10);
    const std::string doc = serialize_state(t.state);
    const ChartState back = deserialize_state(doc);
    CHECK(serialize_state(back) == doc);
    CHECK(back.frozen_limits()->lcl == t.state.frozen_limits()->lcl);
    CHECK(back.current_beta_bar() == t.state.current_beta_bar());
    CHECK(doc.find("\"version\": 1") != std::string::npos);
}

TEST_CASE("resume mid phase II is bit-identical") {
    for (PriorWindow w : {PriorWindow::all(), PriorWindow::last(4)}) {
        TrainingResult t = trained(12, w);
        ChartState uninterrupted = apply_configured_window(t.state);
        ChartState first_half = apply_configured_window(t.state);
        const auto x = experiments::phase2_x();
        const auto y = experiments::phase2_y(1.15);
        std::vector<ChartPoint> a, b;
        for (std::size_t j = 0; j < x.size(); ++j) a.push_back(phase2_step(uninterrupted, x[j], y[j]));
        for (std::size_t j = 0; j < 6; ++j) b.push_back(phase2_step(first_half, x[j], y[j]));
        ChartState resumed = deserialize_state(serialize_state(first_half));
        for (std::size_t j = 6; j < x.size(); ++j) b.push_back(phase2_step(resumed, x[j], y[j]));
        CHECK(a == b);
    }
}

TEST_CASE("resume with the series route active is bit-identical") {
    const ReliabilityLevel r(0.95);
    const WeibullParams p(percentile_to_scale(1.0, 3.0, r), 3.0);
    Rng rng(11);
    ChartConfig cfg;
    cfg.n = 5;
    cfg.m = 20;
    std::vector<Sample> x1(20), y1(20);
    for (std::size_t k = 0; k < 20; ++k) {
        x1[k] = weibull_sample(rng, p, 5);
        y1[k] = weibull_sample(rng, p, 5);
    }
    TrainingResult t = phase1_train(x1, y1, cfg, {1.0, 1.0, 3.0});
    ChartState a = t.state;
    std::vector<Sample> x2(400), y2(400);
    for (std::size_t k = 0; k < 400; ++k) {
        x2[k] = weibull_sample(rng, p, 5);
        y2[k] = weibull_sample(rng, p, 5);
    }
    std::vector<ChartPoint> pa, pb;
    for (std::size_t k = 0; k < 260; ++k) pa.push_back(phase2_step(a, x2[k], y2[k]));
    REQUIRE(a.x_history().power_sums().series_state().active);
    ChartState b = deserialize_state(serialize_state(a));
    ChartState c = a;
    for (std::size_t k = 260; k < 400; ++k) {
        pa.push_back(phase2_step(c, x2[k], y2[k]));
        pb.push_back(phase2_step(b, x2[k], y2[k]));
    }
    CHECK(std::equal(pb.begin(), pb.end(), pa.begin() + 260));
}

TEST_CASE("malformed documents") {
    const std::string doc = serialize_state(trained(10).state);
    SUBCASE("truncated") {
        CHECK_THROWS_AS(deserialize_state(doc.substr(0, doc.size() / 2)), ParseError);
        try {
            deserialize_state(doc.substr(0, doc.size() / 2), "s.json");
        } catch (const ParseError& e) {
            CHECK(e.location().rfind("byte ", 0) == 0);
        }
    }
    SUBCASE("version mismatch") {
        std::string v2 = doc;
        v2.replace(v2.find("\"version\": 1"), 12, "\"version\": 2");
        try {
            deserialize_state(v2);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.location() == "/version");
        }
    }
    SUBCASE("missing field names its pointer") {
        std::string bad = doc;
        bad.replace(bad.find("\"beta_hat_y\""), 12, "\"beta_hat_z\"");
        try {
            deserialize_state(bad);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.location() == "/snapshots/0/beta_hat_y");
        }
    }
    SUBCASE("non-positive observation") {
        std::string bad = doc;
        const auto at = bad.find("\"observations\": [");
        bad.insert(bad.find('[', at) + 1, "-1.0, 1, 1, 1,");
        CHECK_THROWS_AS(deserialize_state(bad), ParseError);
    }
    CHECK_THROWS_AS(deserialize_state("[]"), ParseError);
    CHECK_THROWS_AS(deserialize_state(""), ParseError);
}

}  // TEST_SUITE
