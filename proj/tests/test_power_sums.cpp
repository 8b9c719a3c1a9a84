#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "ratiochart/distributions.hpp"
#include "ratiochart/power_sums.hpp"

using namespace ratiochart;

namespace {

std::vector<double> draws(std::size_t count, std::uint64_t seed, double scale = 1.0, double shape = 3.0) {
    Rng rng(seed);
    return weibull_sample(rng, WeibullParams(scale, shape), count);
}

long double brute_log_sum(const std::vector<double>& x, double beta) {
    long double s = 0;
    for (double v : x) s += std::pow(static_cast<long double>(v), static_cast<long double>(beta));
    return std::log(s);
}

}  // namespace

TEST_SUITE("power_sums") {

TEST_CASE("empty set") {
    PowerSums p;
    CHECK(p.count() == 0);
    CHECK(std::isinf(p.log_sum(2.0)));
    CHECK(p.log_sum(2.0) < 0);
}

TEST_CASE("direct route matches brute force") {
    const auto x = draws(300, 4, 2.0, 1.5);
    PowerSums p;
    for (double v : x) p.append(std::log(v));
    for (double beta : {0.2, 1.0, 4.0, 17.0}) {
        CHECK(oracle::rel(p.log_sum(beta), static_cast<double>(brute_log_sum(x, beta))) < 1e-13);
    }
}

TEST_CASE("series route matches direct route within its bound") {
    const auto x = draws(5000, 8);
    PowerSums p;
    for (std::size_t i = 0; i < x.size(); ++i) {
        p.append(std::log(x[i]));
        if (i % 250 == 249) p.prepare(2.0, 4.5);
    }
    REQUIRE(p.series_state().active);
    for (double beta = 2.0; beta <= 4.5; beta += 0.05) {
        // relative error of the sum itself is <= 1e-14, so of its log even less
        const double s = p.log_sum(beta);
        const double d = p.log_sum_direct(beta);
        CHECK(std::abs(s - d) < 1e-13 * std::max(1.0, std::abs(d)));
    }
    // outside the prepared range falls back to the direct route
    CHECK(p.log_sum(9.0) == p.log_sum_direct(9.0));
}

TEST_CASE("series stays exact after a new maximum") {
    auto x = draws(2000, 9);
    PowerSums p;
    for (double v : x) p.append(std::log(v));
    p.prepare(2.5, 3.5);
    REQUIRE(p.series_state().active);
    p.append(std::log(50.0));
    x.push_back(50.0);
    CHECK(oracle::rel(p.log_sum(3.0), static_cast<double>(brute_log_sum(x, 3.0))) < 1e-13);
}

TEST_CASE("restored series state is bit-identical") {
    const auto x = draws(3000, 10);
    PowerSums grown;
    for (std::size_t i = 0; i < x.size(); ++i) {
        grown.append(std::log(x[i]));
        if (i > 1100 && i % 7 == 0) grown.prepare(1.5 + 0.0001 * static_cast<double>(i % 13), 4.0);
    }
    PowerSums rebuilt;
    for (double v : x) rebuilt.append(std::log(v));
    rebuilt.restore_series(grown.series_state());
    for (double beta : {1.6, 2.2, 3.0, 3.9}) CHECK(grown.log_sum(beta) == rebuilt.log_sum(beta));
    std::vector<double> betas = {1.7, 2.0, 2.5, 3.3, 3.8}, a(5), b(5);
    grown.log_sum(betas, a);
    rebuilt.log_sum(betas, b);
    CHECK(a == b);
}

TEST_CASE("small sets never activate the series") {
    PowerSums p;
    for (double v : draws(100, 3)) p.append(std::log(v));
    p.prepare(1.0, 5.0);
    CHECK_FALSE(p.series_state().active);
}

}  // TEST_SUITE
