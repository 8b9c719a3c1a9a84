#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "ratiochart/kernels.hpp"
#include "ratiochart/rng.hpp"

using namespace ratiochart;

namespace {

std::vector<double> log_offsets(std::size_t n, std::uint64_t seed, double spread) {
    Rng rng(seed);
    std::vector<double> t(n);
    for (double& v : t) v = -spread * rng.uniform_open();
    if (n) t[0] = 0.0;
    return t;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar reference is the plain sum") {
    const auto t = log_offsets(37, 1, 3.0);
    long double want = 0;
    for (double v : t) want += std::exp(static_cast<long double>(2.5 * v));
    CHECK(oracle::rel(kernels::scalar::sum_exp(t, 2.5), static_cast<double>(want)) < 1e-14);
}

TEST_CASE("every ISA agrees with scalar on sum_exp") {
    for (kernels::Isa isa : kernels::supported_isas()) {
        kernels::force_isa(isa);
        CAPTURE(kernels::isa_name(isa));
        for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 9u, 100u, 1023u, 4096u}) {
            for (double beta : {0.3, 1.0, 3.0, 12.0, 40.0}) {
                const auto t = log_offsets(n, n * 31 + 7, 4.0);
                const double a = kernels::scalar::sum_exp(t, beta);
                const double b = kernels::sum_exp(t, beta);
                CHECK(oracle::rel(b, a) < 1e-14);
            }
        }
    }
    kernels::reset_isa();
}

TEST_CASE("sum_exp underflow region") {
    // β·t below -708 contributes nothing on every path
    std::vector<double> t = {0.0, -10.0, -100.0, -800.0, -2000.0, -1.0, -750.0, -709.5, -707.0};
    for (kernels::Isa isa : kernels::supported_isas()) {
        kernels::force_isa(isa);
        CHECK(oracle::rel(kernels::sum_exp(t, 1.0), kernels::scalar::sum_exp(t, 1.0)) < 1e-14);
        CHECK(oracle::rel(kernels::sum_exp(t, 1.0), 1.0 + std::exp(-10.0) + std::exp(-100.0) + std::exp(-1.0) +
                                                        std::exp(-707.0)) < 1e-14);
    }
    kernels::reset_isa();
}

TEST_CASE("every ISA agrees with scalar on horner") {
    Rng rng(5);
    std::vector<double> coeffs(49);
    for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] = rng.uniform_open() / std::tgamma(j + 1.0);
    for (kernels::Isa isa : kernels::supported_isas()) {
        kernels::force_isa(isa);
        for (std::size_t n : {1u, 3u, 4u, 15u, 64u}) {
            std::vector<double> x(n), a(n), b(n);
            for (double& v : x) v = 2 * rng.uniform_open() - 1;
            kernels::scalar::horner(coeffs, x, a);
            kernels::horner(coeffs, x, b);
            for (std::size_t i = 0; i < n; ++i) CHECK(oracle::rel(b[i], a[i]) < 1e-14);
        }
    }
    kernels::reset_isa();
}

TEST_CASE("dispatch picks the best supported ISA and can be forced") {
    const auto isas = kernels::supported_isas();
    REQUIRE(!isas.empty());
    CHECK(isas.front() == kernels::Isa::scalar);
    kernels::reset_isa();
    CHECK(kernels::active_isa() == isas.back());
    kernels::force_isa(kernels::Isa::scalar);
    CHECK(kernels::active_isa() == kernels::Isa::scalar);
    kernels::reset_isa();
}

}  // TEST_SUITE
