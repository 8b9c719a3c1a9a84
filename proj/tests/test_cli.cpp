#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ratiochart/experiments.hpp"
#include "ratiochart/fixtures.hpp"
#include "ratiochart/samples_io.hpp"
#include "ratiochart/trace_io.hpp"

using namespace ratiochart;
namespace fs = std::filesystem;

namespace {

const fs::path scratch = fs::path(RATIOCHART_SCRATCH_DIR) / "cli";

int cli(const std::string& args) {
    const std::string cmd = std::string("\"") + RATIOCHART_CLI + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

// Lumber data with rows 11-25 of y scaled by 1.15, first `rows` rows.
void write_shifted(const fs::path& dir, std::size_t rows) {
    fs::create_directories(dir);
    std::vector<Sample> x(fixtures::table1().begin(), fixtures::table1().begin() + rows);
    std::vector<Sample> y(fixtures::table2().begin(), fixtures::table2().begin() + rows);
    for (std::size_t i = 10; i < rows; ++i)
        for (double& v : y[i]) v *= 1.15;
    write(dir / "x.csv", format_samples(x));
    write(dir / "y.csv", format_samples(y));
}

std::string io_args(const fs::path& dir) {
    return "--x \"" + (dir / "x.csv").string() + "\" --y \"" + (dir / "y.csv").string() + "\" --out \"" +
           dir.string() + "\"";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("run signals at the same point as the library") {
    const fs::path dir = scratch / "run";
    write_shifted(dir, 25);
    CHECK(cli("run " + io_args(dir)) == 2);
    const auto trace = parse_trace(dir / "trace.csv");
    const auto expected = experiments::shifted_replay(10, PriorWindow::all(), 1);
    CHECK(trace == round_trace(expected.trace));
    REQUIRE(expected.run_length);
    std::size_t first = 0;
    for (const auto& p : trace)
        if (p.signal && !first) first = p.index;
    CHECK(first == 10 + *expected.run_length);
    CHECK(fs::exists(dir / "state.json"));
}

TEST_CASE("empty phase II") {
    const fs::path dir = scratch / "train_only";
    write_shifted(dir, 10);
    CHECK(cli("run " + io_args(dir)) == 0);
    CHECK(parse_trace(dir / "trace.csv").size() == 10);
}

TEST_CASE("train then monitor matches a single run") {
    const fs::path whole = scratch / "whole";
    write_shifted(whole, 25);
    REQUIRE(cli("run " + io_args(whole)) == 2);

    const fs::path split = scratch / "split";
    fs::remove_all(split);
    write_shifted(split, 25);
    const auto x = parse_samples(split / "x.csv");
    const auto y = parse_samples(split / "y.csv");
    write(split / "x.csv", format_samples({x.begin(), x.begin() + 10}));
    write(split / "y.csv", format_samples({y.begin(), y.begin() + 10}));
    REQUIRE(cli("train " + io_args(split)) == 0);
    write(split / "x.csv", format_samples({x.begin() + 10, x.end()}));
    write(split / "y.csv", format_samples({y.begin() + 10, y.end()}));
    CHECK(cli("monitor --state \"" + (split / "state.json").string() + "\" " + io_args(split)) == 2);
    CHECK(read(split / "trace.csv") == read(whole / "trace.csv"));
    CHECK(read(split / "state.json") == read(whole / "state.json"));
}

TEST_CASE("bad input exits with 1") {
    const fs::path dir = scratch / "bad";
    fs::create_directories(dir);
    write(dir / "x.csv", "1,2,3,4\n0,2,3,4\n");
    write(dir / "y.csv", "1,2,3,4\n1,2,3,4\n");
    CHECK(cli("run " + io_args(dir)) == 1);
    CHECK(cli("run --x \"" + (dir / "missing.csv").string() + "\"") == 1);
    CHECK(cli("run " + io_args(scratch / "run") + " --window last:0") == 1);
    CHECK(cli("monitor " + io_args(scratch / "run")) == 1);
    CHECK(cli("reproduce fig9") == 1);
    CHECK(cli("frobnicate") == 1);
}

TEST_CASE("plot") {
    const fs::path dir = scratch / "run";
    write_shifted(dir, 25);
    REQUIRE(cli("run " + io_args(dir)) == 2);
    const std::string svg = (dir / "chart.svg").string();
    CHECK(cli("plot --trace \"" + (dir / "trace.csv").string() + "\" --state \"" + (dir / "state.json").string() +
              "\" --overlay --out \"" + svg + "\"") == 0);
    CHECK(read(svg).find("</svg>") != std::string::npos);
    CHECK(cli("plot --trace \"" + (dir / "trace.csv").string() + "\" --overlay --out \"" + svg + "\"") == 1);
}

}  // TEST_SUITE
