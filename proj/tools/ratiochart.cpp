// ratiochart: train / monitor / run the ratio chart on CSV samples, reproduce
// the published experiments, and plot traces.
//
// Exit status: 0 completed without signal, 2 a signal was raised, 1 error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ratiochart/errors.hpp"
#include "ratiochart/reproduce.hpp"
#include "ratiochart/run_config.hpp"
#include "ratiochart/samples_io.hpp"
#include "ratiochart/state_io.hpp"
#include "ratiochart/svg_plot.hpp"
#include "ratiochart/trace_io.hpp"

namespace fs = std::filesystem;
using namespace ratiochart;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_signal = 2;

// Flag values as strings; applied after the config file so flags win.
struct FlagValues {
    std::string config;
    std::vector<std::pair<std::string, std::string>> set;
};

void add_flag(CLI::App* app, FlagValues& flags, const std::string& name, const std::string& help) {
    app->add_option_function<std::string>(
        "--" + name, [&flags, name](const std::string& v) { flags.set.emplace_back(name, v); }, help);
}

RunConfig resolve(const FlagValues& flags) {
    RunConfig cfg;
    cfg.master_seed = seed_from_environment();
    if (!flags.config.empty()) apply_config_file(cfg, flags.config);
    for (const auto& [k, v] : flags.set) cfg.set(k, v);
    cfg.validate();
    return cfg;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<Sample> read_samples(const std::optional<fs::path>& path, const char* flag) {
    if (!path) throw UsageError(std::string("missing ") + flag);
    return parse_samples(*path);
}

bool any_signal(const std::vector<ChartPoint>& trace) {
    for (const ChartPoint& p : trace) {
        if (p.signal) return true;
    }
    return false;
}

void check_shape(const std::vector<Sample>& x, const std::vector<Sample>& y, std::size_t n) {
    if (x.size() != y.size()) throw ShapeError("x and y files hold different numbers of samples");
    if (!x.empty() && (x.front().size() != n || y.front().size() != n)) {
        throw ShapeError("sample size in the files differs from n = " + std::to_string(n));
    }
}

// Trains on the first m rows; the rest (if `monitor_rest`) go to Phase II.
int train_and_monitor(const RunConfig& cfg, bool monitor_rest) {
    const auto x = read_samples(cfg.x_path, "--x");
    const auto y = read_samples(cfg.y_path, "--y");
    check_shape(x, y, cfg.chart.n);
    const std::size_t m = cfg.chart.m;
    if (x.size() < m) throw ShapeError("Phase I needs m = " + std::to_string(m) + " samples per process");
    if (!monitor_rest && x.size() > m) {
        std::cerr << "note: train uses the first " << m << " samples; " << x.size() - m << " ignored\n";
    }
    TrainingResult trained = phase1_train(std::span(x).first(m), std::span(y).first(m), cfg.chart, cfg.prior);
    std::vector<ChartPoint> trace = std::move(trained.trace);
    ChartState state = apply_configured_window(std::move(trained.state));
    if (monitor_rest) {
        for (std::size_t j = m; j < x.size(); ++j) trace.push_back(phase2_step(state, x[j], y[j]));
    }
    write_file(cfg.trace_path.value_or(cfg.out_dir / "trace.csv"), format_trace(trace));
    write_file(cfg.state_path.value_or(cfg.out_dir / "state.json"), serialize_state(state));
    std::cout << "frozen limits: LCL " << state.frozen_limits()->lcl << ", UCL " << state.frozen_limits()->ucl << "\n";
    return any_signal(trace) ? exit_signal : exit_ok;
}

int monitor(const RunConfig& cfg) {
    if (!cfg.state_path) throw UsageError("monitor needs --state");
    ChartState state = load_state(*cfg.state_path);
    const auto x = read_samples(cfg.x_path, "--x");
    const auto y = read_samples(cfg.y_path, "--y");
    check_shape(x, y, state.config().n);
    std::vector<ChartPoint> trace;
    for (std::size_t j = 0; j < x.size(); ++j) trace.push_back(phase2_step(state, x[j], y[j]));
    const fs::path trace_path = cfg.trace_path.value_or(cfg.out_dir / "trace.csv");
    // Append to an existing trace so resumed runs produce one continuous file.
    std::string content;
    if (fs::exists(trace_path)) {
        const auto previous = parse_trace(trace_path);
        std::vector<ChartPoint> all = previous;
        all.insert(all.end(), trace.begin(), trace.end());
        content = format_trace(all);
    } else {
        content = format_trace(trace);
    }
    write_file(trace_path, content);
    save_state(state, *cfg.state_path);
    return any_signal(trace) ? exit_signal : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian control chart for the ratio of two Weibull percentiles"};
    app.require_subcommand(1);
    FlagValues flags;

    const auto chart_flags = [&](CLI::App* sub) {
        sub->add_option("--config", flags.config, "key=value configuration file");
        add_flag(sub, flags, "x", "CSV samples of process x");
        add_flag(sub, flags, "y", "CSV samples of process y");
        add_flag(sub, flags, "alpha", "false-alarm risk (default 0.0027)");
        add_flag(sub, flags, "r-level", "reliability level R of the percentile (default 0.95)");
        add_flag(sub, flags, "n", "sample size (default 4)");
        add_flag(sub, flags, "m", "Phase I samples (default 10)");
        add_flag(sub, flags, "prior-xr", "anticipated x percentile (default 2.9)");
        add_flag(sub, flags, "prior-yr", "anticipated y percentile (default 3.8)");
        add_flag(sub, flags, "prior-beta", "anticipated shape (default 5)");
        add_flag(sub, flags, "interval-low", "lower shape-interval factor (default 0.5)");
        add_flag(sub, flags, "interval-high", "upper shape-interval factor (default 1.5)");
        add_flag(sub, flags, "window", "Phase II prior: all | last:<w>");
        add_flag(sub, flags, "rl-cap", "maximum Phase II steps");
        add_flag(sub, flags, "seed", "master seed (default 12345, or $RATIOCHART_SEED)");
        add_flag(sub, flags, "jobs", "worker threads");
        add_flag(sub, flags, "out", "output directory");
        add_flag(sub, flags, "state", "state document path");
        add_flag(sub, flags, "trace", "trace CSV path");
    };

    CLI::App* train = app.add_subcommand("train", "Phase I on the first m samples; writes trace and state");
    CLI::App* run = app.add_subcommand("run", "Phase I on the first m samples, Phase II on the rest");
    CLI::App* mon = app.add_subcommand("monitor", "continue Phase II from a saved state");
    CLI::App* repro = app.add_subcommand("reproduce", "rerun a published figure or table");
    CLI::App* plot = app.add_subcommand("plot", "render a trace CSV as SVG");
    for (CLI::App* sub : {train, run, mon, repro}) chart_flags(sub);

    std::string target;
    bool fast = false;
    repro->add_option("target", target, "fig1a|fig1b|fig1c|fig2|fig3|table3|ic-arl")->required();
    repro->add_flag("--fast", fast, "fewer Monte Carlo runs, wider tolerances");

    std::string plot_trace, plot_state, plot_out = "chart.svg", plot_title;
    bool overlay = false;
    plot->add_option("--trace", plot_trace, "trace CSV")->required();
    plot->add_option("--state", plot_state, "state document (needed for --overlay)");
    plot->add_flag("--overlay", overlay, "add the ratio density at the first and last Phase I steps");
    plot->add_option("--out", plot_out, "output SVG path");
    plot->add_option("--title", plot_title, "plot title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_error;
    }

    try {
        if (plot->parsed()) {
            const auto trace = parse_trace(plot_trace);
            std::vector<DensityCurve> curves;
            if (overlay) {
                if (plot_state.empty()) throw UsageError("--overlay needs --state of a trained chart");
                curves = phase1_density_curves(load_state(plot_state));
            }
            PlotOptions opts;
            if (!plot_title.empty()) opts.title = plot_title;
            write_file(plot_out, render_svg(trace, curves, opts));
            return exit_ok;
        }
        const RunConfig cfg = resolve(flags);
        if (train->parsed()) return train_and_monitor(cfg, false);
        if (run->parsed()) return train_and_monitor(cfg, true);
        if (mon->parsed()) return monitor(cfg);
        if (repro->parsed()) {
            const Report report = reproduce(target, {fast, cfg.master_seed, cfg.jobs});
            const std::string text = report.text();
            std::cout << text;
            write_file(cfg.out_dir / (report.target + "_report.txt"), text);
            for (const auto& [name, content] : report.files) write_file(cfg.out_dir / name, content);
            return exit_ok;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_error;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
