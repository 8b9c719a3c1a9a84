#include "ratiochart/run_config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ratiochart/errors.hpp"

namespace ratiochart {

namespace {

constexpr std::array<std::string_view, 18> known_keys = {
    "x",      "y",        "state",    "trace",      "out",          "n",             "m",    "alpha", "r_level",
    "window", "rl_cap",   "prior_xr", "prior_yr",   "prior_beta",   "interval_low",  "interval_high", "seed",
    "jobs"};

std::string canonical(std::string_view key) {
    std::string k(key);
    std::replace(k.begin(), k.end(), '-', '_');
    return k;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_value(std::string_view key, std::string_view value) {
    T out{};
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
        throw UsageError("invalid value '" + std::string(value) + "' for " + std::string(key));
    }
    return out;
}

}  // namespace

void RunConfig::set(std::string_view key_in, std::string_view value) {
    const std::string key = canonical(key_in);
    if (key == "x") {
        x_path = std::string(value);
    } else if (key == "y") {
        y_path = std::string(value);
    } else if (key == "state") {
        state_path = std::string(value);
    } else if (key == "trace") {
        trace_path = std::string(value);
    } else if (key == "out") {
        out_dir = std::string(value);
    } else if (key == "n") {
        chart.n = parse_value<std::size_t>(key, value);
    } else if (key == "m") {
        chart.m = parse_value<std::size_t>(key, value);
    } else if (key == "alpha") {
        chart.alpha = parse_value<double>(key, value);
    } else if (key == "r_level") {
        try {
            chart.r_level = ReliabilityLevel(parse_value<double>(key, value));
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    } else if (key == "window") {
        chart.window = PriorWindow::parse(value);
    } else if (key == "rl_cap") {
        chart.rl_cap = parse_value<std::size_t>(key, value);
    } else if (key == "prior_xr") {
        prior.x_r_bar = parse_value<double>(key, value);
    } else if (key == "prior_yr") {
        prior.y_r_bar = parse_value<double>(key, value);
    } else if (key == "prior_beta") {
        prior.beta_bar = parse_value<double>(key, value);
    } else if (key == "interval_low") {
        prior.interval_factors.low = parse_value<double>(key, value);
    } else if (key == "interval_high") {
        prior.interval_factors.high = parse_value<double>(key, value);
    } else if (key == "seed") {
        master_seed = parse_value<std::uint64_t>(key, value);
    } else if (key == "jobs") {
        jobs = parse_value<std::size_t>(key, value);
        if (jobs == 0) throw UsageError("jobs must be at least 1");
    } else {
        throw UsageError("unknown configuration key '" + std::string(key_in) + "'");
    }
}

void RunConfig::validate() {
    prior.r_level = chart.r_level;
    try {
        chart.validate();
        prior.validate();
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

std::uint64_t seed_from_environment() {
    const char* env = std::getenv(std::string(seed_env_var).c_str());
    if (env == nullptr || *env == '\0') return default_seed;
    return parse_value<std::uint64_t>(seed_env_var, env);
}

std::map<std::string, std::string> parse_config_text(std::string_view text, const std::string& source) {
    std::map<std::string, std::string> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        const std::string_view line = trim(text.substr(0, eol));
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(source, line_no, "expected key=value");
        const std::string key = canonical(trim(line.substr(0, eq)));
        if (std::find(known_keys.begin(), known_keys.end(), key) == known_keys.end()) {
            throw ParseError(source, line_no, "unknown key '" + key + "'");
        }
        if (out.count(key)) throw ParseError(source, line_no, "duplicate key '" + key + "'");
        out[key] = std::string(trim(line.substr(eq + 1)));
    }
    return out;
}

void apply_config_file(RunConfig& base, const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    for (const auto& [key, value] : parse_config_text(buf.str(), path.string())) {
        try {
            base.set(key, value);
        } catch (const UsageError& e) {
            throw ParseError(path.string(), key, e.what());
        }
    }
}

}  // namespace ratiochart
