#include "ratiochart/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ratiochart/errors.hpp"

namespace ratiochart {

using nlohmann::json;

namespace {

json series_to_json(const PowerSums::SeriesState& s) {
    return {{"active", s.active}, {"center", s.center}, {"radius", s.radius}, {"retry_after", s.retry_after}};
}

json process_to_json(const ProcessHistory& h) {
    return {{"n", h.sample_size()},
            {"observations", std::vector<double>(h.observations().begin(), h.observations().end())},
            {"series", series_to_json(h.power_sums().series_state())}};
}

json snapshot_to_json(const PosteriorSnapshot& s) {
    return {{"k", s.k},         {"beta_hat_x", s.beta_hat_x}, {"beta_hat_y", s.beta_hat_y},
            {"beta_bar_k", s.beta_bar_k}, {"x_r_hat", s.x_r_hat},   {"y_r_hat", s.y_r_hat},
            {"u_hat", s.u_hat}, {"c_k", s.c_k},               {"kn", s.kn}};
}

// Field access that reports the JSON pointer of whatever is missing or mistyped.
class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    template <typename T>
    T get(const json& parent, const std::string& pointer, const char* key) const {
        const std::string path = pointer + "/" + key;
        if (!parent.is_object() || !parent.contains(key)) fail(path, "missing field");
        try {
            return parent.at(key).get<T>();
        } catch (const json::exception& e) {
            fail(path, e.what());
        }
    }

    const json& node(const json& parent, const std::string& pointer, const char* key) const {
        if (!parent.is_object() || !parent.contains(key)) fail(pointer + "/" + key, "missing field");
        return parent.at(key);
    }

    [[noreturn]] void fail(const std::string& pointer, const std::string& what) const {
        throw ParseError(source_, pointer.empty() ? std::string("/") : pointer, what);
    }

    const std::string& source() const noexcept { return source_; }

private:
    std::string source_;
};

ProcessHistory read_process(const Reader& r, const json& j, const std::string& ptr, std::size_t n) {
    const auto sample_size = r.get<std::size_t>(j, ptr, "n");
    if (sample_size != n) r.fail(ptr + "/n", "sample size differs from config");
    const auto obs = r.get<std::vector<double>>(j, ptr, "observations");
    if (obs.size() % n != 0) r.fail(ptr + "/observations", "observation count is not a multiple of n");
    ProcessHistory h(n);
    try {
        for (std::size_t i = 0; i < obs.size(); i += n) h.append(std::span<const double>(obs).subspan(i, n));
    } catch (const std::exception& e) {
        r.fail(ptr + "/observations", e.what());
    }
    const json& sj = r.node(j, ptr, "series");
    const std::string sp = ptr + "/series";
    PowerSums::SeriesState s;
    s.active = r.get<bool>(sj, sp, "active");
    s.center = r.get<double>(sj, sp, "center");
    s.radius = r.get<double>(sj, sp, "radius");
    s.retry_after = r.get<std::size_t>(sj, sp, "retry_after");
    h.restore_series(s);
    return h;
}

}  // namespace

std::string serialize_state(const ChartState& state) {
    const ChartConfig& c = state.config();
    const PriorSpec& p = state.prior();
    json doc;
    doc["format"] = state_format;
    doc["version"] = state_version;
    doc["config"] = {{"n", c.n},
                     {"m", c.m},
                     {"alpha", c.alpha},
                     {"r_level", c.r_level.value()},
                     {"window", c.window.to_string()},
                     {"rl_cap", c.rl_cap}};
    doc["prior"] = {{"x_r_bar", p.x_r_bar},
                    {"y_r_bar", p.y_r_bar},
                    {"beta_bar", p.beta_bar},
                    {"r_level", p.r_level.value()},
                    {"interval_low", p.interval_factors.low},
                    {"interval_high", p.interval_factors.high}};
    doc["phase"] = to_string(state.phase());
    doc["frozen_limits"] = state.frozen_limits() ? json{{"lcl", state.frozen_limits()->lcl},
                                                         {"ucl", state.frozen_limits()->ucl}}
                                                 : json(nullptr);
    doc["applied_window"] = state.applied_window() ? json(*state.applied_window()) : json(nullptr);
    doc["beta_window_start"] = state.beta_window_start();
    doc["processes"] = {{"x", process_to_json(state.x_history())}, {"y", process_to_json(state.y_history())}};
    json snaps = json::array();
    for (const PosteriorSnapshot& s : state.snapshots()) snaps.push_back(snapshot_to_json(s));
    doc["snapshots"] = std::move(snaps);
    return doc.dump(1) + "\n";
}

ChartState deserialize_state(std::string_view document, const std::string& source) {
    json doc;
    try {
        doc = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        throw ParseError(source, "byte " + std::to_string(e.byte), e.what());
    }
    const Reader r(source);
    if (!doc.is_object()) r.fail("", "state document must be an object");
    if (r.get<std::string>(doc, "", "format") != state_format) r.fail("/format", "not a ratiochart state document");
    const int version = r.get<int>(doc, "", "version");
    if (version != state_version) {
        r.fail("/version", "unsupported version " + std::to_string(version) + " (expected " +
                               std::to_string(state_version) + ")");
    }

    const json& cj = r.node(doc, "", "config");
    const json& pj = r.node(doc, "", "prior");
    ChartConfig config;
    PriorSpec prior{0, 0, 0};
    try {
        config.n = r.get<std::size_t>(cj, "/config", "n");
        config.m = r.get<std::size_t>(cj, "/config", "m");
        config.alpha = r.get<double>(cj, "/config", "alpha");
        config.r_level = ReliabilityLevel(r.get<double>(cj, "/config", "r_level"));
        config.window = PriorWindow::parse(r.get<std::string>(cj, "/config", "window"));
        config.rl_cap = r.get<std::size_t>(cj, "/config", "rl_cap");
        prior.x_r_bar = r.get<double>(pj, "/prior", "x_r_bar");
        prior.y_r_bar = r.get<double>(pj, "/prior", "y_r_bar");
        prior.beta_bar = r.get<double>(pj, "/prior", "beta_bar");
        prior.r_level = ReliabilityLevel(r.get<double>(pj, "/prior", "r_level"));
        prior.interval_factors.low = r.get<double>(pj, "/prior", "interval_low");
        prior.interval_factors.high = r.get<double>(pj, "/prior", "interval_high");
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        r.fail("/config", e.what());
    }

    std::optional<ChartState> built;
    try {
        built.emplace(config, prior);
    } catch (const std::exception& e) {
        r.fail("/config", e.what());
    }
    ChartState& state = *built;

    const json& procs = r.node(doc, "", "processes");
    ProcessHistory x = read_process(r, r.node(procs, "/processes", "x"), "/processes/x", config.n);
    ProcessHistory y = read_process(r, r.node(procs, "/processes", "y"), "/processes/y", config.n);
    if (x.sample_count() != y.sample_count()) r.fail("/processes", "process histories differ in length");
    state.replace_histories(std::move(x), std::move(y));

    const json& sj = r.node(doc, "", "snapshots");
    if (!sj.is_array()) r.fail("/snapshots", "expected an array");
    std::vector<PosteriorSnapshot> snaps;
    for (std::size_t i = 0; i < sj.size(); ++i) {
        const std::string ptr = "/snapshots/" + std::to_string(i);
        const json& e = sj[i];
        PosteriorSnapshot s;
        s.k = r.get<std::size_t>(e, ptr, "k");
        s.beta_hat_x = r.get<double>(e, ptr, "beta_hat_x");
        s.beta_hat_y = r.get<double>(e, ptr, "beta_hat_y");
        s.beta_bar_k = r.get<double>(e, ptr, "beta_bar_k");
        s.x_r_hat = r.get<double>(e, ptr, "x_r_hat");
        s.y_r_hat = r.get<double>(e, ptr, "y_r_hat");
        s.u_hat = r.get<double>(e, ptr, "u_hat");
        s.c_k = r.get<double>(e, ptr, "c_k");
        s.kn = r.get<std::size_t>(e, ptr, "kn");
        if (s.k != i + 1) r.fail(ptr + "/k", "snapshot indices must run 1, 2, ...");
        snaps.push_back(s);
    }
    const auto start = r.get<std::size_t>(doc, "", "beta_window_start");
    if (start > snaps.size()) r.fail("/beta_window_start", "beyond the snapshot list");
    if (state.x_history().sample_count() != snaps.size() - start) {
        r.fail("/processes", "history length does not match the retained snapshots");
    }
    state.restore_snapshots(std::move(snaps), start);

    const std::string phase = r.get<std::string>(doc, "", "phase");
    const json& fj = r.node(doc, "", "frozen_limits");
    if (phase == "monitoring") {
        if (!fj.is_object()) r.fail("/frozen_limits", "monitoring state needs frozen limits");
        const ControlLimits limits{r.get<double>(fj, "/frozen_limits", "lcl"),
                                   r.get<double>(fj, "/frozen_limits", "ucl")};
        if (!(limits.lcl > 0.0 && limits.lcl < limits.ucl)) r.fail("/frozen_limits", "expected 0 < lcl < ucl");
        state.freeze(limits);
    } else if (phase == "training") {
        if (!fj.is_null()) r.fail("/frozen_limits", "training state cannot carry frozen limits");
    } else {
        r.fail("/phase", "expected 'training' or 'monitoring'");
    }
    const json& wj = r.node(doc, "", "applied_window");
    if (!wj.is_null()) {
        const auto w = r.get<std::size_t>(doc, "", "applied_window");
        if (phase != "monitoring" || w < 1 || w > config.m) r.fail("/applied_window", "invalid window");
        state.mark_window(w);
    }
    return std::move(*built);
}

void save_state(const ChartState& state, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << serialize_state(state);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

ChartState load_state(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return deserialize_state(buf.str(), path.string());
}

}  // namespace ratiochart
