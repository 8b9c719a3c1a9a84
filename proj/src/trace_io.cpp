#include "ratiochart/trace_io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ratiochart/errors.hpp"

namespace ratiochart {

namespace {

void append_real(std::string& out, double v) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.10g", v);
    out.append(buf, static_cast<std::size_t>(len));
}

template <typename T>
bool parse_number(std::string_view token, T& value) {
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    return !token.empty() && ec == std::errc{} && ptr == token.data() + token.size();
}

}  // namespace

std::string format_trace_row(const ChartPoint& p) {
    std::string row = std::to_string(p.index);
    row += ',';
    row += to_string(p.phase);
    for (double v : {p.u_hat, p.lcl, p.ucl}) {
        row += ',';
        append_real(row, v);
    }
    row += p.signal ? ",1," : ",0,";
    append_real(row, p.beta_bar);
    return row;
}

std::string format_trace(const std::vector<ChartPoint>& points) {
    std::string out(trace_header);
    out += '\n';
    for (const ChartPoint& p : points) {
        out += format_trace_row(p);
        out += '\n';
    }
    return out;
}

std::vector<ChartPoint> parse_trace_text(std::string_view text, const std::string& source) {
    std::vector<ChartPoint> points;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != trace_header) throw ParseError(source, line_no, "expected header '" + std::string(trace_header) + "'");
            header_seen = true;
            continue;
        }
        std::array<std::string_view, 7> f;
        std::size_t count = 0;
        while (true) {
            const auto comma = line.find(',');
            if (count == f.size()) throw ParseError(source, line_no, "too many columns");
            f[count++] = line.substr(0, comma);
            if (comma == std::string_view::npos) break;
            line = line.substr(comma + 1);
        }
        if (count != f.size()) throw ParseError(source, line_no, "expected 7 columns");
        ChartPoint p;
        if (!parse_number(f[0], p.index) || p.index == 0) throw ParseError(source, line_no, "bad index");
        if (f[1] == "phase1") {
            p.phase = PointPhase::phase1;
        } else if (f[1] == "phase2") {
            p.phase = PointPhase::phase2;
        } else {
            throw ParseError(source, line_no, "phase must be phase1 or phase2");
        }
        if (!parse_number(f[2], p.u_hat) || !parse_number(f[3], p.lcl) || !parse_number(f[4], p.ucl) ||
            !parse_number(f[6], p.beta_bar)) {
            throw ParseError(source, line_no, "bad number");
        }
        if (f[5] != "0" && f[5] != "1") throw ParseError(source, line_no, "signal must be 0 or 1");
        p.signal = f[5] == "1";
        points.push_back(p);
    }
    if (!header_seen) throw ParseError(source, std::size_t{1}, "empty trace");
    return points;
}

std::vector<ChartPoint> parse_trace(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_trace_text(buf.str(), path.string());
}

std::vector<ChartPoint> round_trace(const std::vector<ChartPoint>& points) {
    return parse_trace_text(format_trace(points));
}

}  // namespace ratiochart
