#include "ratiochart/samples_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ratiochart/errors.hpp"

namespace ratiochart {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<Sample> parse_samples_text(std::string_view text, const std::string& source) {
    std::vector<Sample> samples;
    std::size_t n = 0;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = trim(text.substr(0, eol));
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        Sample sample;
        while (true) {
            const auto comma = line.find(',');
            const std::string_view token = trim(line.substr(0, comma));
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
            if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
                throw ParseError(source, line_no, "not a number: '" + std::string(token) + "'");
            }
            if (!(std::isfinite(value) && value > 0.0)) {
                throw ParseError(source, line_no, "observations must be positive, got " + std::string(token));
            }
            sample.push_back(value);
            if (comma == std::string_view::npos) break;
            line = line.substr(comma + 1);
        }
        if (n == 0) n = sample.size();
        if (sample.size() != n) {
            throw ParseError(source, line_no,
                             "expected " + std::to_string(n) + " values, found " + std::to_string(sample.size()));
        }
        samples.push_back(std::move(sample));
    }
    return samples;
}

std::vector<Sample> parse_samples(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open sample file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_samples_text(buffer.str(), path.string());
}

std::string format_samples(const std::vector<Sample>& samples) {
    std::string out;
    char buf[32];
    for (const Sample& s : samples) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i) out += ", ";
            const auto res = std::to_chars(buf, buf + sizeof buf, s[i]);
            out.append(buf, res.ptr);
        }
        out += '\n';
    }
    return out;
}

}  // namespace ratiochart
