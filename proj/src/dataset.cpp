#include "opf/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "opf/errors.hpp"

namespace opf {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_value(std::string_view token, std::string_view source, std::size_t line_no) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        std::ostringstream os;
        os << source << ":" << line_no << ": bad value '" << std::string(token) << "'";
        throw ParseError(os.str());
    }
    return value;
}

} // namespace

std::vector<TimeSeries> parse_dataset(std::istream& in, std::string_view source_name) {
    std::vector<TimeSeries> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view rest = trim(line);
        if (rest.empty()) continue;

        TimeSeries series;
        bool first_token = true;
        while (!rest.empty()) {
            const std::size_t comma = rest.find(',');
            std::string_view token = trim(rest.substr(0, comma));
            rest = comma == std::string_view::npos ? std::string_view{}
                                                   : rest.substr(comma + 1);
            if (first_token && token.starts_with("id=")) {
                series.id = std::string(token.substr(3));
                first_token = false;
                continue;
            }
            first_token = false;
            series.values.push_back(parse_value(token, source_name, line_no));
        }
        if (series.id.empty()) {
            series.id = "s" + std::to_string(out.size() + 1);
        }
        if (series.values.empty()) {
            std::ostringstream os;
            os << source_name << ":" << line_no << ": series '" << series.id << "' has no values";
            throw ParseError(os.str());
        }
        out.push_back(std::move(series));
    }
    if (out.empty()) {
        throw ParseError(std::string(source_name) + ": no series found");
    }
    return out;
}

std::vector<TimeSeries> load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open dataset file: " + path);
    return parse_dataset(in, path);
}

TimeSeries replicate(const TimeSeries& t, int times) {
    if (times < 1) throw InvalidConfig("replicate factor must be >= 1");
    TimeSeries out;
    out.id = t.id;
    out.values.reserve(t.values.size() * static_cast<std::size_t>(times));
    for (int r = 0; r < times; ++r) {
        out.values.insert(out.values.end(), t.values.begin(), t.values.end());
    }
    return out;
}

} // namespace opf
