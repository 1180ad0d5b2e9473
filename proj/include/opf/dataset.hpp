#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "opf/core.hpp"

namespace opf {

// Dataset layout: one series per line, comma-separated decimal values
// (plain or scientific notation, no locale separators). Blank lines are
// ignored. A line may start with an `id=<label>` token; otherwise the series
// is named s1, s2, ... by position. Throws ParseError on malformed input
// and requires at least one series with only finite values.
std::vector<TimeSeries> parse_dataset(std::istream& in, std::string_view source_name);

std::vector<TimeSeries> load_dataset(const std::string& path);

// End-to-end self-concatenation, for scalability sweeps.
TimeSeries replicate(const TimeSeries& t, int times);

} // namespace opf
