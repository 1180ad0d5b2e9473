#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace opf {

// Positions are 1-based throughout: an occurrence of a length-m pattern is
// identified by the index j of its last element, m <= j <= n.

struct TimeSeries {
    std::vector<double> values;
    std::string id;

    std::size_t size() const { return values.size(); }
    double at1(std::size_t j) const { return values[j - 1]; }
};

// Throws InvalidInput unless n >= 1 and every value is finite.
void validate_series(const TimeSeries& t);

// A permutation of 1..m describing the relative order of m consecutive
// values; the shape of a trend.
struct Pattern {
    std::vector<int> ranks;

    std::size_t length() const { return ranks.size(); }
    bool operator==(const Pattern&) const = default;
};

bool is_permutation_pattern(const Pattern& p);

// Orders patterns by length first, then lexicographically on ranks.
bool pattern_less(const Pattern& a, const Pattern& b);

struct PatternLess {
    bool operator()(const Pattern& a, const Pattern& b) const { return pattern_less(a, b); }
};

std::string to_string(const Pattern& p);

// Strictly increasing end positions of a pattern's occurrences (1-based).
using OccurrenceList = std::vector<int>;

// Per-position decay f_j = exp(-k * (n - j)): f_n == 1 and older positions
// fall off exponentially with forgetting factor k.
struct ForgettingWeights {
    std::vector<double> f;
    double k = 0.0;

    std::size_t size() const { return f.size(); }
    double at1(std::size_t j) const { return f[j - 1]; }
};

ForgettingWeights forgetting_weights(std::size_t n, double k);

// Rank sequence of a window: rank(v) = 1 + |{u in window : u < v}|.
// Duplicate values yield duplicate ranks, so a window containing ties never
// equals any Pattern. Comparisons are exact; no epsilon is applied.
std::vector<int> relative_order(std::span<const double> window);

// Forgetting-weighted support: sum of f_j over the end positions.
double fsup(const OccurrenceList& ends, const ForgettingWeights& weights);

// Ground-truth occurrence scan, O(n * m). Every faster path in this project
// is tested against it. A pattern longer than the series has no occurrences.
OccurrenceList oracle_occurrences(const TimeSeries& t, const Pattern& p);

} // namespace opf
