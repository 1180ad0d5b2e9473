#include "opf/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "opf/errors.hpp"

namespace opf {

void validate_series(const TimeSeries& t) {
    if (t.values.empty()) {
        throw InvalidInput("time series '" + t.id + "' is empty");
    }
    for (std::size_t i = 0; i < t.values.size(); ++i) {
        if (!std::isfinite(t.values[i])) {
            std::ostringstream os;
            os << "time series '" << t.id << "' has a non-finite value at position " << (i + 1);
            throw InvalidInput(os.str());
        }
    }
}

bool is_permutation_pattern(const Pattern& p) {
    const std::size_t m = p.ranks.size();
    if (m == 0) return false;
    std::vector<char> seen(m + 1, 0);
    for (int r : p.ranks) {
        if (r < 1 || static_cast<std::size_t>(r) > m || seen[r]) return false;
        seen[r] = 1;
    }
    return true;
}

bool pattern_less(const Pattern& a, const Pattern& b) {
    if (a.ranks.size() != b.ranks.size()) return a.ranks.size() < b.ranks.size();
    return a.ranks < b.ranks;
}

std::string to_string(const Pattern& p) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.ranks.size(); ++i) {
        if (i) os << ',';
        os << p.ranks[i];
    }
    os << ')';
    return os.str();
}

ForgettingWeights forgetting_weights(std::size_t n, double k) {
    if (n < 1) throw InvalidConfig("forgetting weights need n >= 1");
    if (!(k > 0.0) || !std::isfinite(k)) throw InvalidConfig("forgetting factor k must be positive");
    ForgettingWeights w;
    w.k = k;
    w.f.resize(n);
    for (std::size_t j = 1; j <= n; ++j) {
        w.f[j - 1] = std::exp(-k * static_cast<double>(n - j));
    }
    return w;
}

std::vector<int> relative_order(std::span<const double> window) {
    if (window.empty()) throw InvalidInput("relative order of an empty window");
    std::vector<int> ranks(window.size());
    for (std::size_t i = 0; i < window.size(); ++i) {
        int below = 0;
        for (std::size_t j = 0; j < window.size(); ++j) {
            if (window[j] < window[i]) ++below;
        }
        ranks[i] = below + 1;
    }
    return ranks;
}

double fsup(const OccurrenceList& ends, const ForgettingWeights& weights) {
    double total = 0.0;
    for (int j : ends) {
        if (j < 1 || static_cast<std::size_t>(j) > weights.size()) {
            throw InternalError("occurrence end position out of range");
        }
        total += weights.at1(static_cast<std::size_t>(j));
    }
    return total;
}

OccurrenceList oracle_occurrences(const TimeSeries& t, const Pattern& p) {
    if (!is_permutation_pattern(p)) throw InvalidInput("not a valid pattern: " + to_string(p));
    const std::size_t m = p.length();
    const std::size_t n = t.size();
    OccurrenceList ends;
    if (m > n) return ends;
    for (std::size_t j = m; j <= n; ++j) {
        std::span<const double> window(t.values.data() + (j - m), m);
        if (relative_order(window) == p.ranks) {
            ends.push_back(static_cast<int>(j));
        }
    }
    return ends;
}

} // namespace opf
