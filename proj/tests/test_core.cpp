#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "opf/core.hpp"
#include "opf/errors.hpp"

using namespace opf;

namespace {

// The worked example series used throughout the test suite.
TimeSeries example_series() {
    return {{15, 32, 29, 27, 34, 33, 25, 20, 28, 23}, "demo"};
}

TimeSeries random_series(std::mt19937& gen, std::size_t n, double duplicate_share) {
    TimeSeries t;
    t.values.reserve(n);
    std::uniform_real_distribution<double> value(0.0, 100.0);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && coin(gen) < duplicate_share) {
            std::uniform_int_distribution<std::size_t> back(0, i - 1);
            t.values.push_back(t.values[back(gen)]);
        } else {
            t.values.push_back(value(gen));
        }
    }
    return t;
}

} // namespace

TEST_CASE("relative order ranks by count of smaller elements") {
    const std::vector<double> window{15, 32, 29};
    CHECK(relative_order(window) == std::vector<int>{1, 3, 2});

    const std::vector<double> single{7};
    CHECK(relative_order(single) == std::vector<int>{1});

    // Ties produce duplicate ranks, so the result matches no pattern.
    const std::vector<double> tied{5, 5, 9};
    CHECK(relative_order(tied) == std::vector<int>{1, 1, 3});
    CHECK_FALSE(is_permutation_pattern(Pattern{relative_order(tied)}));

    CHECK_THROWS_AS(relative_order(std::vector<double>{}), InvalidInput);
}

TEST_CASE("relative order of a tie-free window is a permutation") {
    std::mt19937 gen(7);
    std::uniform_real_distribution<double> value(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> window(1 + trial % 8);
        for (double& v : window) v = value(gen);
        const Pattern p{relative_order(window)};
        CHECK(is_permutation_pattern(p));
    }
}

TEST_CASE("forgetting weights follow the exponential decay") {
    const ForgettingWeights w = forgetting_weights(10, 0.1);
    const std::vector<double> expected{0.41, 0.45, 0.50, 0.55, 0.61, 0.67, 0.74, 0.82, 0.90, 1.00};
    REQUIRE(w.size() == 10);
    for (std::size_t j = 1; j <= 10; ++j) {
        CHECK(std::round(w.at1(j) * 100) / 100 == doctest::Approx(expected[j - 1]));
    }

    const ForgettingWeights single = forgetting_weights(1, 0.5);
    CHECK(single.at1(1) == 1.0);

    const ForgettingWeights steep = forgetting_weights(3, 1.0);
    CHECK(steep.at1(1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(steep.at1(2) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(steep.at1(3) == 1.0);

    CHECK_THROWS_AS(forgetting_weights(0, 0.1), InvalidConfig);
    CHECK_THROWS_AS(forgetting_weights(5, 0.0), InvalidConfig);
    CHECK_THROWS_AS(forgetting_weights(5, -1.0), InvalidConfig);
}

TEST_CASE("weights are strictly increasing and end at one") {
    for (double k : {0.01, 0.1, 1.0, 3.0}) {
        const ForgettingWeights w = forgetting_weights(50, k);
        CHECK(w.f.back() == 1.0);
        for (std::size_t j = 2; j <= w.size(); ++j) {
            CHECK(w.at1(j - 1) < w.at1(j));
            CHECK(w.at1(j - 1) > 0.0);
        }
    }
}

TEST_CASE("fsup sums the weights at the end positions") {
    const ForgettingWeights w = forgetting_weights(10, 0.1);
    CHECK(fsup({3, 6, 10}, w) == doctest::Approx(2.17).epsilon(0.0025));
    CHECK(fsup({}, w) == 0.0);
    CHECK(fsup({4, 7, 8}, w) == doctest::Approx(2.11).epsilon(0.0025));
    CHECK_THROWS_AS(fsup({11}, w), InternalError);
    CHECK_THROWS_AS(fsup({0}, w), InternalError);
}

TEST_CASE("fsup never exceeds the occurrence count") {
    std::mt19937 gen(11);
    const ForgettingWeights w = forgetting_weights(40, 0.25);
    std::uniform_int_distribution<int> pos(1, 40);
    for (int trial = 0; trial < 100; ++trial) {
        OccurrenceList ends;
        for (int i = 0; i < trial % 12; ++i) ends.push_back(pos(gen));
        std::sort(ends.begin(), ends.end());
        ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
        CHECK(fsup(ends, w) <= static_cast<double>(ends.size()));
    }
}

TEST_CASE("oracle finds the worked-example occurrences") {
    const TimeSeries t = example_series();
    CHECK(oracle_occurrences(t, Pattern{{1, 3, 2}}) == OccurrenceList{3, 6, 10});
    CHECK(oracle_occurrences(t, Pattern{{2, 1}}) == OccurrenceList{3, 4, 6, 7, 8, 10});
    CHECK(oracle_occurrences(t, Pattern{{1, 2}}) == OccurrenceList{2, 5, 9});

    const TimeSeries rising{{1, 2, 3}, "rising"};
    CHECK(oracle_occurrences(rising, Pattern{{2, 1}}).empty());

    // A pattern longer than the series has no occurrences.
    CHECK(oracle_occurrences(rising, Pattern{{1, 2, 3, 4}}).empty());
}

TEST_CASE("length-2 oracle equals the ascent/descent positions") {
    std::mt19937 gen(23);
    for (int trial = 0; trial < 30; ++trial) {
        const TimeSeries t = random_series(gen, 30 + trial, 0.15);
        OccurrenceList ups;
        OccurrenceList downs;
        for (std::size_t j = 2; j <= t.size(); ++j) {
            if (t.at1(j - 1) < t.at1(j)) ups.push_back(static_cast<int>(j));
            if (t.at1(j - 1) > t.at1(j)) downs.push_back(static_cast<int>(j));
        }
        CHECK(oracle_occurrences(t, Pattern{{1, 2}}) == ups);
        CHECK(oracle_occurrences(t, Pattern{{2, 1}}) == downs);
    }
}

TEST_CASE("every tie-free window matches exactly one pattern") {
    std::mt19937 gen(31);
    for (std::size_t m : {2, 3, 4}) {
        const TimeSeries t = random_series(gen, 60, 0.2);
        // all patterns of length m via ranks of index permutations
        std::vector<int> base(m);
        for (std::size_t i = 0; i < m; ++i) base[i] = static_cast<int>(i) + 1;
        std::size_t total = 0;
        std::sort(base.begin(), base.end());
        do {
            total += oracle_occurrences(t, Pattern{base}).size();
        } while (std::next_permutation(base.begin(), base.end()));

        std::size_t tie_free = 0;
        for (std::size_t j = m; j <= t.size(); ++j) {
            std::span<const double> window(t.values.data() + (j - m), m);
            if (is_permutation_pattern(Pattern{relative_order(window)})) ++tie_free;
        }
        CHECK(total == tie_free);
    }
}

TEST_CASE("series validation rejects empty and non-finite input") {
    CHECK_THROWS_AS(validate_series(TimeSeries{{}, "empty"}), InvalidInput);
    CHECK_THROWS_AS(validate_series(TimeSeries{{1.0, std::nan("")}, "nan"}), InvalidInput);
    CHECK_NOTHROW(validate_series(TimeSeries{{1.0}, "one"}));
}

TEST_CASE("pattern ordering is by length, then ranks") {
    CHECK(pattern_less(Pattern{{2, 1}}, Pattern{{1, 2, 3}}));
    CHECK(pattern_less(Pattern{{1, 2, 3}}, Pattern{{1, 3, 2}}));
    CHECK_FALSE(pattern_less(Pattern{{1, 3, 2}}, Pattern{{1, 3, 2}}));
}
