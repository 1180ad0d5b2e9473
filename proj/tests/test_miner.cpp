#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "opf/errors.hpp"
#include "opf/miner.hpp"

using namespace opf;

namespace {

TimeSeries example_series() {
    return {{15, 32, 29, 27, 34, 33, 25, 20, 28, 23}, "demo"};
}

MiningConfig example_config(const std::string& preset = "opf-miner") {
    MiningConfig c = MiningConfig::preset(preset);
    c.minsup = 1.5;
    c.k = KSpec::absolute(0.1);
    return c;
}

TimeSeries random_series(std::mt19937& gen, std::size_t n, double duplicate_share) {
    TimeSeries t;
    t.id = "rand";
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

TEST_CASE("level-2 scan on the worked example") {
    const TimeSeries t = example_series();
    const ForgettingWeights f = forgetting_weights(10, 0.1);
    const auto level = mine_level2(t, f, 1.5);
    REQUIRE(level.size() == 2);
    CHECK(level[0].pattern == Pattern{{1, 2}});
    CHECK(level[0].group == GroupLabel::G1);
    CHECK(level[0].support == doctest::Approx(1.96).epsilon(0.0025));
    CHECK(level[1].pattern == Pattern{{2, 1}});
    CHECK(level[1].group == GroupLabel::G2);
    CHECK(level[1].support == doctest::Approx(4.28).epsilon(0.0025));
}

TEST_CASE("level-2 edge cases") {
    const ForgettingWeights f5 = forgetting_weights(5, 0.2);
    const TimeSeries rising{{1, 2, 3, 4, 5}, "rising"};
    const auto only_up = mine_level2(rising, f5, 0.001);
    REQUIRE(only_up.size() == 1);
    CHECK(only_up[0].pattern == Pattern{{1, 2}});

    const TimeSeries flat{{3, 3, 3, 3, 3}, "flat"};
    CHECK(mine_level2(flat, f5, 0.001).empty());
}

TEST_CASE("full mining run reproduces the worked example") {
    const MiningResult result = mine(example_series(), example_config());

    REQUIRE(result.levels.size() == 2);  // F_2 and F_3; F_4 is empty
    CHECK(result.total_patterns() == 5);

    const struct {
        Pattern pattern;
        double support;
        OccurrenceList occ;
        GroupLabel group;
    } expected[] = {
        {Pattern{{1, 2}}, 1.96, {2, 5, 9}, GroupLabel::G1},
        {Pattern{{2, 1}}, 4.28, {3, 4, 6, 7, 8, 10}, GroupLabel::G2},
        {Pattern{{3, 2, 1}}, 2.11, {4, 7, 8}, GroupLabel::G4},
        {Pattern{{2, 1, 3}}, 1.51, {5, 9}, GroupLabel::G3},
        {Pattern{{1, 3, 2}}, 2.17, {3, 6, 10}, GroupLabel::G2},
    };
    for (const auto& e : expected) {
        const PatternRecord* rec = result.find(e.pattern);
        REQUIRE_MESSAGE(rec != nullptr, to_string(e.pattern));
        CHECK(rec->support == doctest::Approx(e.support).epsilon(0.0025));
        CHECK(rec->occ == e.occ);
        CHECK(rec->group == e.group);
    }
}

TEST_CASE("pruned run skips exactly the two narrated fusions") {
    MiningConfig config = example_config();
    config.record_candidates = true;
    const MiningResult pruned = mine(example_series(), config);

    REQUIRE(pruned.candidates_by_level.size() == 2);
    const auto& level4 = pruned.candidates_by_level[1];
    CHECK(level4.size() == 6);
    CHECK(std::count(level4.begin(), level4.end(), Pattern{{1, 3, 2, 4}}) == 0);
    CHECK(std::count(level4.begin(), level4.end(), Pattern{{4, 3, 2, 1}}) == 0);

    bool saw_prefix = false;
    bool saw_suffix = false;
    for (const PruneEvent& e : pruned.prune_events) {
        if (e.kind == PruneEvent::Kind::Prefix && e.pattern == Pattern{{1, 3, 2}}) {
            saw_prefix = true;
            CHECK(e.value == 1.0);
        }
        if (e.kind == PruneEvent::Kind::Suffix && e.pattern == Pattern{{3, 2, 1}}) {
            saw_suffix = true;
            CHECK(e.value == doctest::Approx(0.82).epsilon(0.01));
        }
    }
    CHECK(saw_prefix);
    CHECK(saw_suffix);
}

TEST_CASE("unpruned run evaluates the full level-4 candidate set") {
    MiningConfig config = example_config("opf-noprune");
    config.record_candidates = true;
    const MiningResult result = mine(example_series(), config);

    REQUIRE(result.candidates_by_level.size() == 2);
    const std::set<std::vector<int>> got = [&] {
        std::set<std::vector<int>> s;
        for (const Pattern& p : result.candidates_by_level[1]) s.insert(p.ranks);
        return s;
    }();
    const std::set<std::vector<int>> expected{
        {1, 4, 3, 2}, {2, 4, 3, 1}, {1, 3, 2, 4}, {4, 3, 2, 1},
        {3, 2, 1, 4}, {4, 2, 1, 3}, {2, 1, 4, 3}, {3, 1, 4, 2}};
    CHECK(got == expected);
    CHECK(result.candidates_by_level[1].size() == 8);
}

TEST_CASE("every preset mines the same frequent patterns") {
    std::mt19937 gen(123);
    const double k_coeffs[]{1.0 / 7.0, 1.0, 7.0};
    for (int trial = 0; trial < 25; ++trial) {
        const TimeSeries t = random_series(gen, 20 + (trial * 7) % 120, 0.05);
        std::uniform_real_distribution<double> minsup_dist(1.0, 10.0);
        const double minsup = minsup_dist(gen);

        MiningConfig base = MiningConfig::preset("opf-miner");
        base.minsup = minsup;
        base.k = KSpec::coefficient(k_coeffs[trial % 3]);
        const auto reference = mine(t, base).support_map();

        for (const std::string& preset : preset_names()) {
            MiningConfig config = MiningConfig::preset(preset);
            config.minsup = minsup;
            config.k = base.k;
            const auto got = mine(t, config).support_map();
            REQUIRE_MESSAGE(got.size() == reference.size(), preset);
            auto it = reference.begin();
            for (const auto& [pattern, support] : got) {
                CHECK(pattern == it->first);
                CHECK(support == doctest::Approx(it->second).epsilon(1e-12));
                ++it;
            }
        }
    }
}

TEST_CASE("scf occurrence lists are oracle-exact during full runs") {
    std::mt19937 gen(321);
    for (int trial = 0; trial < 15; ++trial) {
        const TimeSeries t = random_series(gen, 30 + trial * 9, 0.05);
        MiningConfig config = MiningConfig::preset("opf-miner");
        config.minsup = 1.0 + trial % 4;
        config.k = KSpec::coefficient(1.0);
        const MiningResult result = mine(t, config);
        const ForgettingWeights f = forgetting_weights(t.size(), result.k);
        for (const auto& level : result.levels) {
            // a position ends at most one occurrence among same-length patterns
            std::set<int> seen;
            for (const PatternRecord& rec : level) {
                CHECK(rec.occ == oracle_occurrences(t, rec.pattern));
                CHECK(rec.support == doctest::Approx(fsup(rec.occ, f)).epsilon(1e-12));
                for (int j : rec.occ) CHECK(seen.insert(j).second);
            }
        }
    }
}

TEST_CASE("metrics are deterministic and pruning only reduces work") {
    const TimeSeries t = example_series();
    const MiningResult a = mine(t, example_config());
    const MiningResult b = mine(t, example_config());
    CHECK(a.metrics.counters_equal(b.metrics));

    const MiningResult unpruned = mine(t, example_config("opf-noprune"));
    CHECK(a.metrics.candidates <= unpruned.metrics.candidates);
    // the worked example shows strict savings
    CHECK(a.metrics.candidates < unpruned.metrics.candidates);

    const MiningResult plain = mine(t, example_config("opf-nogroup"));
    CHECK(a.metrics.fusions < plain.metrics.fusions);

    const MiningResult enumerated = mine(t, example_config("opf-enum"));
    CHECK(unpruned.metrics.candidates <= enumerated.metrics.candidates);
    CHECK(enumerated.metrics.fusions == 0);
}

TEST_CASE("configuration validation") {
    MiningConfig config = example_config();
    config.minsup = 0.0;
    CHECK_THROWS_AS(mine(example_series(), config), InvalidConfig);
    config.minsup = -2.0;
    CHECK_THROWS_AS(mine(example_series(), config), InvalidConfig);
    config = example_config();
    config.k = KSpec::absolute(0.0);
    CHECK_THROWS_AS(mine(example_series(), config), InvalidConfig);
    CHECK_THROWS_AS(MiningConfig::preset("no-such-preset"), InvalidConfig);
}

TEST_CASE("an unreachable threshold yields an empty result") {
    MiningConfig config = example_config();
    config.minsup = 100.0;  // above the total weight mass
    const MiningResult result = mine(example_series(), config);
    CHECK(result.levels.empty());
    CHECK(result.total_patterns() == 0);
}

TEST_CASE("max length caps the deepest level") {
    MiningConfig config = example_config();
    config.max_length = 2;
    const MiningResult result = mine(example_series(), config);
    CHECK(result.levels.size() == 1);
    CHECK(result.total_patterns() == 2);
    CHECK(result.metrics.fusions == 0);
}

TEST_CASE("short series mine to an empty result") {
    MiningConfig config = example_config();
    CHECK(mine(TimeSeries{{5.0}, "one"}, config).total_patterns() == 0);
    CHECK(mine(TimeSeries{{}, "none"}, config).total_patterns() == 0);
}

TEST_CASE("frequent pattern lengths are contiguous and bounded by n") {
    std::mt19937 gen(55);
    for (int trial = 0; trial < 10; ++trial) {
        const TimeSeries t = random_series(gen, 25, 0.0);
        MiningConfig config = MiningConfig::preset("opf-miner");
        config.minsup = 0.5;
        config.k = KSpec::coefficient(1.0);
        const MiningResult result = mine(t, config);
        for (std::size_t i = 0; i < result.levels.size(); ++i) {
            CHECK_FALSE(result.levels[i].empty());
            for (const PatternRecord& rec : result.levels[i]) {
                CHECK(rec.pattern.length() == i + 2);
                CHECK(rec.pattern.length() <= t.size());
            }
        }
    }
}

TEST_CASE("mine_dataset matches the sequential loop and is order-independent") {
    std::mt19937 gen(77);
    std::vector<TimeSeries> dataset;
    for (int i = 0; i < 12; ++i) {
        dataset.push_back(random_series(gen, 40 + i * 5, 0.05));
        dataset.back().id = "s" + std::to_string(i + 1);
    }
    MiningConfig config = MiningConfig::preset("opf-miner");
    config.minsup = 2.0;
    config.k = KSpec::coefficient(1.0);

    const auto sequential = mine_dataset(dataset, config, 1);
    const auto parallel = mine_dataset(dataset, config, 4);
    REQUIRE(sequential.size() == parallel.size());
    for (std::size_t i = 0; i < sequential.size(); ++i) {
        CHECK(sequential[i].series_id == parallel[i].series_id);
        CHECK(sequential[i].support_map() == parallel[i].support_map());
        CHECK(sequential[i].metrics.counters_equal(parallel[i].metrics));
    }

    // identical copies of one series give identical results
    const std::vector<TimeSeries> copies{dataset[0], dataset[0], dataset[0]};
    const auto repeated = mine_dataset(copies, config, 3);
    CHECK(repeated[0].support_map() == repeated[1].support_map());
    CHECK(repeated[1].support_map() == repeated[2].support_map());

    CHECK_THROWS_AS(mine_dataset({}, config, 1), InvalidInput);
}

TEST_CASE("coefficient k resolves per series") {
    MiningConfig config = MiningConfig::preset("opf-miner");
    config.minsup = 0.5;
    config.k = KSpec::coefficient(2.0);
    const TimeSeries t = example_series();
    const MiningResult result = mine(t, config);
    CHECK(result.k == doctest::Approx(0.2).epsilon(1e-12));

    config.k = KSpec::absolute(0.35);
    CHECK(mine(t, config).k == doctest::Approx(0.35).epsilon(1e-12));
}
