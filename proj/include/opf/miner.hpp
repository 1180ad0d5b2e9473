#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "opf/core.hpp"
#include "opf/fusion.hpp"
#include "opf/scf.hpp"

namespace opf {

enum class CandidateGen : std::uint8_t { GpFusion, PlainFusion, Enumeration };
enum class SupportMethod : std::uint8_t { Scf, NaiveMatch };
enum class PruneMode : std::uint8_t { Both, PrefixOnly, SuffixOnly, SameSuffix, None };

// Forgetting factor, either as a coefficient c (k = c / n, so each series
// gets a factor scaled to its own length) or as an absolute value.
struct KSpec {
    enum class Mode : std::uint8_t { Coefficient, Absolute };
    Mode mode = Mode::Coefficient;
    double value = 1.0;

    static KSpec coefficient(double c) { return {Mode::Coefficient, c}; }
    static KSpec absolute(double k) { return {Mode::Absolute, k}; }
    double resolve(std::size_t n) const;
    bool operator==(const KSpec&) const = default;
};

struct MiningConfig {
    double minsup = 0.0;
    KSpec k;
    CandidateGen candidate_gen = CandidateGen::GpFusion;
    Priority priority = Priority::Max;
    SupportMethod support = SupportMethod::Scf;
    PruneMode prune = PruneMode::Both;
    std::size_t max_length = 0;  // 0 = unlimited; mining stops when a level is empty

    // Capture evaluated candidate patterns and prune events in the result.
    // Test/diagnostic aid, off by default.
    bool record_candidates = false;

    std::string preset_name;  // informational; set by preset()

    // Named variant presets; throws InvalidConfig on an unknown name.
    // minsup and k are left for the caller to fill in.
    static MiningConfig preset(std::string_view name);

    void validate() const;
};

std::vector<std::string> preset_names();

struct Metrics {
    // Super-patterns whose support was evaluated (length >= 3).
    long long candidates = 0;
    // Ordered (p, q) pairs submitted to the suffix/prefix equality test.
    long long fusions = 0;
    // Elementary support probes: pre_p iterations (scf), windows scanned
    // (naive match), or window extension checks (enumeration).
    long long support_calcs = 0;
    double wall_ms = 0.0;

    bool counters_equal(const Metrics& other) const {
        return candidates == other.candidates && fusions == other.fusions &&
               support_calcs == other.support_calcs;
    }
};

struct PruneEvent {
    enum class Kind : std::uint8_t { Prefix, Suffix, SuffixCount };
    int level = 0;  // length of the pruned operand
    Pattern pattern;
    Kind kind = Kind::Prefix;
    double value = 0.0;  // |pre| at a prefix prune, sufsup or |suf| at a suffix prune
};

struct MiningResult {
    MiningConfig config;
    std::string series_id;
    std::size_t n = 0;
    double k = 0.0;  // resolved forgetting factor
    // levels[i] holds F_{i+2}; levels are contiguous and the last is nonempty.
    std::vector<std::vector<PatternRecord>> levels;
    Metrics metrics;
    // Populated when config.record_candidates: candidates_by_level[i] holds
    // the evaluated candidate patterns of length i+3, in evaluation order.
    std::vector<std::vector<Pattern>> candidates_by_level;
    std::vector<PruneEvent> prune_events;

    std::size_t total_patterns() const;
    const PatternRecord* find(const Pattern& p) const;
    std::map<Pattern, double, PatternLess> support_map() const;
};

// Single scan for the two length-2 patterns: strict ascents end occurrences
// of (1,2), strict descents of (2,1); equal neighbors end neither. Only
// frequent records are returned, labeled G1 and G2.
std::vector<PatternRecord> mine_level2(const TimeSeries& t, const ForgettingWeights& f,
                                       double minsup);

// Runs the level-wise mining loop over one series with the configured
// candidate generation, priority, support method, and pruning strategies.
// A series shorter than 2 yields an empty result.
MiningResult mine(const TimeSeries& t, const MiningConfig& config);

// Mines each series independently (k resolved per series in coefficient
// mode). threads = 0 picks hardware concurrency; results are positioned by
// input order regardless of completion order.
std::vector<MiningResult> mine_dataset(const std::vector<TimeSeries>& series,
                                       const MiningConfig& config, unsigned threads = 1);

const char* to_string(CandidateGen v);
const char* to_string(SupportMethod v);
const char* to_string(PruneMode v);
const char* to_string(Priority v);

} // namespace opf
