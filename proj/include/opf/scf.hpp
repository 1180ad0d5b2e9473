#pragma once

#include <optional>
#include <unordered_set>
#include <utility>
#include <vector>

#include "opf/core.hpp"
#include "opf/fusion.hpp"

namespace opf {

// Working record for one frequent pattern during a mining level.
//
// pattern / occ / support are fixed once the pattern is mined. The rest is
// consumable state, reset at the start of every level: pre and suf both
// start as the occurrence set, sufsup as the support. scf_fuse eats matched
// (i, i+1) pairs out of pre_p and suf_q, so the sets can only shrink and
// sufsup always equals the weight mass still sitting in suf.
struct PatternRecord {
    Pattern pattern;
    GroupLabel group = GroupLabel::G1;
    OccurrenceList occ;
    double support = 0.0;

    std::vector<char> pre_live;  // parallel to occ; pre = { occ[i] : pre_live[i] }
    int pre_count = 0;
    std::unordered_set<int> suf;
    double sufsup = 0.0;
    bool prefix_pruned = false;
    bool suffix_pruned = false;

    void reset_level_state();
    int pre_size() const { return pre_count; }
    int suf_size() const { return static_cast<int>(suf.size()); }

    // Remaining positions in ascending order; for tests and traces.
    std::vector<int> pre_positions() const;
    std::vector<int> suf_positions() const;
};

PatternRecord make_record(Pattern pattern, OccurrenceList occ, double support);

struct ScfResult {
    PatternRecord r;
    std::optional<PatternRecord> h;
    long long probes = 0;  // pre_p iterations, one suffix-membership test each
};

// Derives the occurrence lists of the products of p (+) q from the remaining
// prefix positions of p and suffix positions of q.
//
// For each i still in pre_p with j = i + 1 in suf_q, the pair is consumed
// (i leaves pre_p, j leaves suf_q, f_j leaves sufsup_q) and j becomes an
// occurrence of a product: of r when the combined window rises from first to
// last value, of h when it falls (Case 1), always of r in Case 2. Equal
// first/last values match neither product; the pair is consumed anyway since
// such a j can never end a super-pattern occurrence.
//
// Iteration is in ascending position order, so product lists come out sorted.
ScfResult scf_fuse(PatternRecord& p, PatternRecord& q, const FusionOutcome& products,
                   const TimeSeries& t, const ForgettingWeights& f);

// Overload that runs the suffix/prefix test itself; throws InvalidInput when
// the operands cannot fuse.
ScfResult scf_fuse(PatternRecord& p, PatternRecord& q, const TimeSeries& t,
                   const ForgettingWeights& f);

// Prefix pruning: with fewer than minsup prefix positions left, p cannot
// seed a frequent super-pattern (each weight is at most one). Sets the flag
// and returns true when the rule fires; p is then skipped as a left operand
// for the rest of the level.
bool check_prefix_prune(PatternRecord& p, double minsup);

// Suffix pruning: once the weight mass left in suf_q drops below minsup, no
// super-pattern ending in q can reach the threshold. Skips q as a right
// operand for the rest of the level.
bool check_suffix_prune(PatternRecord& q, double minsup);

// Count-based suffix rule (|suf_q| < minsup), the weaker mirror of the
// prefix rule; used by the same-suffix pruning variant.
bool check_suffix_prune_by_count(PatternRecord& q, double minsup);

// Full-scan support computation: oracle occurrences plus weighted support.
std::pair<OccurrenceList, double> match_support(const TimeSeries& t, const Pattern& p,
                                                const ForgettingWeights& f);

} // namespace opf
