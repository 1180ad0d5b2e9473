#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "opf/core.hpp"

namespace opf {

// Patterns are bucketed by the ascent/descent direction of their first and
// last adjacent rank pairs:
//   G1 = (asc, asc)   G2 = (asc, desc)   G3 = (desc, asc)   G4 = (desc, desc)
// Length-2 patterns are assigned directly: (1,2) -> G1, (2,1) -> G2.
enum class GroupLabel : std::uint8_t { G1 = 0, G2 = 1, G3 = 2, G4 = 3 };

const char* to_string(GroupLabel g);
std::optional<GroupLabel> group_from_string(std::string_view s);

// Small fixed set of group labels.
struct GroupSet {
    std::uint8_t bits = 0;

    static GroupSet of(std::initializer_list<GroupLabel> gs) {
        GroupSet s;
        for (GroupLabel g : gs) s.add(g);
        return s;
    }
    static GroupSet all() { return GroupSet{0b1111}; }
    void add(GroupLabel g) { bits |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(g)); }
    bool contains(GroupLabel g) const {
        return bits & static_cast<std::uint8_t>(1u << static_cast<unsigned>(g));
    }
    bool operator==(const GroupSet&) const = default;
};

// Relative order of a pattern with its last / first rank dropped. These are
// the join keys of pattern fusion: w extends p on the right exactly when
// prefixop(w) == p, and extends q on the left when suffixop(w) == q.
Pattern prefixop(const Pattern& p);
Pattern suffixop(const Pattern& p);

enum class FusionCase : std::uint8_t { Case1, Case2 };

// Case1 (p_1 == q_m) yields two products; Case2 yields one.
struct FusionOutcome {
    FusionCase kase = FusionCase::Case2;
    Pattern r;
    std::optional<Pattern> h;
};

// Fuses two same-length patterns into their length-(m+1) super-patterns, or
// returns nullopt when suffixop(p) != prefixop(q). Every product w satisfies
// prefixop(w) == p and suffixop(w) == q, and the products are exactly the
// patterns with that property.
std::optional<FusionOutcome> fuse(const Pattern& p, const Pattern& q);

GroupLabel group_of(const Pattern& p);

// Group-to-group admissibility keyed by the last-pair direction encoded in
// the label: G1 -> {G1,G2}, G2 -> {G3,G4}, G3 -> {G1,G2}, G4 -> {G3,G4}.
// Exact for length-3 left operands, where the label's last pair is also the
// first step of the fusion overlap. Candidate generation uses
// admissible_suffix_groups below, which stays complete for longer patterns.
GroupSet allowed_suffix_groups(GroupLabel p_group);

// Groups whose members can possibly fuse onto p. A fusable q must open in
// the same direction as p's second adjacent pair (the first step of the
// overlap suffixop(p) == prefixop(q)), so q is drawn from {G1,G2} when that
// pair ascends and {G3,G4} when it descends. Length-2 p imposes no
// constraint: the overlap is a single rank.
GroupSet admissible_suffix_groups(const Pattern& p);

// The m+1 patterns of length m+1 obtained by appending a new final rank
// v in 1..m+1 and shifting every existing rank >= v up by one; equivalently,
// all w with prefixop(w) == p. Ordered by ascending appended rank.
std::vector<Pattern> enumerate_extensions(const Pattern& p);

enum class Priority : std::uint8_t { Max, Min, None };

// Processing order for one level of frequent records: indices into `level`
// sorted by support (descending for Max, ascending for Min, insertion order
// for None). Ties break lexicographically on ranks for determinism.
// Reordering never changes membership.
template <typename Record>
std::vector<std::size_t> build_plist(const std::vector<Record>& level, Priority mode) {
    std::vector<std::size_t> order(level.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (mode == Priority::None) return order;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (level[a].support != level[b].support) {
            return mode == Priority::Max ? level[a].support > level[b].support
                                         : level[a].support < level[b].support;
        }
        return level[a].pattern.ranks < level[b].pattern.ranks;
    });
    return order;
}

} // namespace opf
