#include "opf/fusion.hpp"

#include <string_view>

#include "opf/errors.hpp"

namespace opf {

namespace {

bool ascending(int a, int b) { return a < b; }

void require_fusable_operand(const Pattern& p) {
    if (p.length() < 2) throw InvalidInput("pattern too short: " + to_string(p));
    if (!is_permutation_pattern(p)) throw InvalidInput("not a valid pattern: " + to_string(p));
}

std::vector<int> ranks_as_values(const std::vector<int>& ranks, std::size_t from, std::size_t count) {
    std::vector<int> out(ranks.begin() + static_cast<std::ptrdiff_t>(from),
                         ranks.begin() + static_cast<std::ptrdiff_t>(from + count));
    return out;
}

Pattern rerank(const std::vector<int>& values) {
    Pattern out;
    out.ranks.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        int below = 0;
        for (int v : values) {
            if (v < values[i]) ++below;
        }
        out.ranks[i] = below + 1;
    }
    return out;
}

} // namespace

const char* to_string(GroupLabel g) {
    switch (g) {
        case GroupLabel::G1: return "G1";
        case GroupLabel::G2: return "G2";
        case GroupLabel::G3: return "G3";
        case GroupLabel::G4: return "G4";
    }
    return "?";
}

std::optional<GroupLabel> group_from_string(std::string_view s) {
    if (s == "G1") return GroupLabel::G1;
    if (s == "G2") return GroupLabel::G2;
    if (s == "G3") return GroupLabel::G3;
    if (s == "G4") return GroupLabel::G4;
    return std::nullopt;
}

Pattern prefixop(const Pattern& p) {
    require_fusable_operand(p);
    return rerank(ranks_as_values(p.ranks, 0, p.length() - 1));
}

Pattern suffixop(const Pattern& p) {
    require_fusable_operand(p);
    return rerank(ranks_as_values(p.ranks, 1, p.length() - 1));
}

std::optional<FusionOutcome> fuse(const Pattern& p, const Pattern& q) {
    require_fusable_operand(p);
    require_fusable_operand(q);
    if (p.length() != q.length()) {
        throw InvalidInput("fusion operands differ in length: " + to_string(p) + " vs " + to_string(q));
    }
    if (suffixop(p) != prefixop(q)) return std::nullopt;

    const std::size_t m = p.length();
    const int p1 = p.ranks.front();
    const int qm = q.ranks.back();
    FusionOutcome out;

    // Product built on q's interior: keep q's ranks, shifting those >= p1 up
    // to make room for the new first rank.
    auto from_q = [&](int first, int last) {
        Pattern w;
        w.ranks.resize(m + 1);
        w.ranks.front() = first;
        w.ranks.back() = last;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            w.ranks[i + 1] = q.ranks[i] < p1 ? q.ranks[i] : q.ranks[i] + 1;
        }
        return w;
    };
    // Product built on p's interior: shift ranks >= qm up for the new last rank.
    auto from_p = [&](int first, int last) {
        Pattern w;
        w.ranks.resize(m + 1);
        w.ranks.front() = first;
        w.ranks.back() = last;
        for (std::size_t i = 1; i < m; ++i) {
            w.ranks[i] = p.ranks[i] < qm ? p.ranks[i] : p.ranks[i] + 1;
        }
        return w;
    };

    if (p1 == qm) {
        out.kase = FusionCase::Case1;
        out.r = from_q(p1, qm + 1);
        out.h = from_p(p1 + 1, qm);
    } else {
        out.kase = FusionCase::Case2;
        out.r = p1 < qm ? from_q(p1, qm + 1) : from_p(p1 + 1, qm);
    }
    return out;
}

GroupLabel group_of(const Pattern& p) {
    require_fusable_operand(p);
    if (p.length() == 2) {
        return p.ranks[0] < p.ranks[1] ? GroupLabel::G1 : GroupLabel::G2;
    }
    const bool first_asc = ascending(p.ranks[0], p.ranks[1]);
    const bool last_asc = ascending(p.ranks[p.length() - 2], p.ranks[p.length() - 1]);
    if (first_asc) return last_asc ? GroupLabel::G1 : GroupLabel::G2;
    return last_asc ? GroupLabel::G3 : GroupLabel::G4;
}

GroupSet allowed_suffix_groups(GroupLabel p_group) {
    switch (p_group) {
        case GroupLabel::G1:
        case GroupLabel::G3:
            return GroupSet::of({GroupLabel::G1, GroupLabel::G2});
        case GroupLabel::G2:
        case GroupLabel::G4:
            return GroupSet::of({GroupLabel::G3, GroupLabel::G4});
    }
    return GroupSet{};
}

GroupSet admissible_suffix_groups(const Pattern& p) {
    require_fusable_operand(p);
    if (p.length() == 2) return GroupSet::all();
    return ascending(p.ranks[1], p.ranks[2])
               ? GroupSet::of({GroupLabel::G1, GroupLabel::G2})
               : GroupSet::of({GroupLabel::G3, GroupLabel::G4});
}

std::vector<Pattern> enumerate_extensions(const Pattern& p) {
    require_fusable_operand(p);
    const std::size_t m = p.length();
    std::vector<Pattern> out;
    out.reserve(m + 1);
    for (int v = 1; v <= static_cast<int>(m) + 1; ++v) {
        Pattern w;
        w.ranks.resize(m + 1);
        for (std::size_t i = 0; i < m; ++i) {
            w.ranks[i] = p.ranks[i] < v ? p.ranks[i] : p.ranks[i] + 1;
        }
        w.ranks[m] = v;
        out.push_back(std::move(w));
    }
    return out;
}

} // namespace opf
