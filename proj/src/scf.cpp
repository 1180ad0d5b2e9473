#include "opf/scf.hpp"

#include <algorithm>

#include "opf/errors.hpp"

namespace opf {

void PatternRecord::reset_level_state() {
    pre_live.assign(occ.size(), 1);
    pre_count = static_cast<int>(occ.size());
    suf.clear();
    suf.insert(occ.begin(), occ.end());
    sufsup = support;
    prefix_pruned = false;
    suffix_pruned = false;
}

std::vector<int> PatternRecord::pre_positions() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < occ.size(); ++i) {
        if (pre_live[i]) out.push_back(occ[i]);
    }
    return out;
}

std::vector<int> PatternRecord::suf_positions() const {
    std::vector<int> out(suf.begin(), suf.end());
    std::sort(out.begin(), out.end());
    return out;
}

PatternRecord make_record(Pattern pattern, OccurrenceList occ, double support) {
    PatternRecord rec;
    rec.group = group_of(pattern);
    rec.pattern = std::move(pattern);
    rec.occ = std::move(occ);
    rec.support = support;
    rec.reset_level_state();
    return rec;
}

ScfResult scf_fuse(PatternRecord& p, PatternRecord& q, const FusionOutcome& products,
                   const TimeSeries& t, const ForgettingWeights& f) {
    if (p.pattern.length() != q.pattern.length()) {
        throw InvalidInput("scf_fuse operands differ in length");
    }
    const int m = static_cast<int>(p.pattern.length());
    const int n = static_cast<int>(t.size());

    ScfResult out;
    out.r = make_record(products.r, {}, 0.0);
    if (products.kase == FusionCase::Case1) {
        if (!products.h) throw InternalError("Case 1 fusion without second product");
        out.h = make_record(*products.h, {}, 0.0);
    }

    for (std::size_t idx = 0; idx < p.occ.size(); ++idx) {
        if (!p.pre_live[idx]) continue;
        ++out.probes;
        const int i = p.occ[idx];
        const int j = i + 1;
        if (j > n || !q.suf.erase(j)) continue;

        // Pair consumed.
        p.pre_live[idx] = 0;
        --p.pre_count;
        const double fj = f.at1(static_cast<std::size_t>(j));
        q.sufsup -= fj;

        if (products.kase == FusionCase::Case2) {
            out.r.occ.push_back(j);
            out.r.support += fj;
            continue;
        }
        // Case 1: the overlap leaves first vs last value undecided.
        const int first = j - m;
        if (first < 1) throw InternalError("scf window start out of range");
        const double t_first = t.at1(static_cast<std::size_t>(first));
        const double t_last = t.at1(static_cast<std::size_t>(j));
        if (t_first < t_last) {
            out.r.occ.push_back(j);
            out.r.support += fj;
        } else if (t_first > t_last) {
            out.h->occ.push_back(j);
            out.h->support += fj;
        }
        // t_first == t_last: the window has a tie, j ends no super-pattern.
    }

    out.r.reset_level_state();
    if (out.h) out.h->reset_level_state();
    return out;
}

ScfResult scf_fuse(PatternRecord& p, PatternRecord& q, const TimeSeries& t,
                   const ForgettingWeights& f) {
    auto products = fuse(p.pattern, q.pattern);
    if (!products) {
        throw InvalidInput("patterns cannot fuse: " + to_string(p.pattern) + " (+) " +
                           to_string(q.pattern));
    }
    return scf_fuse(p, q, *products, t, f);
}

bool check_prefix_prune(PatternRecord& p, double minsup) {
    if (static_cast<double>(p.pre_count) < minsup) {
        p.prefix_pruned = true;
        return true;
    }
    return false;
}

bool check_suffix_prune(PatternRecord& q, double minsup) {
    if (q.sufsup < minsup) {
        q.suffix_pruned = true;
        return true;
    }
    return false;
}

bool check_suffix_prune_by_count(PatternRecord& q, double minsup) {
    if (static_cast<double>(q.suf.size()) < minsup) {
        q.suffix_pruned = true;
        return true;
    }
    return false;
}

std::pair<OccurrenceList, double> match_support(const TimeSeries& t, const Pattern& p,
                                                const ForgettingWeights& f) {
    OccurrenceList occ = oracle_occurrences(t, p);
    double support = fsup(occ, f);
    return {std::move(occ), support};
}

} // namespace opf
