#include "opf/miner.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "opf/errors.hpp"

namespace opf {

double KSpec::resolve(std::size_t n) const {
    if (n < 1) throw InvalidConfig("cannot resolve forgetting factor for an empty series");
    return mode == Mode::Coefficient ? value / static_cast<double>(n) : value;
}

MiningConfig MiningConfig::preset(std::string_view name) {
    MiningConfig c;
    c.preset_name = std::string(name);
    if (name == "opf-miner") {
        c.candidate_gen = CandidateGen::GpFusion;
        c.priority = Priority::Max;
        c.support = SupportMethod::Scf;
        c.prune = PruneMode::Both;
    } else if (name == "opf-enum") {
        c.candidate_gen = CandidateGen::Enumeration;
        c.priority = Priority::Max;
        c.support = SupportMethod::Scf;
        c.prune = PruneMode::Both;
    } else if (name == "opf-nogroup") {
        c.candidate_gen = CandidateGen::PlainFusion;
        c.priority = Priority::Max;
        c.support = SupportMethod::Scf;
        c.prune = PruneMode::Both;
    } else if (name == "opf-nopriority") {
        c.candidate_gen = CandidateGen::GpFusion;
        c.priority = Priority::None;
        c.support = SupportMethod::Scf;
        c.prune = PruneMode::Both;
    } else if (name == "opf-minpriority") {
        c.candidate_gen = CandidateGen::GpFusion;
        c.priority = Priority::Min;
        c.support = SupportMethod::Scf;
        c.prune = PruneMode::Both;
    } else if (name == "mat-opf") {
        c.candidate_gen = CandidateGen::PlainFusion;
        c.priority = Priority::Max;
        c.support = SupportMethod::NaiveMatch;
        c.prune = PruneMode::None;
    } else if (name == "opf-same") {
        c.candidate_gen = CandidateGen::GpFusion;
        c.priority = Priority::Max;
        c.support = SupportMethod::Scf;
        c.prune = PruneMode::SameSuffix;
    } else if (name == "opf-nopre") {
        c.candidate_gen = CandidateGen::GpFusion;
        c.priority = Priority::Max;
        c.support = SupportMethod::Scf;
        c.prune = PruneMode::SuffixOnly;
    } else if (name == "opf-nosuf") {
        c.candidate_gen = CandidateGen::GpFusion;
        c.priority = Priority::Max;
        c.support = SupportMethod::Scf;
        c.prune = PruneMode::PrefixOnly;
    } else if (name == "opf-noprune") {
        c.candidate_gen = CandidateGen::GpFusion;
        c.priority = Priority::Max;
        c.support = SupportMethod::Scf;
        c.prune = PruneMode::None;
    } else if (name == "efo-opf") {
        c.candidate_gen = CandidateGen::PlainFusion;
        c.priority = Priority::None;
        c.support = SupportMethod::Scf;
        c.prune = PruneMode::PrefixOnly;
    } else {
        throw InvalidConfig("unknown preset: " + std::string(name));
    }
    return c;
}

std::vector<std::string> preset_names() {
    return {"opf-miner",  "opf-enum", "opf-nogroup", "opf-nopriority", "opf-minpriority",
            "mat-opf",    "opf-same", "opf-nopre",   "opf-nosuf",      "opf-noprune",
            "efo-opf"};
}

void MiningConfig::validate() const {
    if (!(minsup > 0.0) || !std::isfinite(minsup)) {
        throw InvalidConfig("minsup must be positive (a zero threshold admits every pattern)");
    }
    if (!(k.value > 0.0) || !std::isfinite(k.value)) {
        throw InvalidConfig("forgetting factor must be positive");
    }
    if (max_length == 1) {
        throw InvalidConfig("max_length below 2 leaves nothing to mine");
    }
}

std::size_t MiningResult::total_patterns() const {
    std::size_t total = 0;
    for (const auto& level : levels) total += level.size();
    return total;
}

const PatternRecord* MiningResult::find(const Pattern& p) const {
    if (p.length() < 2) return nullptr;
    const std::size_t idx = p.length() - 2;
    if (idx >= levels.size()) return nullptr;
    for (const auto& rec : levels[idx]) {
        if (rec.pattern == p) return &rec;
    }
    return nullptr;
}

std::map<Pattern, double, PatternLess> MiningResult::support_map() const {
    std::map<Pattern, double, PatternLess> out;
    for (const auto& level : levels) {
        for (const auto& rec : level) out.emplace(rec.pattern, rec.support);
    }
    return out;
}

const char* to_string(CandidateGen v) {
    switch (v) {
        case CandidateGen::GpFusion: return "gp-fusion";
        case CandidateGen::PlainFusion: return "plain-fusion";
        case CandidateGen::Enumeration: return "enumeration";
    }
    return "?";
}

const char* to_string(SupportMethod v) {
    switch (v) {
        case SupportMethod::Scf: return "scf";
        case SupportMethod::NaiveMatch: return "naive-match";
    }
    return "?";
}

const char* to_string(PruneMode v) {
    switch (v) {
        case PruneMode::Both: return "both";
        case PruneMode::PrefixOnly: return "prefix-only";
        case PruneMode::SuffixOnly: return "suffix-only";
        case PruneMode::SameSuffix: return "same-suffix";
        case PruneMode::None: return "none";
    }
    return "?";
}

const char* to_string(Priority v) {
    switch (v) {
        case Priority::Max: return "max";
        case Priority::Min: return "min";
        case Priority::None: return "none";
    }
    return "?";
}

std::vector<PatternRecord> mine_level2(const TimeSeries& t, const ForgettingWeights& f,
                                       double minsup) {
    OccurrenceList ascents;
    OccurrenceList descents;
    for (std::size_t j = 2; j <= t.size(); ++j) {
        const double prev = t.at1(j - 1);
        const double next = t.at1(j);
        if (prev < next) {
            ascents.push_back(static_cast<int>(j));
        } else if (prev > next) {
            descents.push_back(static_cast<int>(j));
        }
    }
    std::vector<PatternRecord> out;
    const double asc_sup = fsup(ascents, f);
    if (asc_sup >= minsup) {
        out.push_back(make_record(Pattern{{1, 2}}, std::move(ascents), asc_sup));
    }
    const double desc_sup = fsup(descents, f);
    if (desc_sup >= minsup) {
        out.push_back(make_record(Pattern{{2, 1}}, std::move(descents), desc_sup));
    }
    return out;
}

namespace {

struct LevelContext {
    const TimeSeries& t;
    const ForgettingWeights& f;
    const MiningConfig& config;
    MiningResult& result;
    std::vector<PatternRecord> next;
    std::vector<Pattern>* evaluated = nullptr;

    bool prefix_rule() const {
        return config.prune == PruneMode::Both || config.prune == PruneMode::PrefixOnly ||
               config.prune == PruneMode::SameSuffix;
    }
    bool suffix_rule() const {
        return config.prune == PruneMode::Both || config.prune == PruneMode::SuffixOnly;
    }
    bool suffix_count_rule() const { return config.prune == PruneMode::SameSuffix; }

    bool prefix_check(PatternRecord& p) {
        if (!prefix_rule() || !check_prefix_prune(p, config.minsup)) return false;
        if (config.record_candidates) {
            result.prune_events.push_back({static_cast<int>(p.pattern.length()), p.pattern,
                                           PruneEvent::Kind::Prefix,
                                           static_cast<double>(p.pre_count)});
        }
        return true;
    }

    bool suffix_check(PatternRecord& q) {
        if (suffix_rule() && check_suffix_prune(q, config.minsup)) {
            if (config.record_candidates) {
                result.prune_events.push_back({static_cast<int>(q.pattern.length()), q.pattern,
                                               PruneEvent::Kind::Suffix, q.sufsup});
            }
            return true;
        }
        if (suffix_count_rule() && check_suffix_prune_by_count(q, config.minsup)) {
            if (config.record_candidates) {
                result.prune_events.push_back({static_cast<int>(q.pattern.length()), q.pattern,
                                               PruneEvent::Kind::SuffixCount,
                                               static_cast<double>(q.suf.size())});
            }
            return true;
        }
        return false;
    }

    void consider(PatternRecord&& rec) {
        ++result.metrics.candidates;
        if (evaluated) evaluated->push_back(rec.pattern);
        if (rec.support >= config.minsup) next.push_back(std::move(rec));
    }
};

void run_fusion_level(LevelContext& ctx, std::vector<PatternRecord>& cur,
                      const std::vector<std::size_t>& order) {
    const bool grouped = ctx.config.candidate_gen == CandidateGen::GpFusion;
    const std::size_t n = ctx.t.size();

    for (std::size_t pi : order) {
        PatternRecord& p = cur[pi];
        if (p.prefix_pruned || ctx.prefix_check(p)) continue;
        const GroupSet admissible =
            grouped ? admissible_suffix_groups(p.pattern) : GroupSet::all();
        for (std::size_t qi : order) {
            PatternRecord& q = cur[qi];
            if (grouped && !admissible.contains(q.group)) continue;
            if (q.suffix_pruned) continue;
            if (ctx.prefix_check(p)) break;
            if (ctx.suffix_check(q)) continue;

            ++ctx.result.metrics.fusions;
            auto products = fuse(p.pattern, q.pattern);
            if (!products) continue;

            if (ctx.config.support == SupportMethod::Scf) {
                ScfResult sr = scf_fuse(p, q, *products, ctx.t, ctx.f);
                ctx.result.metrics.support_calcs += sr.probes;
                ctx.consider(std::move(sr.r));
                if (sr.h) ctx.consider(std::move(*sr.h));
            } else {
                auto full_scan = [&](const Pattern& w) {
                    auto [occ, support] = match_support(ctx.t, w, ctx.f);
                    const std::size_t len = w.length();
                    ctx.result.metrics.support_calcs +=
                        len <= n ? static_cast<long long>(n - len + 1) : 0;
                    ctx.consider(make_record(w, std::move(occ), support));
                };
                full_scan(products->r);
                if (products->h) full_scan(*products->h);
            }
        }
    }
}

void run_enumeration_level(LevelContext& ctx, std::vector<PatternRecord>& cur,
                           const std::vector<std::size_t>& order) {
    const int n = static_cast<int>(ctx.t.size());

    for (std::size_t pi : order) {
        PatternRecord& p = cur[pi];
        if (p.prefix_pruned || ctx.prefix_check(p)) continue;
        const int m = static_cast<int>(p.pattern.length());
        std::vector<Pattern> extensions = enumerate_extensions(p.pattern);
        std::vector<OccurrenceList> occs(extensions.size());
        std::vector<double> supports(extensions.size(), 0.0);

        // Each remaining prefix position extends into at most one candidate:
        // the one whose appended rank is the slot the next value falls into.
        for (std::size_t idx = 0; idx < p.occ.size(); ++idx) {
            if (!p.pre_live[idx]) continue;
            ++ctx.result.metrics.support_calcs;
            const int j = p.occ[idx] + 1;
            if (j > n) continue;
            const double next_value = ctx.t.at1(static_cast<std::size_t>(j));
            int below = 0;
            int above = 0;
            for (int pos = j - m; pos < j; ++pos) {
                const double v = ctx.t.at1(static_cast<std::size_t>(pos));
                if (v < next_value) {
                    ++below;
                } else if (v > next_value) {
                    ++above;
                }
            }
            if (below + above < m) continue;  // tie: the window matches no pattern
            const std::size_t slot = static_cast<std::size_t>(below);
            occs[slot].push_back(j);
            supports[slot] += ctx.f.at1(static_cast<std::size_t>(j));
            p.pre_live[idx] = 0;
            --p.pre_count;
        }

        for (std::size_t e = 0; e < extensions.size(); ++e) {
            ctx.consider(make_record(extensions[e], std::move(occs[e]), supports[e]));
        }
    }
}

MiningResult mine_validated(const TimeSeries& t, const MiningConfig& config) {
    MiningResult result;
    result.config = config;
    result.series_id = t.id;
    result.n = t.size();
    if (t.size() < 2) return result;
    validate_series(t);

    const auto start = std::chrono::steady_clock::now();
    result.k = config.k.resolve(t.size());
    const ForgettingWeights f = forgetting_weights(t.size(), result.k);

    std::vector<std::vector<PatternRecord>> levels;
    levels.push_back(mine_level2(t, f, config.minsup));

    std::size_t m = 2;
    while (!levels.back().empty() && m < t.size() &&
           (config.max_length == 0 || m < config.max_length)) {
        std::vector<PatternRecord>& cur = levels.back();
        const std::vector<std::size_t> order = build_plist(cur, config.priority);
        for (PatternRecord& rec : cur) rec.reset_level_state();

        LevelContext ctx{t, f, config, result};
        std::vector<Pattern> evaluated;
        if (config.record_candidates) ctx.evaluated = &evaluated;

        if (config.candidate_gen == CandidateGen::Enumeration) {
            run_enumeration_level(ctx, cur, order);
        } else {
            run_fusion_level(ctx, cur, order);
        }

        if (config.record_candidates) result.candidates_by_level.push_back(std::move(evaluated));
        levels.push_back(std::move(ctx.next));
        ++m;
    }

    if (!levels.empty() && levels.back().empty()) levels.pop_back();
    result.levels = std::move(levels);
    result.metrics.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

} // namespace

MiningResult mine(const TimeSeries& t, const MiningConfig& config) {
    config.validate();
    return mine_validated(t, config);
}

std::vector<MiningResult> mine_dataset(const std::vector<TimeSeries>& series,
                                       const MiningConfig& config, unsigned threads) {
    if (series.empty()) throw InvalidInput("dataset has no series");
    config.validate();

    if (threads == 0) {
        threads = std::thread::hardware_concurrency();
        if (threads == 0) threads = 1;
    }
    threads = static_cast<unsigned>(
        std::min<std::size_t>(threads, series.size()));

    std::vector<MiningResult> out(series.size());
    std::vector<std::string> errors(series.size());

    auto work = [&](std::size_t i) {
        try {
            out[i] = mine_validated(series[i], config);
        } catch (const std::exception& e) {
            errors[i] = "series '" + series[i].id + "': " + e.what();
        }
    };

    if (threads <= 1) {
        for (std::size_t i = 0; i < series.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> cursor{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = cursor.fetch_add(1); i < series.size();
                     i = cursor.fetch_add(1)) {
                    work(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    for (const std::string& err : errors) {
        if (!err.empty()) throw InvalidInput(err);
    }
    return out;
}

} // namespace opf
