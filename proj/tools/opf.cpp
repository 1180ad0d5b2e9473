#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opf/dataset.hpp"
#include "opf/errors.hpp"
#include "opf/eval.hpp"
#include "opf/miner.hpp"
#include "opf/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;  // bench cross-preset disagreement
constexpr int kExitConfig = 2;
constexpr int kExitParse = 3;

struct MineFlags {
    std::string input;
    double minsup = 0.0;
    double k_coeff = 1.0;
    double k_abs = 0.0;
    std::string preset = "opf-miner";
    std::string candidate_gen;
    std::string priority;
    std::string support;
    std::string prune;
    std::size_t max_length = 0;

    CLI::Option* k_abs_opt = nullptr;
};

void add_mining_flags(CLI::App* cmd, MineFlags& f) {
    cmd->add_option("--input", f.input, "dataset file, one comma-separated series per line")
        ->required();
    cmd->add_option("--minsup", f.minsup, "minimum forgetting-weighted support")->required();
    auto* coeff = cmd->add_option("--k-coeff", f.k_coeff,
                                  "forgetting coefficient c, factor k = c/n (default 1)");
    f.k_abs_opt = cmd->add_option("--k-abs", f.k_abs, "absolute forgetting factor k");
    f.k_abs_opt->excludes(coeff);
    cmd->add_option("--preset", f.preset,
                    "variant preset (default opf-miner); see README for the full list");
    cmd->add_option("--candidate-gen", f.candidate_gen,
                    "gp-fusion | plain-fusion | enumeration (overrides preset)");
    cmd->add_option("--priority", f.priority, "max | min | none (overrides preset)");
    cmd->add_option("--support", f.support, "scf | naive-match (overrides preset)");
    cmd->add_option("--prune", f.prune,
                    "both | prefix-only | suffix-only | same-suffix | none (overrides preset)");
    cmd->add_option("--max-length", f.max_length, "stop after this pattern length (0 = unlimited)");
}

opf::MiningConfig build_config(const MineFlags& f) {
    opf::MiningConfig config = opf::MiningConfig::preset(f.preset);
    config.minsup = f.minsup;
    config.k = f.k_abs_opt->count() > 0 ? opf::KSpec::absolute(f.k_abs)
                                        : opf::KSpec::coefficient(f.k_coeff);
    config.max_length = f.max_length;

    auto pick = [&](const std::string& value, auto&& table, auto& target, const char* what) {
        if (value.empty()) return;
        for (const auto& [name, v] : table) {
            if (value == name) {
                target = v;
                config.preset_name.clear();  // no longer a pure preset
                return;
            }
        }
        throw opf::InvalidConfig(std::string("unknown ") + what + ": " + value);
    };
    pick(f.candidate_gen,
         std::map<std::string, opf::CandidateGen>{{"gp-fusion", opf::CandidateGen::GpFusion},
                                                  {"plain-fusion", opf::CandidateGen::PlainFusion},
                                                  {"enumeration", opf::CandidateGen::Enumeration}},
         config.candidate_gen, "candidate generator");
    pick(f.priority,
         std::map<std::string, opf::Priority>{{"max", opf::Priority::Max},
                                              {"min", opf::Priority::Min},
                                              {"none", opf::Priority::None}},
         config.priority, "priority mode");
    pick(f.support,
         std::map<std::string, opf::SupportMethod>{{"scf", opf::SupportMethod::Scf},
                                                   {"naive-match", opf::SupportMethod::NaiveMatch}},
         config.support, "support method");
    pick(f.prune,
         std::map<std::string, opf::PruneMode>{{"both", opf::PruneMode::Both},
                                               {"prefix-only", opf::PruneMode::PrefixOnly},
                                               {"suffix-only", opf::PruneMode::SuffixOnly},
                                               {"same-suffix", opf::PruneMode::SameSuffix},
                                               {"none", opf::PruneMode::None}},
         config.prune, "prune mode");
    config.validate();
    return config;
}

unsigned env_threads() {
    const char* raw = std::getenv("OPF_THREADS");
    if (!raw || !*raw) return 1;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || v < 0) throw opf::InvalidConfig("OPF_THREADS must be a non-negative integer");
    return static_cast<unsigned>(v);  // 0 = auto
}

void warn_large_k(const opf::MiningConfig& config, const std::vector<opf::TimeSeries>& series) {
    for (const opf::TimeSeries& t : series) {
        if (t.size() >= 1 && config.k.resolve(t.size()) >= 1.0) {
            std::cerr << "warning: forgetting factor k >= 1 for series '" << t.id
                      << "'; weights decay very fast\n";
            return;
        }
    }
}

// Streams the payload to --output, or stdout when omitted.
int with_output(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    if (path.empty()) {
        writer(std::cout);
        return kExitOk;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot open output file: " << path << '\n';
        return kExitConfig;
    }
    writer(out);
    return kExitOk;
}

int run_mine(const MineFlags& flags, const std::string& output, bool emit_occurrences,
             const std::string& format) {
    opf::MiningConfig config = build_config(flags);
    opf::ReportOptions opt;
    opt.emit_occurrences = emit_occurrences;
    if (format == "json") {
        opt.format = opf::ReportFormat::Json;
    } else if (format == "csv") {
        opt.format = opf::ReportFormat::Csv;
    } else {
        throw opf::InvalidConfig("unknown format: " + format);
    }

    const std::vector<opf::TimeSeries> series = opf::load_dataset(flags.input);
    warn_large_k(config, series);
    const std::vector<opf::MiningResult> results =
        opf::mine_dataset(series, config, env_threads());
    return with_output(output, [&](std::ostream& out) { opf::write_report(out, results, opt); });
}

int run_bench(const std::string& input, const std::vector<std::string>& presets,
              const std::vector<double>& minsup_list, const std::vector<double>& k_coeff_list,
              const std::vector<int>& replicates, std::size_t max_length,
              const std::string& output) {
    if (minsup_list.empty()) throw opf::InvalidConfig("--minsup-list is required");
    const std::vector<std::string> preset_list =
        presets.empty() ? opf::preset_names() : presets;

    const std::vector<opf::TimeSeries> base = opf::load_dataset(input);
    std::vector<opf::BenchRow> table;
    bool mismatch = false;

    for (int rep : replicates) {
        std::vector<opf::TimeSeries> data;
        data.reserve(base.size());
        for (const opf::TimeSeries& t : base) data.push_back(opf::replicate(t, rep));

        for (double kc : k_coeff_list) {
            for (double minsup : minsup_list) {
                // pattern -> support per series, from the first preset of the cell
                std::vector<std::map<opf::Pattern, double, opf::PatternLess>> reference;
                std::string reference_preset;

                for (const std::string& preset : preset_list) {
                    opf::MiningConfig config = opf::MiningConfig::preset(preset);
                    config.minsup = minsup;
                    config.k = opf::KSpec::coefficient(kc);
                    config.max_length = max_length;
                    const auto results = opf::mine_dataset(data, config, env_threads());

                    opf::BenchRow row;
                    row.preset = preset;
                    row.minsup = minsup;
                    row.k_coeff = kc;
                    row.replicate = rep;
                    row.series_count = results.size();
                    for (const opf::MiningResult& r : results) {
                        row.n_total += r.n;
                        row.patterns += r.total_patterns();
                        row.metrics.candidates += r.metrics.candidates;
                        row.metrics.fusions += r.metrics.fusions;
                        row.metrics.support_calcs += r.metrics.support_calcs;
                        row.metrics.wall_ms += r.metrics.wall_ms;
                    }
                    table.push_back(row);

                    std::vector<std::map<opf::Pattern, double, opf::PatternLess>> maps;
                    maps.reserve(results.size());
                    for (const opf::MiningResult& r : results) maps.push_back(r.support_map());
                    if (reference.empty()) {
                        reference = std::move(maps);
                        reference_preset = preset;
                        continue;
                    }
                    for (std::size_t s = 0; s < maps.size(); ++s) {
                        if (maps[s].size() == reference[s].size() &&
                            std::equal(maps[s].begin(), maps[s].end(), reference[s].begin(),
                                       [](const auto& a, const auto& b) {
                                           return a.first == b.first &&
                                                  std::abs(a.second - b.second) <= 1e-9;
                                       })) {
                            continue;
                        }
                        mismatch = true;
                        std::cerr << "MISMATCH: preset " << preset << " vs " << reference_preset
                                  << " on series '" << data[s].id << "' (minsup=" << minsup
                                  << ", k=" << kc << "/n, replicate=" << rep << ")\n";
                        for (const auto& [pat, sup] : reference[s]) {
                            auto it = maps[s].find(pat);
                            if (it == maps[s].end()) {
                                std::cerr << "  missing " << opf::to_string(pat) << " (support "
                                          << sup << ")\n";
                            } else if (std::abs(it->second - sup) > 1e-9) {
                                std::cerr << "  support differs for " << opf::to_string(pat)
                                          << ": " << sup << " vs " << it->second << '\n';
                            }
                        }
                        for (const auto& [pat, sup] : maps[s]) {
                            if (!reference[s].count(pat)) {
                                std::cerr << "  extra " << opf::to_string(pat) << " (support "
                                          << sup << ")\n";
                            }
                        }
                    }
                }
            }
        }
    }

    const int rc =
        with_output(output, [&](std::ostream& out) { opf::write_bench_table(out, table); });
    if (rc != kExitOk) return rc;
    if (mismatch) {
        std::cerr << "error: presets disagree on the frequent-pattern sets\n";
        return kExitMismatch;
    }
    return kExitOk;
}

int run_features(const MineFlags& flags, bool binary, const std::string& output) {
    opf::MiningConfig config = build_config(flags);
    const std::vector<opf::TimeSeries> series = opf::load_dataset(flags.input);
    warn_large_k(config, series);
    opf::FeatureOptions opt;
    opt.binary = binary;
    opt.threads = env_threads();
    const opf::FeatureMatrix X = opf::extract_features(series, config, opt);
    return with_output(output,
                       [&](std::ostream& out) { opf::write_feature_matrix(out, X); });
}

int run_eval(const std::string& features_path, std::vector<int> k_list, std::uint64_t seed,
             bool zscore, const std::string& output) {
    if (k_list.empty()) throw opf::InvalidConfig("pass --K or --K-list");
    std::ifstream in(features_path);
    if (!in) throw opf::ParseError("cannot open features file: " + features_path);
    const opf::FeatureMatrix X = opf::read_feature_matrix(in);

    std::vector<opf::ClusteringResult> entries;
    entries.reserve(k_list.size());
    for (int K : k_list) {
        if (K < 2 || static_cast<std::size_t>(K) > X.row_count()) {
            std::ostringstream os;
            os << "K=" << K << " out of range for " << X.row_count() << " series";
            throw opf::InvalidConfig(os.str());
        }
        entries.push_back(opf::evaluate_clustering(X, K, seed, zscore));
    }
    opf::EvalReportConfig config{features_path, seed, zscore};
    return with_output(output, [&](std::ostream& out) {
        opf::write_eval_report(out, config, entries);
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"order-preserving pattern mining with a forgetting mechanism"};
    app.require_subcommand(1);

    MineFlags mine_flags;
    std::string mine_output;
    std::string mine_format = "json";
    bool emit_occurrences = false;
    CLI::App* mine = app.add_subcommand("mine", "mine frequent patterns from a dataset");
    add_mining_flags(mine, mine_flags);
    mine->add_option("--output", mine_output, "report file (default stdout)");
    mine->add_flag("--emit-occurrences", emit_occurrences, "include occurrence end positions");
    mine->add_option("--format", mine_format, "json | csv (default json)");

    std::string bench_input;
    std::string bench_output;
    std::vector<std::string> bench_presets;
    std::vector<double> minsup_list;
    std::vector<double> k_coeff_list{1.0};
    std::vector<int> replicates{1};
    std::size_t bench_max_length = 0;
    CLI::App* bench = app.add_subcommand("bench", "compare variant presets over a parameter grid");
    bench->add_option("--input", bench_input, "dataset file")->required();
    bench->add_option("--presets", bench_presets, "presets to compare (default: all)")
        ->delimiter(',');
    bench->add_option("--minsup-list", minsup_list, "minsup grid")->delimiter(',')->required();
    bench->add_option("--k-coeff-list", k_coeff_list, "k coefficient grid (k = c/n)")
        ->delimiter(',');
    bench->add_option("--replicate", replicates,
                      "series self-concatenation factors, e.g. 1,2,4")
        ->delimiter(',');
    bench->add_option("--max-length", bench_max_length,
                      "stop after this pattern length (0 = unlimited)");
    bench->add_option("--output", bench_output, "table file (default stdout)");

    MineFlags feat_flags;
    std::string feat_output;
    bool feat_binary = false;
    CLI::App* features =
        app.add_subcommand("features", "extract a pattern-support feature matrix");
    add_mining_flags(features, feat_flags);
    features->add_flag("--binary", feat_binary, "emit presence flags instead of supports");
    features->add_option("--output", feat_output, "matrix file (default stdout)");

    std::string eval_features;
    std::string eval_output;
    std::vector<int> k_list;
    int k_single = 0;
    std::uint64_t seed = 1;
    bool zscore = false;
    CLI::App* eval = app.add_subcommand("eval", "cluster a feature matrix and score it");
    eval->add_option("--features", eval_features, "feature matrix file")->required();
    auto* k_single_opt = eval->add_option("--K", k_single, "cluster count");
    eval->add_option("--K-list", k_list, "cluster count grid")->delimiter(',')
        ->excludes(k_single_opt);
    eval->add_option("--seed", seed, "clustering seed (default 1)");
    eval->add_flag("--z-score", zscore, "standardize feature columns first");
    eval->add_option("--output", eval_output, "report file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (mine->parsed()) {
            return run_mine(mine_flags, mine_output, emit_occurrences, mine_format);
        }
        if (bench->parsed()) {
            return run_bench(bench_input, bench_presets, minsup_list, k_coeff_list, replicates,
                             bench_max_length, bench_output);
        }
        if (features->parsed()) {
            return run_features(feat_flags, feat_binary, feat_output);
        }
        if (eval->parsed()) {
            if (k_single_opt->count() > 0) k_list.insert(k_list.begin(), k_single);
            return run_eval(eval_features, k_list, seed, zscore, eval_output);
        }
    } catch (const opf::InvalidConfig& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const opf::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const opf::InvalidInput& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMismatch;
    }
    return kExitOk;
}
