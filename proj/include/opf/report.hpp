#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "opf/eval.hpp"
#include "opf/miner.hpp"

namespace opf {

inline constexpr const char* kArtifactName = "opf-miner";
inline constexpr const char* kArtifactVersion = "0.1.0";

enum class ReportFormat : std::uint8_t { Json, Csv };

struct ReportOptions {
    ReportFormat format = ReportFormat::Json;
    bool emit_occurrences = false;
};

// Supports are rendered with six fixed decimals in every output file.
double round6(double value);

std::string hyphen_join(const Pattern& p);
Pattern pattern_from_hyphens(std::string_view text);

// Self-describing run report: config echo, then per series the frequent
// patterns (sorted by length, then ranks) and the run metrics.
void write_report(std::ostream& out, const std::vector<MiningResult>& results,
                  const ReportOptions& opt);

struct ReportedPattern {
    std::string series_id;
    Pattern pattern;
    std::string group;
    double support = 0.0;
    long long occurrence_count = 0;
    OccurrenceList occurrences;
};

std::vector<ReportedPattern> read_report(std::istream& in, ReportFormat format);

// Feature matrix as CSV: a vocabulary header row (patterns hyphen-joined,
// e.g. 1-3-2), then one row per series.
void write_feature_matrix(std::ostream& out, const FeatureMatrix& X);
FeatureMatrix read_feature_matrix(std::istream& in);

struct EvalReportConfig {
    std::string features_path;
    std::uint64_t seed = 0;
    bool zscore = false;
};

// Clustering report: per K the assignments, SC, and CHI. An infinite CHI is
// written as the string "inf".
void write_eval_report(std::ostream& out, const EvalReportConfig& config,
                       const std::vector<ClusteringResult>& entries);

struct BenchRow {
    std::string preset;
    double minsup = 0.0;
    double k_coeff = 0.0;
    int replicate = 1;
    std::size_t series_count = 0;
    std::size_t n_total = 0;
    std::size_t patterns = 0;
    Metrics metrics;
};

void write_bench_table(std::ostream& out, const std::vector<BenchRow>& rows);

} // namespace opf
