#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "opf/core.hpp"
#include "opf/miner.hpp"

namespace opf {

// Per-series pattern-support features. One row per series, one column per
// vocabulary pattern (ordered by length, then lexicographically on ranks);
// an entry is the forgetting-weighted support of that pattern in that
// series, 0 when it never occurs.
struct FeatureMatrix {
    std::vector<Pattern> vocabulary;
    std::vector<std::string> ids;
    std::vector<std::vector<double>> rows;

    std::size_t row_count() const { return rows.size(); }
    std::size_t col_count() const { return vocabulary.size(); }
};

struct FeatureOptions {
    bool binary = false;  // presence flags instead of weighted supports
    unsigned threads = 1;
};

// Mines every series with the given config; the vocabulary is the union of
// patterns frequent in at least one series. Entries for series where a
// pattern was not mined are filled by a full-scan support computation.
FeatureMatrix extract_features(const std::vector<TimeSeries>& dataset,
                               const MiningConfig& config, const FeatureOptions& opt = {});

// Column-wise standardization; constant columns map to zero.
FeatureMatrix zscore_columns(const FeatureMatrix& X);

struct ClusteringResult {
    std::vector<int> assignments;  // cluster index per row, 1..K
    std::vector<std::vector<double>> centroids;
    double sc = std::numeric_limits<double>::quiet_NaN();
    double chi = std::numeric_limits<double>::quiet_NaN();
    int K = 0;
    std::uint64_t seed = 0;
    int iterations = 0;
    int empty_cluster_repairs = 0;
    // Within-cluster squared scatter recorded after each assignment step;
    // non-increasing over the run.
    std::vector<double> objective_trace;
};

// Lloyd iterations with squared-Euclidean distance. Initial centroids are K
// distinct rows sampled by the seeded generator; an empty cluster is
// reseeded to the point farthest from its assigned centroid. Converges when
// assignments stabilize, capped at 300 iterations. sc and chi are left unset.
ClusteringResult kmeans(const std::vector<std::vector<double>>& points, int K,
                        std::uint64_t seed);

// Mean silhouette over all samples: s = (b - a) / max(a, b) with a the mean
// distance to co-cluster members and b the smallest mean distance to another
// cluster. Samples in singleton clusters score 0. Throws InvalidInput unless
// at least two clusters are non-empty.
double silhouette(const std::vector<std::vector<double>>& points,
                  const std::vector<int>& assignments);

// Variance-ratio index: Tr(B) (N - K) / (Tr(W) (K - 1)). A zero
// within-cluster scatter yields +infinity (reported with a warning).
double calinski_harabasz(const std::vector<std::vector<double>>& points,
                         const std::vector<int>& assignments);

// kmeans plus both quality indices; optional z-scoring first. Indices are
// left NaN when the outcome is too degenerate to score (fewer than two
// non-empty clusters).
ClusteringResult evaluate_clustering(const FeatureMatrix& X, int K, std::uint64_t seed,
                                     bool zscore = false);

} // namespace opf
