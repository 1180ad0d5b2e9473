#include "opf/eval.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <random>

#include "opf/errors.hpp"

namespace opf {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double total = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        total += d * d;
    }
    return total;
}

double dist(const std::vector<double>& a, const std::vector<double>& b) {
    return std::sqrt(sq_dist(a, b));
}

// label -> consecutive cluster index, insertion-ordered by label value
std::map<int, int> cluster_index(const std::vector<int>& assignments) {
    std::map<int, int> index;
    for (int label : assignments) {
        index.emplace(label, static_cast<int>(index.size()));
    }
    return index;
}

} // namespace

FeatureMatrix extract_features(const std::vector<TimeSeries>& dataset,
                               const MiningConfig& config, const FeatureOptions& opt) {
    std::vector<MiningResult> results = mine_dataset(dataset, config, opt.threads);

    std::map<Pattern, std::size_t, PatternLess> columns;
    for (const MiningResult& res : results) {
        for (const auto& level : res.levels) {
            for (const PatternRecord& rec : level) columns.emplace(rec.pattern, 0);
        }
    }
    std::size_t col = 0;
    for (auto& [pattern, idx] : columns) idx = col++;

    FeatureMatrix X;
    X.vocabulary.reserve(columns.size());
    for (const auto& [pattern, idx] : columns) X.vocabulary.push_back(pattern);

    X.ids.reserve(dataset.size());
    X.rows.reserve(dataset.size());
    for (std::size_t s = 0; s < dataset.size(); ++s) {
        X.ids.push_back(dataset[s].id);
        std::vector<double> row(columns.size(), 0.0);
        auto mined = results[s].support_map();
        const ForgettingWeights f =
            dataset[s].size() >= 1 ? forgetting_weights(dataset[s].size(), results[s].k)
                                   : ForgettingWeights{};
        for (const auto& [pattern, idx] : columns) {
            double value = 0.0;
            if (auto it = mined.find(pattern); it != mined.end()) {
                value = it->second;
            } else if (pattern.length() <= dataset[s].size()) {
                value = match_support(dataset[s], pattern, f).second;
            }
            row[idx] = opt.binary ? (value > 0.0 ? 1.0 : 0.0) : value;
        }
        X.rows.push_back(std::move(row));
    }
    return X;
}

FeatureMatrix zscore_columns(const FeatureMatrix& X) {
    FeatureMatrix out = X;
    const std::size_t n = X.rows.size();
    if (n == 0) return out;
    const std::size_t cols = X.rows.front().size();
    for (std::size_t c = 0; c < cols; ++c) {
        double mean = 0.0;
        for (const auto& row : X.rows) mean += row[c];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (const auto& row : X.rows) {
            const double d = row[c] - mean;
            var += d * d;
        }
        const double sd = std::sqrt(var / static_cast<double>(n));
        for (std::size_t r = 0; r < n; ++r) {
            out.rows[r][c] = sd > 0.0 ? (X.rows[r][c] - mean) / sd : 0.0;
        }
    }
    return out;
}

ClusteringResult kmeans(const std::vector<std::vector<double>>& points, int K,
                        std::uint64_t seed) {
    const std::size_t n = points.size();
    if (K < 2) throw InvalidConfig("kmeans needs K >= 2");
    if (static_cast<std::size_t>(K) > n) throw InvalidConfig("kmeans needs K <= number of rows");
    const std::size_t dims = points.front().size();

    ClusteringResult result;
    result.K = K;
    result.seed = seed;

    // Seeded draw of K distinct rows as initial centroids.
    std::mt19937_64 gen(seed);
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    result.centroids.reserve(static_cast<std::size_t>(K));
    for (int c = 0; c < K; ++c) {
        const std::size_t pick = static_cast<std::size_t>(gen() % (n - static_cast<std::size_t>(c)));
        std::swap(pool[pick], pool[n - 1 - static_cast<std::size_t>(c)]);
        result.centroids.push_back(points[pool[n - 1 - static_cast<std::size_t>(c)]]);
    }

    constexpr int kMaxIterations = 300;
    std::vector<int> assign(n, 0);
    std::vector<int> prev(n, -1);

    for (int iter = 0; iter < kMaxIterations; ++iter) {
        result.iterations = iter + 1;

        double objective = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = sq_dist(points[i], result.centroids[0]);
            for (int c = 1; c < K; ++c) {
                const double d = sq_dist(points[i], result.centroids[static_cast<std::size_t>(c)]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            assign[i] = best;
            objective += best_d;
        }
        result.objective_trace.push_back(objective);
        if (assign == prev) break;
        prev = assign;

        std::vector<std::vector<double>> sums(static_cast<std::size_t>(K),
                                              std::vector<double>(dims, 0.0));
        std::vector<std::size_t> counts(static_cast<std::size_t>(K), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = static_cast<std::size_t>(assign[i]);
            ++counts[c];
            for (std::size_t d = 0; d < dims; ++d) sums[c][d] += points[i][d];
        }
        for (int c = 0; c < K; ++c) {
            const auto cc = static_cast<std::size_t>(c);
            if (counts[cc] > 0) {
                for (std::size_t d = 0; d < dims; ++d) {
                    result.centroids[cc][d] = sums[cc][d] / static_cast<double>(counts[cc]);
                }
                continue;
            }
            // Empty cluster: reseed to the point farthest from its centroid.
            std::size_t farthest = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d =
                    sq_dist(points[i], result.centroids[static_cast<std::size_t>(assign[i])]);
                if (d > far_d) {
                    far_d = d;
                    farthest = i;
                }
            }
            result.centroids[cc] = points[farthest];
            ++result.empty_cluster_repairs;
        }
    }

    result.assignments.resize(n);
    for (std::size_t i = 0; i < n; ++i) result.assignments[i] = assign[i] + 1;
    return result;
}

double silhouette(const std::vector<std::vector<double>>& points,
                  const std::vector<int>& assignments) {
    const std::size_t n = points.size();
    if (assignments.size() != n) throw InvalidInput("assignment count does not match rows");
    const std::map<int, int> index = cluster_index(assignments);
    const std::size_t k = index.size();
    if (k < 2) throw InvalidInput("silhouette needs at least two non-empty clusters");

    std::vector<std::size_t> sizes(k, 0);
    std::vector<int> cluster(n);
    for (std::size_t i = 0; i < n; ++i) {
        cluster[i] = index.at(assignments[i]);
        ++sizes[static_cast<std::size_t>(cluster[i])];
    }

    double total = 0.0;
    std::vector<double> mean_to(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto own = static_cast<std::size_t>(cluster[i]);
        if (sizes[own] == 1) continue;  // singleton scores 0 by convention

        std::fill(mean_to.begin(), mean_to.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            mean_to[static_cast<std::size_t>(cluster[j])] += dist(points[i], points[j]);
        }
        const double a = mean_to[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            if (c == own || sizes[c] == 0) continue;
            b = std::min(b, mean_to[c] / static_cast<double>(sizes[c]));
        }
        const double denom = std::max(a, b);
        total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return total / static_cast<double>(n);
}

double calinski_harabasz(const std::vector<std::vector<double>>& points,
                         const std::vector<int>& assignments) {
    const std::size_t n = points.size();
    if (assignments.size() != n) throw InvalidInput("assignment count does not match rows");
    const std::map<int, int> index = cluster_index(assignments);
    const std::size_t k = index.size();
    if (k < 2) throw InvalidInput("calinski-harabasz needs at least two non-empty clusters");
    const std::size_t dims = points.front().size();

    std::vector<std::vector<double>> centroids(k, std::vector<double>(dims, 0.0));
    std::vector<std::size_t> sizes(k, 0);
    std::vector<double> global(dims, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<std::size_t>(index.at(assignments[i]));
        ++sizes[c];
        for (std::size_t d = 0; d < dims; ++d) {
            centroids[c][d] += points[i][d];
            global[d] += points[i][d];
        }
    }
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t d = 0; d < dims; ++d) {
            centroids[c][d] /= static_cast<double>(sizes[c]);
        }
    }
    for (std::size_t d = 0; d < dims; ++d) global[d] /= static_cast<double>(n);

    double between = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        between += static_cast<double>(sizes[c]) * sq_dist(centroids[c], global);
    }
    double within = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        within += sq_dist(points[i], centroids[static_cast<std::size_t>(index.at(assignments[i]))]);
    }
    if (within == 0.0) {
        std::cerr << "warning: zero within-cluster scatter, CHI reported as +inf\n";
        return std::numeric_limits<double>::infinity();
    }
    return (between * static_cast<double>(n - k)) / (within * static_cast<double>(k - 1));
}

ClusteringResult evaluate_clustering(const FeatureMatrix& X, int K, std::uint64_t seed,
                                     bool zscore) {
    const FeatureMatrix& input = X;
    FeatureMatrix scaled;
    const std::vector<std::vector<double>>* points = &input.rows;
    if (zscore) {
        scaled = zscore_columns(X);
        points = &scaled.rows;
    }
    ClusteringResult result = kmeans(*points, K, seed);
    const std::size_t nonempty = cluster_index(result.assignments).size();
    if (nonempty >= 2) {
        result.sc = silhouette(*points, result.assignments);
        result.chi = calinski_harabasz(*points, result.assignments);
    }
    return result;
}

} // namespace opf
