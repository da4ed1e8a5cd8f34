#include "loadclust/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "loadclust/errors.hpp"
#include "loadclust/rng.hpp"

namespace loadclust {

namespace {

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

std::vector<std::vector<double>> member_means(const FeatureMatrix& matrix,
                                              const std::vector<int>& assignments, int k) {
    const std::size_t h = matrix.attribute_count();
    std::vector<std::vector<double>> centres(static_cast<std::size_t>(k),
                                             std::vector<double>(h, 0.0));
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
        const auto c = static_cast<std::size_t>(assignments[r]);
        ++counts[c];
        for (std::size_t j = 0; j < h; ++j) centres[c][j] += matrix.rows[r][j];
    }
    for (std::size_t c = 0; c < centres.size(); ++c) {
        if (counts[c] > 0) {
            for (auto& v : centres[c]) v /= counts[c];
        }
    }
    return centres;
}

double total_wcss(const FeatureMatrix& matrix, const std::vector<int>& assignments,
                  const std::vector<std::vector<double>>& centres) {
    double s = 0.0;
    for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
        s += squared_distance(matrix.rows[r], centres[static_cast<std::size_t>(assignments[r])]);
    }
    return s;
}

std::vector<int> cluster_sizes(const std::vector<int>& assignments, int k) {
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (const int a : assignments) ++sizes[static_cast<std::size_t>(a)];
    return sizes;
}

// k-means++ seeding: first centre uniform, then D^2-weighted.
std::vector<std::vector<double>> seed_plus_plus(const FeatureMatrix& matrix, int k,
                                                std::mt19937_64& rng) {
    const std::size_t m = matrix.row_count();
    std::vector<std::vector<double>> centres;
    centres.reserve(static_cast<std::size_t>(k));
    const std::size_t first = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(m));
    centres.push_back(matrix.rows[std::min(first, m - 1)]);

    std::vector<double> dist2(m);
    for (std::size_t r = 0; r < m; ++r) dist2[r] = squared_distance(matrix.rows[r], centres[0]);

    while (centres.size() < static_cast<std::size_t>(k)) {
        const double total = std::accumulate(dist2.begin(), dist2.end(), 0.0);
        std::size_t chosen = 0;
        if (total <= 0.0) {
            // All remaining mass on already-chosen points; pick round-robin.
            chosen = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(m));
            chosen = std::min(chosen, m - 1);
        } else {
            double target = uniform01(rng) * total;
            for (std::size_t r = 0; r < m; ++r) {
                target -= dist2[r];
                if (target <= 0.0) {
                    chosen = r;
                    break;
                }
                chosen = r;
            }
        }
        centres.push_back(matrix.rows[chosen]);
        for (std::size_t r = 0; r < m; ++r) {
            dist2[r] = std::min(dist2[r], squared_distance(matrix.rows[r], centres.back()));
        }
    }
    return centres;
}

struct LloydOutcome {
    std::vector<int> assignments;
    std::vector<std::vector<double>> centres;
    double wcss = 0.0;
};

LloydOutcome lloyd_once(const FeatureMatrix& matrix, int k, const KMeansConfig& config,
                        std::mt19937_64& rng) {
    const std::size_t m = matrix.row_count();
    auto centres = seed_plus_plus(matrix, k, rng);
    std::vector<int> assignments(m, -1);

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        bool changed = false;
        for (std::size_t r = 0; r < m; ++r) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                const double d = squared_distance(matrix.rows[r],
                                                  centres[static_cast<std::size_t>(c)]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (assignments[r] != best) {
                assignments[r] = best;
                changed = true;
            }
        }

        // Repair empty clusters by reseeding with the point farthest from its
        // own centre (lowest row index on ties).
        auto sizes = cluster_sizes(assignments, k);
        for (int c = 0; c < k; ++c) {
            if (sizes[static_cast<std::size_t>(c)] > 0) continue;
            std::size_t farthest = 0;
            double far_d = -1.0;
            for (std::size_t r = 0; r < m; ++r) {
                if (sizes[static_cast<std::size_t>(assignments[r])] <= 1) continue;
                const double d = squared_distance(
                    matrix.rows[r], centres[static_cast<std::size_t>(assignments[r])]);
                if (d > far_d) {
                    far_d = d;
                    farthest = r;
                }
            }
            --sizes[static_cast<std::size_t>(assignments[farthest])];
            assignments[farthest] = c;
            sizes[static_cast<std::size_t>(c)] = 1;
            changed = true;
        }

        auto next = member_means(matrix, assignments, k);
        double shift = 0.0;
        for (int c = 0; c < k; ++c) {
            shift = std::max(shift, squared_distance(centres[static_cast<std::size_t>(c)],
                                                     next[static_cast<std::size_t>(c)]));
        }
        centres = std::move(next);
        if (!changed || shift < config.tolerance * config.tolerance) break;
    }

    LloydOutcome out;
    out.wcss = total_wcss(matrix, assignments, centres);
    out.assignments = std::move(assignments);
    out.centres = std::move(centres);
    return out;
}

Clustering finish(const FeatureMatrix& matrix, std::vector<int> assignments, int k) {
    Clustering c;
    c.k = k;
    c.centres = member_means(matrix, assignments, k);
    c.sizes = cluster_sizes(assignments, k);
    c.wcss = total_wcss(matrix, assignments, c.centres);
    c.assignments = std::move(assignments);
    return c;
}

// Merges singleton clusters into the cluster with the nearest centre, then
// compacts labels. Used for min_cluster_size >= 2.
Clustering merge_singletons(const FeatureMatrix& matrix, Clustering c) {
    int merged = 0;
    while (c.k > 1) {
        int singleton = -1;
        for (int i = 0; i < c.k; ++i) {
            if (c.sizes[static_cast<std::size_t>(i)] == 1) {
                singleton = i;
                break;
            }
        }
        if (singleton < 0) break;
        int nearest = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < c.k; ++i) {
            if (i == singleton) continue;
            const double d = squared_distance(c.centres[static_cast<std::size_t>(i)],
                                              c.centres[static_cast<std::size_t>(singleton)]);
            if (d < best) {
                best = d;
                nearest = i;
            }
        }
        for (auto& a : c.assignments) {
            if (a == singleton) a = nearest;
            if (a > singleton) --a;  // compact labels
        }
        c = finish(matrix, std::move(c.assignments), c.k - 1);
        ++merged;
    }
    c.merged_singletons = merged;
    return c;
}

}  // namespace

Clustering kmeans(const FeatureMatrix& matrix, int k, const KMeansConfig& config) {
    const std::size_t m = matrix.row_count();
    if (k < 1 || static_cast<std::size_t>(k) > m) {
        throw TooManyClusters("k=" + std::to_string(k) + " out of range for M=" +
                              std::to_string(m));
    }

    LloydOutcome best;
    best.wcss = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < std::max(1, config.restarts); ++restart) {
        auto rng = make_engine(config.seed, static_cast<std::uint64_t>(restart));
        auto outcome = lloyd_once(matrix, k, config, rng);
        if (outcome.wcss < best.wcss) best = std::move(outcome);
    }

    Clustering result = finish(matrix, std::move(best.assignments), k);
    if (config.min_cluster_size >= 2) {
        result = merge_singletons(matrix, std::move(result));
    }
    return relabel_canonical(result);
}

Clustering exhaustive_oracle(const FeatureMatrix& matrix, int k) {
    const int m = static_cast<int>(matrix.row_count());
    if (k < 1 || k > m) {
        throw TooManyClusters("k=" + std::to_string(k) + " out of range for M=" +
                              std::to_string(m));
    }
    // Stirling-number cap on the search space.
    constexpr double kCap = 2e6;
    {
        std::vector<double> s(static_cast<std::size_t>(k) + 1, 0.0);
        s[0] = 1.0;  // S(0,0)
        for (int n = 1; n <= m; ++n) {
            for (int j = std::min(n, k); j >= 1; --j) {
                s[static_cast<std::size_t>(j)] =
                    j * s[static_cast<std::size_t>(j)] + s[static_cast<std::size_t>(j) - 1];
            }
            s[0] = 0.0;
        }
        if (s[static_cast<std::size_t>(k)] > kCap) {
            throw InstanceTooLarge("partition count exceeds cap for M=" + std::to_string(m) +
                                   ", k=" + std::to_string(k));
        }
    }

    // Restricted growth strings enumerate set partitions into at most k blocks.
    std::vector<int> rgs(static_cast<std::size_t>(m), 0);
    std::vector<int> best_assignment;
    double best_wcss = std::numeric_limits<double>::infinity();

    const auto evaluate = [&] {
        int blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
        if (blocks != k) return;
        auto centres = member_means(matrix, rgs, k);
        const double w = total_wcss(matrix, rgs, centres);
        if (w < best_wcss) {
            best_wcss = w;
            best_assignment = rgs;
        }
    };

    // Iterative RGS successor: rgs[i] may be at most max(rgs[0..i-1]) + 1.
    evaluate();
    while (true) {
        int i = m - 1;
        for (; i > 0; --i) {
            int prefix_max = 0;
            for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs[static_cast<std::size_t>(j)]);
            if (rgs[static_cast<std::size_t>(i)] <= std::min(prefix_max, k - 2)) break;
        }
        if (i == 0) break;
        ++rgs[static_cast<std::size_t>(i)];
        std::fill(rgs.begin() + i + 1, rgs.end(), 0);
        evaluate();
    }

    return relabel_canonical(finish(matrix, std::move(best_assignment), k));
}

Clustering relabel_canonical(const Clustering& clustering) {
    std::vector<int> remap(static_cast<std::size_t>(clustering.k), -1);
    int next = 0;
    for (const int a : clustering.assignments) {
        if (remap[static_cast<std::size_t>(a)] < 0) remap[static_cast<std::size_t>(a)] = next++;
    }
    Clustering out = clustering;
    for (auto& a : out.assignments) a = remap[static_cast<std::size_t>(a)];
    for (int c = 0; c < clustering.k; ++c) {
        const int to = remap[static_cast<std::size_t>(c)];
        if (to < 0) continue;  // unreachable for valid clusterings
        out.centres[static_cast<std::size_t>(to)] = clustering.centres[static_cast<std::size_t>(c)];
        out.sizes[static_cast<std::size_t>(to)] = clustering.sizes[static_cast<std::size_t>(c)];
    }
    return out;
}

}  // namespace loadclust
