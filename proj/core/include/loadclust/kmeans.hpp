#ifndef LOADCLUST_KMEANS_HPP
#define LOADCLUST_KMEANS_HPP

#include <cstdint>
#include <vector>

#include "loadclust/features.hpp"

namespace loadclust {

struct KMeansConfig {
    int restarts = 25;
    int max_iterations = 100;
    double tolerance = 1e-9;  // centroid-shift termination threshold
    std::uint64_t seed = 0;
    int min_cluster_size = 0;  // >= 2 merges singletons post hoc
};

struct Clustering {
    int k = 0;
    std::vector<int> assignments;               // per row, 0..k-1
    std::vector<std::vector<double>> centres;   // k x H, member means
    std::vector<int> sizes;                     // per cluster, sums to M
    double wcss = 0.0;                          // plain squared Euclidean
    int merged_singletons = 0;                  // post-hoc repairs applied
};

// Lloyd iterations from k-means++ seeding, best-of-restarts by wcss.
// Deterministic given config.seed. Throws TooManyClusters for k > M.
Clustering kmeans(const FeatureMatrix& matrix, int k, const KMeansConfig& config);

// Globally wcss-optimal partition by enumerating all assignments of M rows
// to k non-empty unlabeled groups. Throws InstanceTooLarge beyond the cap.
Clustering exhaustive_oracle(const FeatureMatrix& matrix, int k);

// Renumbers clusters by ascending first-member row index.
Clustering relabel_canonical(const Clustering& clustering);

}  // namespace loadclust

#endif
