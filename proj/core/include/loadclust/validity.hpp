#ifndef LOADCLUST_VALIDITY_HPP
#define LOADCLUST_VALIDITY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "loadclust/kmeans.hpp"

namespace loadclust {

enum class IndexFlag : std::uint32_t {
    SingletonClusterPresent = 1u << 0,
    CoincidentCentres = 1u << 1,
    DbiSuppressed = 1u << 2,
    OutOfRangeDistance = 1u << 3,
    SingleCluster = 1u << 4,
    FewerThanTwoEligibleClusters = 1u << 5,
};

using IndexFlags = std::uint32_t;

inline bool has_flag(IndexFlags flags, IndexFlag f) {
    return (flags & static_cast<std::uint32_t>(f)) != 0;
}
inline void set_flag(IndexFlags& flags, IndexFlag f) {
    flags |= static_cast<std::uint32_t>(f);
}
std::vector<std::string> flag_names(IndexFlags flags);
IndexFlags flags_from_names(const std::vector<std::string>& names);

enum class SingletonPolicy { Exclude, Suppress };

struct IndexReport {
    double mia = 0.0;
    std::optional<double> cdi;
    std::optional<double> smi;
    std::optional<double> dbi;
    double ball = 0.0;
    int k = 0;
    int h = 0;
    IndexFlags flags = 0;
};

// Attribute-count-normalized distance between two profiles:
// sqrt((1/H) * sum_h (a_h - b_h)^2). Throws LengthMismatch.
double profile_distance(std::span<const double> a, std::span<const double> b);

// Root-mean pairwise squared distance over all ordered pairs of a set,
// self-pairs included: sqrt((1/2N) * sum_n sum_p d^2(s_n, s_p)).
double infra_set_distance(const std::vector<std::vector<double>>& members);

// sqrt((1/R) * sum_r sum_h (r_h - C_h)^2); no attribute normalization.
double scatter(const std::vector<std::vector<double>>& members,
               std::span<const double> centre);

double mia(const Clustering& clustering, const FeatureMatrix& matrix);
double cdi(const Clustering& clustering, const FeatureMatrix& matrix);
double ball(const Clustering& clustering, const FeatureMatrix& matrix);

// Maximum of alpha_ij = 1/(1 - 1/ln d(C_i, C_j)) over centre pairs.
// Conventions: d = 0 -> alpha = 1; d = 1 -> alpha = 0; d > 1 flags
// OutOfRangeDistance on the report path but still evaluates.
double smi(const Clustering& clustering);
double smi(const Clustering& clustering, IndexFlags& flags);

// Davies-Bouldin; `exclude` drops singleton clusters, `suppress` returns
// absent when any singleton exists.
std::optional<double> dbi(const Clustering& clustering, const FeatureMatrix& matrix,
                          SingletonPolicy policy);
std::optional<double> dbi(const Clustering& clustering, const FeatureMatrix& matrix,
                          SingletonPolicy policy, IndexFlags& flags);

// Divides every present index value by the attribute count h.
IndexReport adjust_for_attribute_count(const IndexReport& report);

// All five indexes plus diagnostics. Domain errors of the component indexes
// (single cluster, coincident centres) surface as flags with absent values.
IndexReport index_report(const Clustering& clustering, const FeatureMatrix& matrix,
                         SingletonPolicy policy = SingletonPolicy::Suppress);

}  // namespace loadclust

#endif
