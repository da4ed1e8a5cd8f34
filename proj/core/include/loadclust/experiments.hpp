#ifndef LOADCLUST_EXPERIMENTS_HPP
#define LOADCLUST_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loadclust/validity.hpp"

namespace loadclust {

enum class SweepKind { Clusters, AttributeCount, AttributeQuality };

std::string to_string(SweepKind kind);
SweepKind sweep_kind_from_string(const std::string& s);

struct SweepRow {
    int variable = 0;  // cluster count, attribute count, or random-replacement count
    IndexReport report;
    std::optional<IndexReport> adjusted;
};

struct SweepResult {
    SweepKind kind = SweepKind::Clusters;
    std::vector<SweepRow> rows;  // ordered by ascending variable
    std::uint64_t seed = 0;
    KMeansConfig config;
};

// One row per K in [k_min, k_max]; DBI policy suppress so singleton-bearing
// K values yield an absent DBI with a flag.
SweepResult sweep_clusters(const FeatureMatrix& matrix, int k_min, int k_max,
                           const KMeansConfig& config);

// K fixed at 4. Rows for H = 2 (drop flex_min), H = 3 (all real), and
// H = 4..7 (3 real + 1..4 uniform random columns). Each row carries both the
// raw report and the attribute-count-adjusted variant.
SweepResult sweep_attribute_count(const FeatureMatrix& matrix, std::uint64_t seed,
                                  const KMeansConfig& config);

// K fixed at 4; rows for replace_count = 0..3 with the last real attributes
// substituted by uniform random columns. H stays 3 throughout.
SweepResult sweep_attribute_quality(const FeatureMatrix& matrix, std::uint64_t seed,
                                    const KMeansConfig& config);

enum class TableFormat { Csv, Json };

// Columns variable,mia,cdi,smi,dbi,ball. Absent values render as empty csv
// cells / json null. two_dp mirrors the printed-table display; adjusted
// selects the per-row adjusted report where present.
std::string emit_table(const SweepResult& result, TableFormat format,
                       bool two_dp = false, bool adjusted = false);

std::string sweep_to_json(const SweepResult& result);
SweepResult sweep_from_json(const std::string& text);

}  // namespace loadclust

#endif
