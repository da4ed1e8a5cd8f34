#ifndef LOADCLUST_FEATURES_HPP
#define LOADCLUST_FEATURES_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loadclust/ingest.hpp"

namespace loadclust {

// Per-day statistics over the evening window.
struct DailyStats {
    Date date;
    int peak_minute = 0;    // minutes after 16:00, multiple of 5 in [0,235]
    int trough_minute = 0;  // same domain
    double energy_kwh = 0.0;
};

// The augmented representative record for one household.
struct HouseholdRecord {
    std::string household_id;
    double total_usage = 0.0;  // mean evening energy, kWh
    double flex_max = 0.0;     // std dev of daily peak minute
    double flex_min = 0.0;     // std dev of daily trough minute
    std::optional<std::array<double, kSlotsPerWindow>> slot_averages;
    std::vector<std::pair<std::string, double>> extra_attributes;
    int day_count = 0;
};

struct FeatureMatrix {
    std::vector<std::string> attribute_names;        // H names
    std::vector<std::string> row_ids;                // M household ids
    std::vector<std::vector<double>> rows;           // M x H
    std::optional<std::vector<std::pair<double, double>>> normalization;  // per-attribute (min,max)
    std::vector<std::string> degenerate_attributes;  // constant columns seen by normalize

    std::size_t row_count() const { return rows.size(); }
    std::size_t attribute_count() const { return attribute_names.size(); }
    std::vector<double> column(std::size_t h) const;
    std::optional<std::size_t> attribute_index(const std::string& name) const;
};

// Peak/trough argmin-argmax (earliest slot on ties) and window energy,
// rescaled by 48/filled to estimate a full window. Throws EmptySlice.
DailyStats daily_stats(const EveningSlice& slice);

// Sample (n-1) standard deviation. Throws InsufficientDays for n < 2.
double flexibility(std::span<const double> values);

// Summarises one household's qualifying slices. Throws InsufficientDays.
HouseholdRecord representative_record(std::span<const EveningSlice> slices,
                                      bool with_slot_averages = false);

constexpr const char* kDefaultAttributes[] = {"total_usage", "flex_max", "flex_min"};

// Rows in input order; names resolve to total_usage / flex_max / flex_min,
// slot_000..slot_235 (when slot averages are present) or extras.
FeatureMatrix build_matrix(std::span<const HouseholdRecord> records,
                           const std::vector<std::string>& attribute_selection);
FeatureMatrix build_matrix(std::span<const HouseholdRecord> records);

// Min-max to [0,1] per attribute; constant columns map to 0 and are flagged.
FeatureMatrix normalize(const FeatureMatrix& matrix);

// Appends `count` uniform [0,1) columns named rand_1..rand_count. Column j is
// seeded from (seed, j), so columns are independent of evaluation order and
// adding more columns never changes earlier ones.
FeatureMatrix augment_random(const FeatureMatrix& matrix, int count, std::uint64_t seed);

// Replaces the last `replace_count` attributes (back to front: flex_min, then
// flex_max, then total_usage on the default matrix) with fresh uniform [0,1)
// columns. H unchanged. Throws BadCount.
FeatureMatrix substitute_random(const FeatureMatrix& matrix, int replace_count,
                                std::uint64_t seed);

}  // namespace loadclust

#endif
