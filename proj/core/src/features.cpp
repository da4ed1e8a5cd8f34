#include "loadclust/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "loadclust/errors.hpp"
#include "loadclust/rng.hpp"

namespace loadclust {

std::vector<double> FeatureMatrix::column(std::size_t h) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row.at(h));
    return out;
}

std::optional<std::size_t> FeatureMatrix::attribute_index(const std::string& name) const {
    const auto it = std::find(attribute_names.begin(), attribute_names.end(), name);
    if (it == attribute_names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - attribute_names.begin());
}

DailyStats daily_stats(const EveningSlice& slice) {
    int peak_slot = -1;
    int trough_slot = -1;
    double sum_watts = 0.0;
    int filled = 0;
    for (int i = 0; i < kSlotsPerWindow; ++i) {
        const auto& v = slice.slots[static_cast<std::size_t>(i)];
        if (!v) continue;
        ++filled;
        sum_watts += *v;
        if (peak_slot < 0 || *v > *slice.slots[static_cast<std::size_t>(peak_slot)]) {
            peak_slot = i;
        }
        if (trough_slot < 0 || *v < *slice.slots[static_cast<std::size_t>(trough_slot)]) {
            trough_slot = i;
        }
    }
    if (filled == 0) throw EmptySlice("no filled slots for " + slice.household_id);

    DailyStats stats;
    stats.date = slice.date;
    stats.peak_minute = 5 * peak_slot;
    stats.trough_minute = 5 * trough_slot;
    // kWh over the window; partial days scaled up to a full 48-slot window.
    stats.energy_kwh = sum_watts * (5.0 / 60.0) / 1000.0 *
                       (static_cast<double>(kSlotsPerWindow) / filled);
    return stats;
}

double flexibility(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw InsufficientDays("flexibility needs at least 2 values");
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (const double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

HouseholdRecord representative_record(std::span<const EveningSlice> slices,
                                      bool with_slot_averages) {
    if (slices.size() < 2) {
        throw InsufficientDays("representative record needs at least 2 days");
    }
    std::vector<double> peaks, troughs, energies;
    peaks.reserve(slices.size());
    troughs.reserve(slices.size());
    energies.reserve(slices.size());
    std::array<double, kSlotsPerWindow> slot_sum{};
    std::array<int, kSlotsPerWindow> slot_n{};

    for (const auto& slice : slices) {
        const DailyStats d = daily_stats(slice);
        peaks.push_back(d.peak_minute);
        troughs.push_back(d.trough_minute);
        energies.push_back(d.energy_kwh);
        for (int i = 0; i < kSlotsPerWindow; ++i) {
            if (slice.slots[static_cast<std::size_t>(i)]) {
                slot_sum[static_cast<std::size_t>(i)] += *slice.slots[static_cast<std::size_t>(i)];
                ++slot_n[static_cast<std::size_t>(i)];
            }
        }
    }

    HouseholdRecord rec;
    rec.household_id = slices[0].household_id;
    rec.day_count = static_cast<int>(slices.size());
    rec.total_usage = std::accumulate(energies.begin(), energies.end(), 0.0) /
                      static_cast<double>(energies.size());
    rec.flex_max = flexibility(peaks);
    rec.flex_min = flexibility(troughs);
    if (with_slot_averages) {
        std::array<double, kSlotsPerWindow> avg{};
        for (int i = 0; i < kSlotsPerWindow; ++i) {
            avg[static_cast<std::size_t>(i)] =
                slot_n[static_cast<std::size_t>(i)] > 0
                    ? slot_sum[static_cast<std::size_t>(i)] / slot_n[static_cast<std::size_t>(i)]
                    : 0.0;
        }
        rec.slot_averages = avg;
    }
    return rec;
}

namespace {

double resolve_attribute(const HouseholdRecord& rec, const std::string& name) {
    if (name == "total_usage") return rec.total_usage;
    if (name == "flex_max") return rec.flex_max;
    if (name == "flex_min") return rec.flex_min;
    if (name.size() == 8 && name.starts_with("slot_") && rec.slot_averages) {
        const int minute = std::atoi(name.c_str() + 5);
        if (minute >= 0 && minute <= 235 && minute % 5 == 0) {
            return (*rec.slot_averages)[static_cast<std::size_t>(minute / 5)];
        }
    }
    for (const auto& [extra_name, value] : rec.extra_attributes) {
        if (extra_name == name) return value;
    }
    throw UnknownAttribute("unknown attribute '" + name + "' on household " +
                           rec.household_id);
}

std::vector<double> random_column(std::size_t rows, std::uint64_t seed, std::uint64_t stream) {
    auto engine = make_engine(seed, stream);
    std::vector<double> col(rows);
    for (auto& v : col) v = uniform01(engine);
    return col;
}

}  // namespace

FeatureMatrix build_matrix(std::span<const HouseholdRecord> records,
                           const std::vector<std::string>& attribute_selection) {
    FeatureMatrix m;
    m.attribute_names = attribute_selection;
    m.row_ids.reserve(records.size());
    m.rows.reserve(records.size());
    for (const auto& rec : records) {
        std::vector<double> row;
        row.reserve(attribute_selection.size());
        for (const auto& name : attribute_selection) {
            row.push_back(resolve_attribute(rec, name));
        }
        m.row_ids.push_back(rec.household_id);
        m.rows.push_back(std::move(row));
    }
    return m;
}

FeatureMatrix build_matrix(std::span<const HouseholdRecord> records) {
    return build_matrix(records, {std::begin(kDefaultAttributes), std::end(kDefaultAttributes)});
}

FeatureMatrix normalize(const FeatureMatrix& matrix) {
    FeatureMatrix out = matrix;
    const std::size_t h_count = matrix.attribute_count();
    std::vector<std::pair<double, double>> ranges(h_count);
    out.degenerate_attributes.clear();

    for (std::size_t h = 0; h < h_count; ++h) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (const auto& row : matrix.rows) {
            lo = std::min(lo, row[h]);
            hi = std::max(hi, row[h]);
        }
        ranges[h] = {lo, hi};
        if (lo == hi) {
            out.degenerate_attributes.push_back(matrix.attribute_names[h]);
            for (auto& row : out.rows) row[h] = 0.0;
        } else {
            for (auto& row : out.rows) row[h] = (row[h] - lo) / (hi - lo);
        }
    }
    out.normalization = std::move(ranges);
    return out;
}

FeatureMatrix augment_random(const FeatureMatrix& matrix, int count, std::uint64_t seed) {
    FeatureMatrix out = matrix;
    for (int j = 1; j <= count; ++j) {
        const auto col = random_column(matrix.row_count(), seed, static_cast<std::uint64_t>(j));
        out.attribute_names.push_back("rand_" + std::to_string(j));
        for (std::size_t r = 0; r < out.rows.size(); ++r) out.rows[r].push_back(col[r]);
    }
    if (out.normalization) {
        for (int j = 0; j < count; ++j) out.normalization->emplace_back(0.0, 1.0);
    }
    return out;
}

FeatureMatrix substitute_random(const FeatureMatrix& matrix, int replace_count,
                                std::uint64_t seed) {
    const std::size_t h_count = matrix.attribute_count();
    if (replace_count < 0 || static_cast<std::size_t>(replace_count) > h_count) {
        throw BadCount("replace_count " + std::to_string(replace_count) + " exceeds H " +
                       std::to_string(h_count));
    }
    FeatureMatrix out = matrix;
    // Distinct stream tag keeps substituted columns independent of augmented ones.
    constexpr std::uint64_t kSubstituteTag = 0x737562ULL << 32;
    for (int j = 1; j <= replace_count; ++j) {
        const std::size_t h = h_count - static_cast<std::size_t>(j);
        const auto col =
            random_column(matrix.row_count(), seed, kSubstituteTag | static_cast<std::uint64_t>(j));
        out.attribute_names[h] = "rand_" + std::to_string(j);
        for (std::size_t r = 0; r < out.rows.size(); ++r) out.rows[r][h] = col[r];
        if (out.normalization) (*out.normalization)[h] = {0.0, 1.0};
    }
    return out;
}

}  // namespace loadclust
