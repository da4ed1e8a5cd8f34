#include "loadclust/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "loadclust/errors.hpp"
#include "loadclust/rng.hpp"

namespace loadclust {

namespace {

// First generated day; a Monday, so working-day iteration starts immediately.
constexpr Date kStartDate{2011, 1, 3};

std::string household_name(int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "H%03d", index);
    return buf;
}

std::vector<Date> working_dates(int days) {
    std::vector<Date> dates;
    dates.reserve(static_cast<std::size_t>(days));
    const DayCalendar calendar;  // default weekends, no holidays
    std::int64_t z = days_from_civil(kStartDate);
    while (static_cast<int>(dates.size()) < days) {
        const Date d = civil_from_days(z);
        if (is_working_day(d, calendar)) dates.push_back(d);
        ++z;
    }
    return dates;
}

// Circular slot distance so bump shapes wrap; total daily energy is then
// independent of the bump position.
int circular_slot_distance(int a, int b) {
    const int d = std::abs(a - b);
    return std::min(d, kSlotsPerWindow - d);
}

double bump(int slot_distance) {
    const double x = static_cast<double>(slot_distance) / 3.0;
    return std::exp(-x * x);
}

int jittered_slot(double mean_minute, double jitter_minutes, std::mt19937_64& rng) {
    const double minute = mean_minute + jitter_minutes * standard_normal(rng);
    const int slot = static_cast<int>(std::lround(minute / 5.0));
    return std::clamp(slot, 0, kSlotsPerWindow - 1);
}

}  // namespace

void SynthSpec::validate() const {
    if (archetypes.empty()) throw BadCount("SynthSpec needs at least one archetype");
    for (const auto& g : archetypes) {
        if (g.households < 1) throw BadCount("archetype household count must be >= 1");
        if (g.archetype.base_load < 0 || g.archetype.peak_magnitude < 0 ||
            g.archetype.peak_time_jitter < 0 || g.archetype.trough_time_jitter < 0 ||
            g.archetype.peak_time_mean < 0 || g.archetype.peak_time_mean > 235) {
            throw BadCount("archetype parameters out of range: " + g.archetype.name);
        }
    }
    if (days < 2) throw BadCount("SynthSpec needs days >= 2");
}

SynthSpec default_corpus_spec(std::uint64_t seed, int households, int days) {
    // Usage x variability grid recoverable as four clusters.
    const int per = std::max(1, households / 4);
    SynthSpec spec;
    spec.archetypes = {
        {{"low_usage_steady", 150.0, 600.0, 60.0, 4.0, 6.0, 1.0}, per},
        {{"low_usage_flexible", 150.0, 600.0, 90.0, 55.0, 60.0, 1.0}, per},
        {{"high_usage_steady", 400.0, 2500.0, 150.0, 4.0, 6.0, 1.0}, per},
        {{"high_usage_flexible", 400.0, 2500.0, 180.0, 55.0, 60.0, 1.0},
         households - 3 * per},
    };
    spec.days = days;
    spec.seed = seed;
    return spec;
}

SynthSpec two_archetype_spec(std::uint64_t seed, int households_per_archetype, int days) {
    SynthSpec spec;
    spec.archetypes = {
        {{"steady", 200.0, 1200.0, 120.0, 5.0, 5.0, 1.0}, households_per_archetype},
        {{"flexible", 200.0, 1200.0, 120.0, 60.0, 60.0, 1.0}, households_per_archetype},
    };
    spec.days = days;
    spec.seed = seed;
    return spec;
}

std::vector<MeterReading> generate(const SynthSpec& spec) {
    spec.validate();
    const auto dates = working_dates(spec.days);

    std::vector<MeterReading> readings;
    int household_index = 0;
    for (const auto& group : spec.archetypes) {
        const Archetype& a = group.archetype;
        const double trough_mean = std::fmod(a.peak_time_mean + 120.0, 240.0);
        for (int h = 0; h < group.households; ++h, ++household_index) {
            const std::string id = household_name(household_index);
            auto rng = make_engine(spec.seed, static_cast<std::uint64_t>(household_index));
            for (const Date& date : dates) {
                const int peak_slot = jittered_slot(a.peak_time_mean, a.peak_time_jitter, rng);
                const int trough_slot = jittered_slot(trough_mean, a.trough_time_jitter, rng);
                const std::int64_t day_start =
                    days_from_civil(date) * 86400 + kWindowStartSecondOfDay;
                for (int slot = 0; slot < kSlotsPerWindow; ++slot) {
                    double watts =
                        a.base_load + a.peak_magnitude * bump(circular_slot_distance(slot, peak_slot)) -
                        0.8 * a.base_load * bump(circular_slot_distance(slot, trough_slot));
                    watts = std::max(0.0, watts * a.energy_scale);
                    readings.push_back({id, day_start + slot * kSlotSeconds, watts});
                }
            }
        }
    }
    return readings;
}

std::map<std::string, std::string> ground_truth_labels(const SynthSpec& spec) {
    spec.validate();
    std::map<std::string, std::string> labels;
    int household_index = 0;
    for (const auto& group : spec.archetypes) {
        for (int h = 0; h < group.households; ++h, ++household_index) {
            labels[household_name(household_index)] = group.archetype.name;
        }
    }
    return labels;
}

}  // namespace loadclust
