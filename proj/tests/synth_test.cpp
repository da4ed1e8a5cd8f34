#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "loadclust/errors.hpp"
#include "loadclust/features.hpp"
#include "loadclust/synth.hpp"

using namespace loadclust;

namespace {

SynthSpec small_spec(double jitter_a, double jitter_b, int households = 4, int days = 20) {
    SynthSpec spec;
    spec.archetypes = {
        {{"a", 200.0, 1200.0, 120.0, jitter_a, jitter_a, 1.0}, households / 2},
        {{"b", 200.0, 1200.0, 120.0, jitter_b, jitter_b, 1.0}, households - households / 2},
    };
    spec.days = days;
    spec.seed = 7;
    return spec;
}

std::vector<HouseholdRecord> pipeline_records(const SynthSpec& spec) {
    const auto readings = generate(spec);
    const auto sliced = build_day_slices(filter_window(readings), DayCalendar{}, 0.8);
    std::vector<HouseholdRecord> records;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= sliced.slices.size(); ++i) {
        if (i == sliced.slices.size() ||
            sliced.slices[i].household_id != sliced.slices[start].household_id) {
            records.push_back(representative_record(
                std::span<const EveningSlice>(sliced.slices.data() + start, i - start)));
            start = i;
        }
    }
    return records;
}

}  // namespace

TEST_CASE("generate is deterministic and in-window on working days") {
    const auto spec = small_spec(0.0, 30.0);
    const auto a = generate(spec);
    const auto b = generate(spec);
    REQUIRE(a.size() == b.size());
    CHECK(a.size() == 4u * 20u * 48u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].household_id == b[i].household_id);
        CHECK(a[i].epoch_seconds == b[i].epoch_seconds);
        CHECK(a[i].watts == b[i].watts);
    }
    // All readings fall in [16:00, 20:00) on working days.
    const DayCalendar calendar;
    for (const auto& r : a) {
        const std::int64_t sod = ((r.epoch_seconds % 86400) + 86400) % 86400;
        CHECK(sod >= kWindowStartSecondOfDay);
        CHECK(sod < kWindowEndSecondOfDay);
        CHECK(is_working_day(civil_from_days(r.epoch_seconds / 86400), calendar));
    }
    CHECK(filter_window(a).size() == a.size());
}

TEST_CASE("zero jitter yields zero flexibility and constant daily energy") {
    const auto spec = small_spec(0.0, 0.0);
    const auto records = pipeline_records(spec);
    REQUIRE(records.size() == 4);
    for (const auto& rec : records) {
        CHECK(rec.flex_max == 0.0);
        CHECK(rec.flex_min == 0.0);
    }

    // Daily energies identical across days per household.
    const auto readings = generate(spec);
    std::map<std::pair<std::string, std::int64_t>, double> daily;
    for (const auto& r : readings) {
        daily[{r.household_id, r.epoch_seconds / 86400}] += r.watts;
    }
    std::map<std::string, std::set<double>> distinct;
    for (const auto& [key, total] : daily) distinct[key.first].insert(total);
    for (const auto& [id, totals] : distinct) CHECK(totals.size() == 1);
}

TEST_CASE("higher jitter raises measured flexibility") {
    const auto records = pipeline_records(small_spec(2.0, 50.0, 8, 60));
    REQUIRE(records.size() == 8);
    double low = 0.0, high = 0.0;
    for (std::size_t i = 0; i < 4; ++i) low += records[i].flex_max;
    for (std::size_t i = 4; i < 8; ++i) high += records[i].flex_max;
    CHECK(high / 4 > 4.0 * (low / 4 + 1.0));
}

TEST_CASE("ground_truth_labels counts and stability") {
    auto spec = small_spec(0.0, 30.0, 90, 10);
    const auto labels = ground_truth_labels(spec);
    CHECK(labels.size() == 90);
    const auto count_a = std::count_if(labels.begin(), labels.end(),
                                       [](const auto& kv) { return kv.second == "a"; });
    CHECK(count_a == 45);

    // Labels do not depend on the day count.
    auto more_days = spec;
    more_days.days = 50;
    CHECK(ground_truth_labels(more_days) == labels);

    // Empty archetype list and tiny day counts are rejected.
    SynthSpec bad;
    bad.days = 10;
    CHECK_THROWS_AS(generate(bad), BadCount);
    auto short_spec = spec;
    short_spec.days = 1;
    CHECK_THROWS_AS(generate(short_spec), BadCount);
}

TEST_CASE("default corpus spec matches the study scale") {
    const auto spec = default_corpus_spec(1);
    spec.validate();
    int households = 0;
    for (const auto& g : spec.archetypes) households += g.households;
    CHECK(households == 180);
    CHECK(spec.days == 250);
    CHECK(spec.archetypes.size() == 4);
}
