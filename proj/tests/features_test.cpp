#include <doctest.h>

#include <random>
#include <vector>

#include "loadclust/errors.hpp"
#include "loadclust/features.hpp"
#include "loadclust/rng.hpp"

using namespace loadclust;

namespace {

EveningSlice slice_with(std::vector<std::pair<int, double>> filled,
                        const std::string& id = "H1", Date date = Date{2011, 3, 7}) {
    EveningSlice s;
    s.household_id = id;
    s.date = date;
    for (const auto& [slot, watts] : filled) s.slots[static_cast<std::size_t>(slot)] = watts;
    return s;
}

EveningSlice flat_slice(double watts, const std::string& id = "H1",
                        Date date = Date{2011, 3, 7}) {
    EveningSlice s;
    s.household_id = id;
    s.date = date;
    for (auto& v : s.slots) v = watts;
    return s;
}

HouseholdRecord record(const std::string& id, double usage, double fmax, double fmin) {
    HouseholdRecord r;
    r.household_id = id;
    r.total_usage = usage;
    r.flex_max = fmax;
    r.flex_min = fmin;
    r.day_count = 2;
    return r;
}

}  // namespace

TEST_CASE("daily_stats peak position") {
    auto s = flat_slice(100.0);
    s.slots[18] = 1200.0;  // 17:30
    s.slots[3] = 50.0;
    const auto d = daily_stats(s);
    CHECK(d.peak_minute == 90);
    CHECK(d.trough_minute == 15);
}

TEST_CASE("daily_stats earliest tie wins") {
    auto s = flat_slice(100.0);
    s.slots[12] = 900.0;  // 17:00
    s.slots[30] = 900.0;  // 18:30
    const auto d = daily_stats(s);
    CHECK(d.peak_minute == 60);
}

TEST_CASE("daily_stats energy on a uniform full day") {
    const auto d = daily_stats(flat_slice(100.0));
    CHECK(d.energy_kwh == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(d.peak_minute == 0);
    CHECK(d.trough_minute == 0);
}

TEST_CASE("daily_stats rescales partial days") {
    // 24 slots at 100 W should estimate the same full-window energy.
    std::vector<std::pair<int, double>> filled;
    for (int i = 0; i < 24; ++i) filled.emplace_back(2 * i, 100.0);
    const auto d = daily_stats(slice_with(filled));
    CHECK(d.energy_kwh == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("daily_stats rejects the empty slice") {
    EveningSlice s;
    s.household_id = "H1";
    CHECK_THROWS_AS(daily_stats(s), EmptySlice);
}

TEST_CASE("daily_stats peak/trough invariant under positive scaling") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        EveningSlice s = flat_slice(0.0);
        for (auto& v : s.slots) v = uniform01(rng) * 1000.0;
        const double scale = 0.1 + uniform01(rng) * 10.0;
        EveningSlice scaled = s;
        for (auto& v : scaled.slots) v = *v * scale;
        const auto a = daily_stats(s);
        const auto b = daily_stats(scaled);
        CHECK(a.peak_minute == b.peak_minute);
        CHECK(a.trough_minute == b.trough_minute);
    }
}

TEST_CASE("flexibility hand values") {
    const std::vector<double> v1 = {60, 90, 120};
    CHECK(flexibility(v1) == doctest::Approx(30.0).epsilon(1e-12));
    const std::vector<double> v2 = {75, 75, 75};
    CHECK(flexibility(v2) == 0.0);
    const std::vector<double> v3 = {60};
    CHECK_THROWS_AS(flexibility(v3), InsufficientDays);
}

TEST_CASE("flexibility translation and scaling") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> v(2 + static_cast<std::size_t>(uniform01(rng) * 20));
        for (auto& x : v) x = uniform01(rng) * 235.0;
        const double base = flexibility(v);
        const double c = uniform01(rng) * 100.0 - 50.0;
        const double s = uniform01(rng) * 4.0 - 2.0;
        std::vector<double> shifted = v, scaled = v;
        for (auto& x : shifted) x += c;
        for (auto& x : scaled) x *= s;
        CHECK(flexibility(shifted) == doctest::Approx(base).epsilon(1e-9));
        CHECK(flexibility(scaled) == doctest::Approx(std::abs(s) * base).epsilon(1e-9));
    }
}

TEST_CASE("representative_record summarises days") {
    // Day 1: flat 100 W -> 0.4 kWh. Day 2: flat 150 W -> 0.6 kWh.
    std::vector<EveningSlice> slices = {flat_slice(100.0, "H1", Date{2011, 3, 7}),
                                        flat_slice(150.0, "H1", Date{2011, 3, 8})};
    slices[0].slots[12] = 500.0;
    slices[1].slots[24] = 600.0;
    const auto rec = representative_record(slices, true);
    CHECK(rec.day_count == 2);
    CHECK(rec.flex_min == 0.0);  // trough at slot 0 both days
    CHECK(rec.flex_max ==
          doctest::Approx(flexibility(std::vector<double>{60.0, 120.0})).epsilon(1e-12));
    REQUIRE(rec.slot_averages.has_value());
    CHECK((*rec.slot_averages)[1] == doctest::Approx(125.0));
    CHECK((*rec.slot_averages)[12] == doctest::Approx((500.0 + 150.0) / 2));
}

TEST_CASE("representative_record mean energy") {
    const std::vector<EveningSlice> slices = {flat_slice(100.0, "H1", Date{2011, 3, 7}),
                                              flat_slice(150.0, "H1", Date{2011, 3, 8})};
    const auto rec = representative_record(slices);
    CHECK(rec.total_usage == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_FALSE(rec.slot_averages.has_value());
}

TEST_CASE("representative_record needs two days") {
    const std::vector<EveningSlice> one = {flat_slice(100.0)};
    CHECK_THROWS_AS(representative_record(one), InsufficientDays);
}

TEST_CASE("build_matrix default selection and explicit selections") {
    std::vector<HouseholdRecord> records;
    for (int i = 0; i < 180; ++i) {
        records.push_back(record("H" + std::to_string(i), i * 0.01, i * 0.1, i * 0.2));
    }
    const auto m3 = build_matrix(records);
    CHECK(m3.row_count() == 180);
    CHECK(m3.attribute_count() == 3);
    CHECK(m3.attribute_names == std::vector<std::string>{"total_usage", "flex_max", "flex_min"});

    const auto m2 = build_matrix(records, {"total_usage", "flex_max"});
    CHECK(m2.attribute_count() == 2);
    CHECK(m2.rows[7][1] == doctest::Approx(0.7));

    CHECK_THROWS_AS(build_matrix(records, {"total_usgae"}), UnknownAttribute);
}

TEST_CASE("build_matrix resolves slot and extra attributes") {
    HouseholdRecord r = record("H1", 1.0, 2.0, 3.0);
    std::array<double, kSlotsPerWindow> slots{};
    slots[1] = 42.0;
    r.slot_averages = slots;
    r.extra_attributes.emplace_back("night_ratio", 0.5);
    const std::vector<HouseholdRecord> records = {r, r};
    const auto m = build_matrix(records, {"total_usage", "slot_005", "night_ratio"});
    CHECK(m.rows[0][1] == 42.0);
    CHECK(m.rows[0][2] == 0.5);
}

TEST_CASE("normalize min-max endpoints") {
    FeatureMatrix m;
    m.attribute_names = {"a"};
    m.row_ids = {"r1", "r2", "r3"};
    m.rows = {{2.0}, {4.0}, {6.0}};
    const auto n = normalize(m);
    CHECK(n.rows[0][0] == doctest::Approx(0.0));
    CHECK(n.rows[1][0] == doctest::Approx(0.5));
    CHECK(n.rows[2][0] == doctest::Approx(1.0));
    REQUIRE(n.normalization.has_value());
    CHECK((*n.normalization)[0] == std::pair<double, double>{2.0, 6.0});
    CHECK(n.degenerate_attributes.empty());
}

TEST_CASE("normalize flags constant columns") {
    FeatureMatrix m;
    m.attribute_names = {"a", "b"};
    m.row_ids = {"r1", "r2", "r3"};
    m.rows = {{5.0, 1.0}, {5.0, 2.0}, {5.0, 3.0}};
    const auto n = normalize(m);
    CHECK(n.rows[0][0] == 0.0);
    CHECK(n.rows[2][0] == 0.0);
    CHECK(n.degenerate_attributes == std::vector<std::string>{"a"});
}

TEST_CASE("normalize is idempotent and leaves [0,1] columns unchanged") {
    FeatureMatrix m;
    m.attribute_names = {"a"};
    m.row_ids = {"r1", "r2", "r3"};
    m.rows = {{0.0}, {0.25}, {1.0}};
    const auto once = normalize(m);
    const auto twice = normalize(once);
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        CHECK(once.rows[r][0] == m.rows[r][0]);
        CHECK(twice.rows[r][0] == once.rows[r][0]);
    }
}

TEST_CASE("normalize attains 0 and 1 per non-degenerate attribute") {
    std::mt19937_64 rng(17);
    FeatureMatrix m;
    m.attribute_names = {"a", "b", "c"};
    for (int r = 0; r < 20; ++r) {
        m.row_ids.push_back("r" + std::to_string(r));
        m.rows.push_back({uniform01(rng) * 9, uniform01(rng) - 4, uniform01(rng) * 100});
    }
    const auto n = normalize(m);
    for (std::size_t h = 0; h < 3; ++h) {
        double lo = 1e9, hi = -1e9;
        for (const auto& row : n.rows) {
            lo = std::min(lo, row[h]);
            hi = std::max(hi, row[h]);
        }
        CHECK(lo == doctest::Approx(0.0));
        CHECK(hi == doctest::Approx(1.0));
    }
}

TEST_CASE("augment_random basics") {
    std::vector<HouseholdRecord> records = {record("H1", 1, 2, 3), record("H2", 4, 5, 6)};
    const auto m = build_matrix(records);

    CHECK(augment_random(m, 0, 9).attribute_names == m.attribute_names);

    const auto m8 = augment_random(m, 5, 9);
    CHECK(m8.attribute_count() == 8);
    CHECK(m8.attribute_names[3] == "rand_1");
    CHECK(m8.attribute_names[7] == "rand_5");
    for (const auto& row : m8.rows) {
        for (std::size_t h = 3; h < 8; ++h) {
            CHECK(row[h] >= 0.0);
            CHECK(row[h] < 1.0);
        }
    }

    // Determinism and nesting: same seed reproduces columns bit-identically,
    // and earlier columns do not change when more are added.
    const auto again = augment_random(m, 5, 9);
    const auto fewer = augment_random(m, 2, 9);
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        for (std::size_t h = 3; h < 8; ++h) CHECK(m8.rows[r][h] == again.rows[r][h]);
        for (std::size_t h = 3; h < 5; ++h) CHECK(m8.rows[r][h] == fewer.rows[r][h]);
        // Dropping rand_* recovers the input exactly.
        for (std::size_t h = 0; h < 3; ++h) CHECK(m8.rows[r][h] == m.rows[r][h]);
    }
}

TEST_CASE("substitute_random replaces from the back") {
    std::vector<HouseholdRecord> records = {record("H1", 1, 2, 3), record("H2", 4, 5, 6)};
    const auto m = build_matrix(records);

    const auto zero = substitute_random(m, 0, 9);
    CHECK(zero.rows == m.rows);

    const auto one = substitute_random(m, 1, 9);
    CHECK(one.attribute_count() == 3);
    CHECK(one.attribute_names[0] == "total_usage");
    CHECK(one.attribute_names[1] == "flex_max");
    CHECK(one.attribute_names[2] == "rand_1");
    CHECK(one.rows[0][0] == m.rows[0][0]);
    CHECK(one.rows[0][1] == m.rows[0][1]);

    const auto all = substitute_random(m, 3, 9);
    CHECK(all.attribute_count() == 3);
    for (const auto& name : all.attribute_names) CHECK(name.starts_with("rand_"));
    // Nested: the flex_min column is identical between replace 1 and replace 3.
    CHECK(all.rows[0][2] == one.rows[0][2]);

    CHECK_THROWS_AS(substitute_random(m, 4, 9), BadCount);
}
