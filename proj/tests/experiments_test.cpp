#include <doctest.h>

#include <random>
#include <sstream>

#include "loadclust/errors.hpp"
#include "loadclust/experiments.hpp"
#include "loadclust/rng.hpp"

using namespace loadclust;

namespace {

// Four well-separated blobs in 3 attributes, normalized-ish scale.
FeatureMatrix blob_matrix(std::size_t per_blob = 12, std::uint64_t seed = 2) {
    const double centres[4][3] = {
        {0.1, 0.1, 0.1}, {0.1, 0.9, 0.8}, {0.9, 0.1, 0.9}, {0.9, 0.9, 0.2}};
    auto rng = make_engine(seed, 0);
    FeatureMatrix m;
    m.attribute_names = {"total_usage", "flex_max", "flex_min"};
    for (int b = 0; b < 4; ++b) {
        for (std::size_t i = 0; i < per_blob; ++i) {
            std::vector<double> row(3);
            for (std::size_t h = 0; h < 3; ++h) {
                row[h] = centres[b][h] + (uniform01(rng) - 0.5) * 0.08;
            }
            m.row_ids.push_back("H" + std::to_string(m.rows.size()));
            m.rows.push_back(std::move(row));
        }
    }
    return m;
}

}  // namespace

TEST_CASE("sweep_clusters row shape") {
    const auto m = blob_matrix();
    KMeansConfig config;
    config.seed = 3;

    const auto single = sweep_clusters(m, 4, 4, config);
    CHECK(single.rows.size() == 1);
    CHECK(single.rows[0].variable == 4);

    const auto sweep = sweep_clusters(m, 2, 8, config);
    CHECK(sweep.rows.size() == 7);
    for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
        CHECK(sweep.rows[i].variable == static_cast<int>(i) + 2);
        CHECK(sweep.rows[i].report.ball ==
              doctest::Approx(sweep.rows[i].report.mia * sweep.rows[i].report.mia)
                  .epsilon(1e-9));
    }
    CHECK_THROWS_AS(sweep_clusters(m, 1, 4, config), TooManyClusters);
}

TEST_CASE("sweep_attribute_count rows H=2..7 with exact adjusted reports") {
    const auto m = blob_matrix();
    KMeansConfig config;
    config.seed = 5;
    const auto sweep = sweep_attribute_count(m, 7, config);
    REQUIRE(sweep.rows.size() == 6);
    for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
        const auto& row = sweep.rows[i];
        CHECK(row.variable == static_cast<int>(i) + 2);
        CHECK(row.report.h == row.variable);
        REQUIRE(row.adjusted.has_value());
        const double h = row.variable;
        CHECK(row.adjusted->mia == row.report.mia / h);
        CHECK(row.adjusted->ball == row.report.ball / h);
        if (row.report.cdi) CHECK(*row.adjusted->cdi == *row.report.cdi / h);
        if (row.report.smi) CHECK(*row.adjusted->smi == *row.report.smi / h);
        if (row.report.dbi) CHECK(*row.adjusted->dbi == *row.report.dbi / h);
    }

    // Deterministic given the seed.
    const auto again = sweep_attribute_count(m, 7, config);
    for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
        CHECK(sweep.rows[i].report.mia == again.rows[i].report.mia);
        CHECK(sweep.rows[i].report.ball == again.rows[i].report.ball);
    }
}

TEST_CASE("sweep_attribute_quality keeps H at 3 and row 0 is the base report") {
    const auto m = blob_matrix();
    KMeansConfig config;
    config.seed = 11;
    const auto sweep = sweep_attribute_quality(m, 11, config);
    REQUIRE(sweep.rows.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(sweep.rows[i].variable == static_cast<int>(i));
        CHECK(sweep.rows[i].report.h == 3);
    }
    const auto base = sweep_clusters(m, 4, 4, config);
    CHECK(sweep.rows[0].report.mia == doctest::Approx(base.rows[0].report.mia).epsilon(1e-12));
    CHECK(sweep.rows[0].report.ball == doctest::Approx(base.rows[0].report.ball).epsilon(1e-12));
}

TEST_CASE("emit_table csv shape and absent dbi cell") {
    SweepResult result;
    result.kind = SweepKind::Clusters;
    SweepRow row;
    row.variable = 11;
    row.report.mia = 0.25;
    row.report.cdi = 0.49;
    row.report.smi = 0.71;
    row.report.dbi = std::nullopt;
    row.report.ball = 0.0625;
    row.report.k = 11;
    row.report.h = 3;
    result.rows.push_back(row);

    const std::string csv = emit_table(result, TableFormat::Csv, true);
    std::istringstream in(csv);
    std::string header, line;
    std::getline(in, header);
    std::getline(in, line);
    CHECK(header == "variable,mia,cdi,smi,dbi,ball");
    CHECK(line == "11,0.25,0.49,0.71,,0.06");

    const std::string json_text = emit_table(result, TableFormat::Json);
    CHECK(json_text.find("\"dbi\": null") != std::string::npos);
}

TEST_CASE("emit_table emits one row per K over a wide sweep") {
    FeatureMatrix m = blob_matrix(6);  // 24 rows
    KMeansConfig config;
    config.restarts = 5;
    const auto sweep = sweep_clusters(m, 2, 20, config);
    const std::string csv = emit_table(sweep, TableFormat::Csv, true);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 20);  // header + 19 rows
}

TEST_CASE("sweep json round-trip") {
    const auto m = blob_matrix();
    KMeansConfig config;
    config.seed = 13;
    const auto sweep = sweep_attribute_count(m, 13, config);
    const auto back = sweep_from_json(sweep_to_json(sweep));
    CHECK(back.kind == sweep.kind);
    CHECK(back.seed == sweep.seed);
    REQUIRE(back.rows.size() == sweep.rows.size());
    for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
        CHECK(back.rows[i].variable == sweep.rows[i].variable);
        CHECK(back.rows[i].report.mia == sweep.rows[i].report.mia);
        CHECK(back.rows[i].report.ball == sweep.rows[i].report.ball);
        CHECK(back.rows[i].report.cdi == sweep.rows[i].report.cdi);
        CHECK(back.rows[i].report.dbi == sweep.rows[i].report.dbi);
        CHECK(back.rows[i].report.flags == sweep.rows[i].report.flags);
        CHECK(back.rows[i].adjusted.has_value() == sweep.rows[i].adjusted.has_value());
        if (back.rows[i].adjusted) {
            CHECK(back.rows[i].adjusted->mia == sweep.rows[i].adjusted->mia);
        }
    }
}
