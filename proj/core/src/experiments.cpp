#include "loadclust/experiments.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "loadclust/errors.hpp"

namespace loadclust {

namespace {

constexpr int kFixedClusterCount = 4;

std::string fmt_value(double v, bool two_dp) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), two_dp ? "%.2f" : "%.17g", v);
    return buf;
}

nlohmann::json report_to_json(const IndexReport& r) {
    nlohmann::json j;
    j["mia"] = r.mia;
    j["cdi"] = r.cdi ? nlohmann::json(*r.cdi) : nlohmann::json(nullptr);
    j["smi"] = r.smi ? nlohmann::json(*r.smi) : nlohmann::json(nullptr);
    j["dbi"] = r.dbi ? nlohmann::json(*r.dbi) : nlohmann::json(nullptr);
    j["ball"] = r.ball;
    j["k"] = r.k;
    j["h"] = r.h;
    j["flags"] = flag_names(r.flags);
    return j;
}

IndexReport report_from_json(const nlohmann::json& j) {
    IndexReport r;
    r.mia = j.at("mia").get<double>();
    if (!j.at("cdi").is_null()) r.cdi = j.at("cdi").get<double>();
    if (!j.at("smi").is_null()) r.smi = j.at("smi").get<double>();
    if (!j.at("dbi").is_null()) r.dbi = j.at("dbi").get<double>();
    r.ball = j.at("ball").get<double>();
    r.k = j.at("k").get<int>();
    r.h = j.at("h").get<int>();
    r.flags = flags_from_names(j.at("flags").get<std::vector<std::string>>());
    return r;
}

SweepRow make_row(int variable, const Clustering& clustering, const FeatureMatrix& matrix,
                  SingletonPolicy policy, bool with_adjusted) {
    SweepRow row;
    row.variable = variable;
    row.report = index_report(clustering, matrix, policy);
    if (with_adjusted) row.adjusted = adjust_for_attribute_count(row.report);
    return row;
}

}  // namespace

std::string to_string(SweepKind kind) {
    switch (kind) {
        case SweepKind::Clusters: return "clusters";
        case SweepKind::AttributeCount: return "attribute_count";
        case SweepKind::AttributeQuality: return "attribute_quality";
    }
    return "clusters";
}

SweepKind sweep_kind_from_string(const std::string& s) {
    if (s == "clusters") return SweepKind::Clusters;
    if (s == "attribute_count") return SweepKind::AttributeCount;
    if (s == "attribute_quality") return SweepKind::AttributeQuality;
    throw IoError("unknown sweep kind: " + s);
}

SweepResult sweep_clusters(const FeatureMatrix& matrix, int k_min, int k_max,
                           const KMeansConfig& config) {
    if (k_min < 2 || k_min > k_max || static_cast<std::size_t>(k_max) > matrix.row_count()) {
        throw TooManyClusters("sweep range [" + std::to_string(k_min) + "," +
                              std::to_string(k_max) + "] invalid for M=" +
                              std::to_string(matrix.row_count()));
    }
    SweepResult result;
    result.kind = SweepKind::Clusters;
    result.seed = config.seed;
    result.config = config;
    for (int k = k_min; k <= k_max; ++k) {
        const Clustering c = kmeans(matrix, k, config);
        result.rows.push_back(make_row(k, c, matrix, SingletonPolicy::Suppress, false));
    }
    return result;
}

SweepResult sweep_attribute_count(const FeatureMatrix& matrix, std::uint64_t seed,
                                  const KMeansConfig& config) {
    SweepResult result;
    result.kind = SweepKind::AttributeCount;
    result.seed = seed;
    result.config = config;

    // H = 2: the Figure-3 pair, dropping flex_min.
    {
        FeatureMatrix two = matrix;
        const auto idx = matrix.attribute_index("flex_min");
        if (idx) {
            two.attribute_names.erase(two.attribute_names.begin() +
                                      static_cast<std::ptrdiff_t>(*idx));
            for (auto& row : two.rows) row.erase(row.begin() + static_cast<std::ptrdiff_t>(*idx));
            if (two.normalization) {
                two.normalization->erase(two.normalization->begin() +
                                         static_cast<std::ptrdiff_t>(*idx));
            }
        } else {
            two.attribute_names.pop_back();
            for (auto& row : two.rows) row.pop_back();
            if (two.normalization) two.normalization->pop_back();
        }
        const Clustering c = kmeans(two, kFixedClusterCount, config);
        result.rows.push_back(make_row(2, c, two, SingletonPolicy::Suppress, true));
    }
    // H = 3..7: the real matrix plus 0..4 random columns.
    for (int h = 3; h <= 7; ++h) {
        const FeatureMatrix m = augment_random(matrix, h - 3, seed);
        const Clustering c = kmeans(m, kFixedClusterCount, config);
        result.rows.push_back(make_row(h, c, m, SingletonPolicy::Suppress, true));
    }
    return result;
}

SweepResult sweep_attribute_quality(const FeatureMatrix& matrix, std::uint64_t seed,
                                    const KMeansConfig& config) {
    SweepResult result;
    result.kind = SweepKind::AttributeQuality;
    result.seed = seed;
    result.config = config;
    for (int replace = 0; replace <= 3; ++replace) {
        const FeatureMatrix m = substitute_random(matrix, replace, seed);
        const Clustering c = kmeans(m, kFixedClusterCount, config);
        result.rows.push_back(make_row(replace, c, m, SingletonPolicy::Suppress, false));
    }
    return result;
}

std::string emit_table(const SweepResult& result, TableFormat format, bool two_dp,
                       bool adjusted) {
    const auto pick = [&](const SweepRow& row) -> const IndexReport& {
        return (adjusted && row.adjusted) ? *row.adjusted : row.report;
    };
    if (format == TableFormat::Csv) {
        std::ostringstream out;
        out << "variable,mia,cdi,smi,dbi,ball\n";
        for (const auto& row : result.rows) {
            const IndexReport& r = pick(row);
            out << row.variable << ',' << fmt_value(r.mia, two_dp) << ','
                << (r.cdi ? fmt_value(*r.cdi, two_dp) : "") << ','
                << (r.smi ? fmt_value(*r.smi, two_dp) : "") << ','
                << (r.dbi ? fmt_value(*r.dbi, two_dp) : "") << ','
                << fmt_value(r.ball, two_dp) << '\n';
        }
        return out.str();
    }
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : result.rows) {
        nlohmann::json j = report_to_json(pick(row));
        j["variable"] = row.variable;
        rows.push_back(std::move(j));
    }
    return rows.dump(2) + "\n";
}

std::string sweep_to_json(const SweepResult& result) {
    nlohmann::json j;
    j["kind"] = to_string(result.kind);
    j["seed"] = result.seed;
    j["config"] = {{"restarts", result.config.restarts},
                   {"max_iterations", result.config.max_iterations},
                   {"tolerance", result.config.tolerance},
                   {"seed", result.config.seed},
                   {"min_cluster_size", result.config.min_cluster_size}};
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : result.rows) {
        nlohmann::json jr;
        jr["variable"] = row.variable;
        jr["report"] = report_to_json(row.report);
        jr["adjusted"] = row.adjusted ? report_to_json(*row.adjusted) : nlohmann::json(nullptr);
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

SweepResult sweep_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    SweepResult result;
    result.kind = sweep_kind_from_string(j.at("kind").get<std::string>());
    result.seed = j.at("seed").get<std::uint64_t>();
    const auto& jc = j.at("config");
    result.config.restarts = jc.at("restarts").get<int>();
    result.config.max_iterations = jc.at("max_iterations").get<int>();
    result.config.tolerance = jc.at("tolerance").get<double>();
    result.config.seed = jc.at("seed").get<std::uint64_t>();
    result.config.min_cluster_size = jc.at("min_cluster_size").get<int>();
    for (const auto& jr : j.at("rows")) {
        SweepRow row;
        row.variable = jr.at("variable").get<int>();
        row.report = report_from_json(jr.at("report"));
        if (!jr.at("adjusted").is_null()) row.adjusted = report_from_json(jr.at("adjusted"));
        result.rows.push_back(std::move(row));
    }
    return result;
}

}  // namespace loadclust
