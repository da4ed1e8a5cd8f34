// Command-line front end: ingestion -> features -> clustering -> indexes ->
// sweeps, with reproducible seeds and plot-ready outputs.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "loadclust/errors.hpp"
#include "loadclust/experiments.hpp"
#include "loadclust/features.hpp"
#include "loadclust/ingest.hpp"
#include "loadclust/io.hpp"
#include "loadclust/kmeans.hpp"
#include "loadclust/synth.hpp"
#include "loadclust/validity.hpp"

#ifndef LOADCLUST_VERSION
#define LOADCLUST_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace loadclust;

namespace {

struct CommonOptions {
    std::string input;
    std::string output_dir = ".";
    std::uint64_t seed = 0;
    int k = 4;
    std::string attrs = "total_usage,flex_max,flex_min";
    int restarts = 25;
    double min_completeness = 0.8;
    std::string holidays;
    std::string dbi_policy = "suppress";
    std::string format = "csv";
    bool display_2dp = false;
    bool no_normalize = false;
    int min_cluster_size = 0;
    int local_offset_minutes = 0;
    std::string clustering_path;
};

std::vector<std::string> split_attrs(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

KMeansConfig make_config(const CommonOptions& opt) {
    KMeansConfig config;
    config.restarts = opt.restarts;
    config.seed = opt.seed;
    config.min_cluster_size = opt.min_cluster_size;
    return config;
}

SingletonPolicy parse_policy(const std::string& s) {
    if (s == "exclude") return SingletonPolicy::Exclude;
    if (s == "suppress") return SingletonPolicy::Suppress;
    throw CLI::ValidationError("--dbi-policy", "must be exclude or suppress");
}

// Every command writes its manifest last, after all listed outputs exist.
void write_manifest(const std::string& command, const CommonOptions& opt,
                    const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["seed"] = opt.seed;
    j["config"] = {{"restarts", opt.restarts},
                   {"max_iterations", KMeansConfig{}.max_iterations},
                   {"tolerance", KMeansConfig{}.tolerance},
                   {"seed", opt.seed},
                   {"min_cluster_size", opt.min_cluster_size}};
    j["outputs"] = outputs;
    j["tool_version"] = LOADCLUST_VERSION;
    write_file((fs::path(opt.output_dir) / ("manifest_" + command + ".json")).string(),
               j.dump(2) + "\n");
}

std::vector<HouseholdRecord> load_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return read_records(in);
}

FeatureMatrix records_to_matrix(const std::vector<HouseholdRecord>& records,
                                const CommonOptions& opt) {
    FeatureMatrix m = build_matrix(records, split_attrs(opt.attrs));
    return opt.no_normalize ? m : normalize(m);
}

DayCalendar load_calendar(const CommonOptions& opt) {
    DayCalendar calendar;
    if (!opt.holidays.empty()) {
        std::ifstream in(opt.holidays);
        if (!in) throw IoError("cannot open " + opt.holidays);
        calendar.holidays = read_holidays(in);
    }
    return calendar;
}

std::string output_path(const CommonOptions& opt, const std::string& name) {
    return (fs::path(opt.output_dir) / name).string();
}

// Reconstructs a Clustering over `matrix` from persisted assignments+metadata.
Clustering load_clustering(const CommonOptions& opt, FeatureMatrix& matrix,
                           const std::vector<HouseholdRecord>& records) {
    const fs::path csv_path(opt.clustering_path);
    fs::path meta_path = csv_path;
    meta_path.replace_extension(".meta.json");

    std::vector<std::string> attrs;
    Clustering c = clustering_from_metadata_json(read_file(meta_path.string()), &attrs);

    CommonOptions matrix_opt = opt;
    std::string joined;
    for (const auto& a : attrs) joined += (joined.empty() ? "" : ",") + a;
    matrix_opt.attrs = joined;
    matrix = records_to_matrix(records, matrix_opt);

    std::ifstream in(csv_path);
    if (!in) throw IoError("cannot open " + csv_path.string());
    const auto pairs = read_assignments(in);
    std::map<std::string, int> by_id(pairs.begin(), pairs.end());
    c.assignments.clear();
    for (const auto& id : matrix.row_ids) {
        const auto it = by_id.find(id);
        if (it == by_id.end()) throw IoError("no cluster assignment for " + id);
        c.assignments.push_back(it->second);
    }
    return c;
}

int cmd_synth(const CommonOptions& opt, const std::string& corpus, int households, int days) {
    fs::create_directories(opt.output_dir);
    const SynthSpec spec = corpus == "two-archetype"
                               ? two_archetype_spec(opt.seed, households / 2, days)
                               : default_corpus_spec(opt.seed, households, days);
    const auto readings = generate(spec);
    const auto labels = ground_truth_labels(spec);

    const std::string readings_path = output_path(opt, "readings.csv");
    const std::string truth_path = output_path(opt, "ground_truth.csv");
    {
        std::ofstream out(readings_path, std::ios::binary);
        write_readings(out, readings);
    }
    {
        std::ofstream out(truth_path, std::ios::binary);
        write_ground_truth(out, labels);
    }
    write_manifest("synth", opt, {}, {readings_path, truth_path});
    return 0;
}

int cmd_features(const CommonOptions& opt) {
    fs::create_directories(opt.output_dir);
    std::ifstream in(opt.input);
    if (!in) throw IoError("cannot open " + opt.input);
    const ParseResult parsed = parse_readings(in);
    for (const auto& issue : parsed.issues) {
        std::cerr << opt.input << ':' << issue.line_number << ": " << issue.error_code << ": "
                  << issue.message << '\n';
    }
    if (parsed.readings.empty()) throw MalformedLine("no valid readings in " + opt.input);

    const int offset = opt.local_offset_minutes * 60;
    const auto windowed = filter_window(parsed.readings, offset);
    const auto sliced = build_day_slices(windowed, load_calendar(opt), opt.min_completeness,
                                         offset);

    // Slices arrive ordered by (household, date); group runs per household.
    std::vector<HouseholdRecord> records;
    std::size_t start = 0;
    std::size_t skipped_households = 0;
    for (std::size_t i = 1; i <= sliced.slices.size(); ++i) {
        if (i == sliced.slices.size() ||
            sliced.slices[i].household_id != sliced.slices[start].household_id) {
            const std::span<const EveningSlice> group(sliced.slices.data() + start, i - start);
            if (group.size() >= 2) {
                records.push_back(representative_record(group));
            } else {
                ++skipped_households;
            }
            start = i;
        }
    }

    const std::string records_path = output_path(opt, "records.csv");
    {
        std::ofstream out(records_path, std::ios::binary);
        write_records(out, records);
    }
    const std::string report_path = output_path(opt, "ingest_report.json");
    {
        nlohmann::json j;
        j["parse_issues"] = parsed.issues.size();
        j["dropped_incomplete"] = sliced.report.dropped_incomplete;
        j["duplicate_slots"] = sliced.report.duplicate_slots;
        j["off_grid_readings"] = sliced.report.off_grid_readings;
        j["non_working_day_readings"] = sliced.report.non_working_day_readings;
        j["skipped_households"] = skipped_households;
        j["households"] = records.size();
        write_file(report_path, j.dump(2) + "\n");
    }
    write_manifest("features", opt, {opt.input}, {records_path, report_path});
    return 0;
}

int cmd_cluster(const CommonOptions& opt) {
    fs::create_directories(opt.output_dir);
    const auto records = load_records(opt.input);
    const FeatureMatrix matrix = records_to_matrix(records, opt);
    const KMeansConfig config = make_config(opt);
    const Clustering clustering = kmeans(matrix, opt.k, config);

    const std::string assignments_path = output_path(opt, "clustering.csv");
    const std::string meta_path = output_path(opt, "clustering.meta.json");
    {
        std::ofstream out(assignments_path, std::ios::binary);
        write_assignments(out, matrix, clustering);
    }
    write_file(meta_path, clustering_metadata_json(clustering, config, matrix.attribute_names));
    write_manifest("cluster", opt, {opt.input}, {assignments_path, meta_path});
    return 0;
}

int cmd_indexes(const CommonOptions& opt) {
    fs::create_directories(opt.output_dir);
    const auto records = load_records(opt.input);
    FeatureMatrix matrix;
    const Clustering clustering = load_clustering(opt, matrix, records);
    const IndexReport report = index_report(clustering, matrix, parse_policy(opt.dbi_policy));

    const std::string report_path = output_path(opt, "indexes.json");
    write_file(report_path, index_report_to_json(report));
    write_manifest("indexes", opt, {opt.input, opt.clustering_path}, {report_path});
    return 0;
}

int cmd_sweep(const CommonOptions& opt, SweepKind kind, int k_min, int k_max) {
    fs::create_directories(opt.output_dir);
    const auto records = load_records(opt.input);
    CommonOptions base_opt = opt;
    base_opt.attrs = "total_usage,flex_max,flex_min";
    const FeatureMatrix matrix =
        kind == SweepKind::Clusters ? records_to_matrix(records, opt)
                                    : records_to_matrix(records, base_opt);
    const KMeansConfig config = make_config(opt);

    SweepResult result;
    switch (kind) {
        case SweepKind::Clusters:
            result = sweep_clusters(matrix, k_min, k_max, config);
            break;
        case SweepKind::AttributeCount:
            result = sweep_attribute_count(matrix, opt.seed, config);
            break;
        case SweepKind::AttributeQuality:
            result = sweep_attribute_quality(matrix, opt.seed, config);
            break;
    }

    std::vector<std::string> outputs;
    const std::string stem = "sweep_" + to_string(kind) + "_" + std::to_string(opt.seed);
    if (opt.format == "json") {
        const std::string path = output_path(opt, stem + ".json");
        write_file(path, sweep_to_json(result));
        outputs.push_back(path);
    } else {
        const std::string path = output_path(opt, stem + ".csv");
        write_file(path, emit_table(result, TableFormat::Csv, opt.display_2dp, false));
        outputs.push_back(path);
        if (kind == SweepKind::AttributeCount) {
            const std::string adjusted_path =
                output_path(opt, "sweep_" + to_string(kind) + "_adjusted_" +
                                     std::to_string(opt.seed) + ".csv");
            write_file(adjusted_path,
                       emit_table(result, TableFormat::Csv, opt.display_2dp, true));
            outputs.push_back(adjusted_path);
        }
    }
    const std::string command = kind == SweepKind::Clusters ? "sweep-k"
                                : kind == SweepKind::AttributeCount ? "sweep-attrs"
                                                                    : "sweep-quality";
    write_manifest(command, opt, {opt.input}, outputs);
    return 0;
}

int cmd_plotdata(const CommonOptions& opt) {
    fs::create_directories(opt.output_dir);
    const auto records = load_records(opt.input);
    FeatureMatrix matrix;
    const Clustering clustering = load_clustering(opt, matrix, records);

    const auto wanted = split_attrs(opt.attrs);
    if (wanted.size() != 2 && wanted.size() != 3) {
        throw UnknownAttribute("plotdata needs 2 or 3 attribute names");
    }
    std::vector<std::size_t> cols;
    for (const auto& name : wanted) {
        const auto idx = matrix.attribute_index(name);
        if (!idx) throw UnknownAttribute("attribute not in clustering: " + name);
        cols.push_back(*idx);
    }

    std::ostringstream out;
    for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
        for (const std::size_t c : cols) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g ", matrix.rows[r][c]);
            out << buf;
        }
        out << clustering.assignments[r] << '\n';
    }
    const std::string plot_path = output_path(opt, "plot.dat");
    write_file(plot_path, out.str());
    write_manifest("plotdata", opt, {opt.input, opt.clustering_path}, {plot_path});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Household load-profile clustering toolkit"};
    app.set_version_flag("--version", LOADCLUST_VERSION);
    app.require_subcommand(1);

    CommonOptions opt;
    std::string corpus = "default";
    int households = 180;
    int days = 250;
    int k_min = 2;
    int k_max = 20;

    const auto add_common = [&](CLI::App* cmd, bool needs_input) {
        if (needs_input) {
            cmd->add_option("--input", opt.input, "Input file")->required();
        }
        cmd->add_option("--output-dir", opt.output_dir, "Output directory");
        cmd->add_option("--seed", opt.seed, "RNG seed");
        cmd->add_option("--restarts", opt.restarts, "k-means restarts")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--format", opt.format, "Table format")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_flag("--display-2dp", opt.display_2dp, "Round table cells to 2 decimals");
        return cmd;
    };

    auto* synth = app.add_subcommand("synth", "Generate a synthetic reading corpus");
    add_common(synth, false);
    synth->add_option("--corpus", corpus, "Corpus preset")
        ->check(CLI::IsMember({"default", "two-archetype"}));
    synth->add_option("--households", households, "Household count")->check(CLI::PositiveNumber);
    synth->add_option("--days", days, "Working days")->check(CLI::Range(2, 100000));

    auto* features = app.add_subcommand("features", "Readings to household records");
    add_common(features, true);
    features->add_option("--min-completeness", opt.min_completeness, "Minimum slice completeness")
        ->check(CLI::Range(0.0, 1.0));
    features->add_option("--holidays", opt.holidays, "Holiday calendar file");
    features->add_option("--local-offset-minutes", opt.local_offset_minutes,
                         "Local time offset from UTC, minutes");

    auto* cluster = app.add_subcommand("cluster", "Records to k-means clustering");
    add_common(cluster, true);
    cluster->add_option("--k", opt.k, "Cluster count")->check(CLI::PositiveNumber);
    cluster->add_option("--attrs", opt.attrs, "Comma-separated attribute names");
    cluster->add_option("--min-cluster-size", opt.min_cluster_size,
                        "Merge singletons when >= 2");
    cluster->add_flag("--no-normalize", opt.no_normalize, "Skip min-max normalization");

    auto* indexes = app.add_subcommand("indexes", "Validity indexes for a clustering");
    add_common(indexes, true);
    indexes->add_option("--clustering", opt.clustering_path, "clustering.csv path")->required();
    indexes->add_option("--dbi-policy", opt.dbi_policy, "Singleton policy")
        ->check(CLI::IsMember({"exclude", "suppress"}));
    indexes->add_flag("--no-normalize", opt.no_normalize, "Skip min-max normalization");

    auto* sweep_k = app.add_subcommand("sweep-k", "Index sweep over cluster counts");
    add_common(sweep_k, true);
    sweep_k->add_option("--k-min", k_min, "Lowest K")->check(CLI::Range(2, 10000));
    sweep_k->add_option("--k-max", k_max, "Highest K")->check(CLI::Range(2, 10000));
    sweep_k->add_option("--attrs", opt.attrs, "Comma-separated attribute names");

    auto* sweep_attrs = app.add_subcommand("sweep-attrs", "Index sweep over attribute counts");
    add_common(sweep_attrs, true);

    auto* sweep_quality =
        app.add_subcommand("sweep-quality", "Index sweep over attribute randomness");
    add_common(sweep_quality, true);

    auto* plotdata = app.add_subcommand("plotdata", "Scatter-plot data for a clustering");
    add_common(plotdata, true);
    plotdata->add_option("--clustering", opt.clustering_path, "clustering.csv path")->required();
    plotdata->add_option("--attrs", opt.attrs, "2 or 3 attribute names");
    plotdata->add_flag("--no-normalize", opt.no_normalize, "Skip min-max normalization");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) return cmd_synth(opt, corpus, households, days);
        if (features->parsed()) return cmd_features(opt);
        if (cluster->parsed()) return cmd_cluster(opt);
        if (indexes->parsed()) return cmd_indexes(opt);
        if (sweep_k->parsed()) return cmd_sweep(opt, SweepKind::Clusters, k_min, k_max);
        if (sweep_attrs->parsed()) return cmd_sweep(opt, SweepKind::AttributeCount, 0, 0);
        if (sweep_quality->parsed()) return cmd_sweep(opt, SweepKind::AttributeQuality, 0, 0);
        if (plotdata->parsed()) return cmd_plotdata(opt);
    } catch (const Error& e) {
        std::cerr << e.code() << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
