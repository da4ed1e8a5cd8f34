#include "loadclust/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "loadclust/errors.hpp"

namespace loadclust {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    if (!out.empty() && !out.back().empty() && out.back().back() == '\r') {
        out.back().pop_back();
    }
    return out;
}

double parse_double(const std::string& s, std::size_t line_number) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw MalformedLine("line " + std::to_string(line_number) + ": bad number '" + s + "'");
    }
    return v;
}

std::string slot_name(int i) {
    char buf[12];
    std::snprintf(buf, sizeof(buf), "slot_%03d", 5 * i);
    return buf;
}

}  // namespace

void write_readings(std::ostream& out, const std::vector<MeterReading>& readings) {
    out << "household_id,timestamp,watts\n";
    for (const auto& r : readings) {
        out << r.household_id << ',' << format_timestamp_utc(r.epoch_seconds) << ','
            << fmt(r.watts) << '\n';
    }
}

void write_records(std::ostream& out, const std::vector<HouseholdRecord>& records) {
    const bool with_slots = !records.empty() && records.front().slot_averages.has_value();
    out << "household_id,total_usage,flex_max,flex_min,day_count";
    if (with_slots) {
        for (int i = 0; i < kSlotsPerWindow; ++i) out << ',' << slot_name(i);
    }
    if (!records.empty()) {
        for (const auto& [name, _] : records.front().extra_attributes) out << ',' << name;
    }
    out << '\n';
    for (const auto& rec : records) {
        out << rec.household_id << ',' << fmt(rec.total_usage) << ',' << fmt(rec.flex_max)
            << ',' << fmt(rec.flex_min) << ',' << rec.day_count;
        if (with_slots) {
            for (int i = 0; i < kSlotsPerWindow; ++i) {
                out << ',' << fmt((*rec.slot_averages)[static_cast<std::size_t>(i)]);
            }
        }
        for (const auto& [_, value] : rec.extra_attributes) out << ',' << fmt(value);
        out << '\n';
    }
}

std::vector<HouseholdRecord> read_records(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty record file");
    const auto header = split_csv(line);
    if (header.size() < 5 || header[0] != "household_id" || header[1] != "total_usage" ||
        header[2] != "flex_max" || header[3] != "flex_min" || header[4] != "day_count") {
        throw IoError("unexpected record header");
    }
    const bool with_slots = header.size() >= 5 + kSlotsPerWindow && header[5] == "slot_000";
    const std::size_t extras_start = with_slots ? 5 + kSlotsPerWindow : 5;

    std::vector<HouseholdRecord> records;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv(line);
        if (fields.size() != header.size()) {
            throw MalformedLine("line " + std::to_string(line_number) + ": expected " +
                                std::to_string(header.size()) + " fields");
        }
        HouseholdRecord rec;
        rec.household_id = fields[0];
        rec.total_usage = parse_double(fields[1], line_number);
        rec.flex_max = parse_double(fields[2], line_number);
        rec.flex_min = parse_double(fields[3], line_number);
        rec.day_count = static_cast<int>(parse_double(fields[4], line_number));
        if (with_slots) {
            std::array<double, kSlotsPerWindow> slots{};
            for (int i = 0; i < kSlotsPerWindow; ++i) {
                slots[static_cast<std::size_t>(i)] =
                    parse_double(fields[5 + static_cast<std::size_t>(i)], line_number);
            }
            rec.slot_averages = slots;
        }
        for (std::size_t i = extras_start; i < fields.size(); ++i) {
            rec.extra_attributes.emplace_back(header[i], parse_double(fields[i], line_number));
        }
        records.push_back(std::move(rec));
    }
    return records;
}

void write_matrix(std::ostream& out, const FeatureMatrix& matrix) {
    out << "household_id";
    for (const auto& name : matrix.attribute_names) out << ',' << name;
    out << '\n';
    for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
        out << matrix.row_ids[r];
        for (const double v : matrix.rows[r]) out << ',' << fmt(v);
        out << '\n';
    }
}

FeatureMatrix read_matrix(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty matrix file");
    const auto header = split_csv(line);
    if (header.empty() || header[0] != "household_id") throw IoError("unexpected matrix header");

    FeatureMatrix m;
    m.attribute_names.assign(header.begin() + 1, header.end());
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv(line);
        if (fields.size() != header.size()) {
            throw MalformedLine("line " + std::to_string(line_number) + ": field count");
        }
        m.row_ids.push_back(fields[0]);
        std::vector<double> row;
        row.reserve(fields.size() - 1);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            row.push_back(parse_double(fields[i], line_number));
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

void write_assignments(std::ostream& out, const FeatureMatrix& matrix,
                       const Clustering& clustering) {
    out << "household_id,cluster\n";
    for (std::size_t r = 0; r < matrix.row_ids.size(); ++r) {
        out << matrix.row_ids[r] << ',' << clustering.assignments[r] << '\n';
    }
}

std::vector<std::pair<std::string, int>> read_assignments(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty assignment file");
    std::vector<std::pair<std::string, int>> out;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv(line);
        if (fields.size() != 2) {
            throw MalformedLine("line " + std::to_string(line_number) + ": field count");
        }
        out.emplace_back(fields[0], static_cast<int>(parse_double(fields[1], line_number)));
    }
    return out;
}

std::string clustering_metadata_json(const Clustering& clustering, const KMeansConfig& config,
                                     const std::vector<std::string>& attribute_names) {
    nlohmann::json j;
    j["k"] = clustering.k;
    j["centres"] = clustering.centres;
    j["sizes"] = clustering.sizes;
    j["wcss"] = clustering.wcss;
    j["merged_singletons"] = clustering.merged_singletons;
    j["seed"] = config.seed;
    j["restarts"] = config.restarts;
    j["attributes"] = attribute_names;
    return j.dump(2) + "\n";
}

Clustering clustering_from_metadata_json(const std::string& text,
                                         std::vector<std::string>* attribute_names) {
    const nlohmann::json j = nlohmann::json::parse(text);
    Clustering c;
    c.k = j.at("k").get<int>();
    c.centres = j.at("centres").get<std::vector<std::vector<double>>>();
    c.sizes = j.at("sizes").get<std::vector<int>>();
    c.wcss = j.at("wcss").get<double>();
    c.merged_singletons = j.value("merged_singletons", 0);
    if (attribute_names) {
        *attribute_names = j.at("attributes").get<std::vector<std::string>>();
    }
    return c;
}

void write_ground_truth(std::ostream& out, const std::map<std::string, std::string>& labels) {
    out << "household_id,archetype\n";
    for (const auto& [id, name] : labels) out << id << ',' << name << '\n';
}

std::string index_report_to_json(const IndexReport& report) {
    nlohmann::json j;
    j["mia"] = report.mia;
    j["cdi"] = report.cdi ? nlohmann::json(*report.cdi) : nlohmann::json(nullptr);
    j["smi"] = report.smi ? nlohmann::json(*report.smi) : nlohmann::json(nullptr);
    j["dbi"] = report.dbi ? nlohmann::json(*report.dbi) : nlohmann::json(nullptr);
    j["ball"] = report.ball;
    j["k"] = report.k;
    j["h"] = report.h;
    j["flags"] = flag_names(report.flags);
    return j.dump(2) + "\n";
}

IndexReport index_report_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
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

std::set<Date> read_holidays(std::istream& in) {
    std::set<Date> holidays;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        holidays.insert(parse_date(line));
    }
    return holidays;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace loadclust
