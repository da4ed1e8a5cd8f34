#ifndef LOADCLUST_IO_HPP
#define LOADCLUST_IO_HPP

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "loadclust/features.hpp"
#include "loadclust/kmeans.hpp"
#include "loadclust/validity.hpp"

namespace loadclust {

// Readings: household_id,timestamp,watts with header.
void write_readings(std::ostream& out, const std::vector<MeterReading>& readings);

// Household records: household_id,total_usage,flex_max,flex_min,day_count
// [,slot_000..slot_235][,extra...].
void write_records(std::ostream& out, const std::vector<HouseholdRecord>& records);
std::vector<HouseholdRecord> read_records(std::istream& in);

// Feature matrix round-trips through the record format minus day_count.
void write_matrix(std::ostream& out, const FeatureMatrix& matrix);
FeatureMatrix read_matrix(std::istream& in);

// Clustering persistence: assignments as household_id,cluster plus a JSON
// metadata document with k, centres, sizes, wcss, seed, restarts.
void write_assignments(std::ostream& out, const FeatureMatrix& matrix,
                       const Clustering& clustering);
std::vector<std::pair<std::string, int>> read_assignments(std::istream& in);
std::string clustering_metadata_json(const Clustering& clustering,
                                     const KMeansConfig& config,
                                     const std::vector<std::string>& attribute_names);
Clustering clustering_from_metadata_json(const std::string& text,
                                         std::vector<std::string>* attribute_names = nullptr);

// Ground truth: household_id,archetype.
void write_ground_truth(std::ostream& out, const std::map<std::string, std::string>& labels);

// Flat JSON object with keys mia, cdi, smi, dbi (nullable), ball, k, h, flags.
std::string index_report_to_json(const IndexReport& report);
IndexReport index_report_from_json(const std::string& text);

// Holiday calendar: one ISO-8601 date per line.
std::set<Date> read_holidays(std::istream& in);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace loadclust

#endif
