#ifndef LOADCLUST_INGEST_HPP
#define LOADCLUST_INGEST_HPP

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "loadclust/calendar.hpp"

namespace loadclust {

// One timestamped power observation for one household. The timestamp is kept
// as a UTC instant; local civil time is obtained with a fixed offset.
struct MeterReading {
    std::string household_id;
    std::int64_t epoch_seconds = 0;  // seconds since 1970-01-01T00:00:00Z
    double watts = 0.0;
};

// ISO-8601 date-time with explicit offset ("Z", "+HH:MM" or "+HHMM"),
// e.g. 2011-03-07T16:05:00+00:00. Returns UTC epoch seconds.
std::int64_t parse_timestamp(const std::string& s);  // throws MalformedLine
std::string format_timestamp_utc(std::int64_t epoch_seconds);  // ...+00:00

constexpr int kSlotsPerWindow = 48;
constexpr int kSlotSeconds = 300;
constexpr int kWindowStartSecondOfDay = 16 * 3600;  // 16:00 local
constexpr int kWindowEndSecondOfDay = 20 * 3600;    // 20:00 local, exclusive

// One household-day's aligned 5-minute slots in the 16:00-20:00 window.
// Slot i holds the reading snapped to minute offset 5*i after 16:00.
struct EveningSlice {
    std::string household_id;
    Date date;
    std::array<std::optional<double>, kSlotsPerWindow> slots;

    int filled_count() const;
    double completeness() const;  // filled / 48
};

struct ParseIssue {
    std::size_t line_number = 0;  // 1-based
    std::string error_code;      // MalformedLine or NegativePower
    std::string message;
};

struct ParseResult {
    std::vector<MeterReading> readings;
    std::vector<ParseIssue> issues;
};

// Parses `household_id,timestamp,watts` lines. A header line equal to the
// column names is detected and skipped. Malformed lines are reported with
// their line numbers, not fatal.
ParseResult parse_readings(std::istream& input);

// Keeps readings whose local time t satisfies 16:00 <= t < 20:00.
std::vector<MeterReading> filter_window(const std::vector<MeterReading>& readings,
                                        int local_offset_seconds = 0);

struct IngestReport {
    std::size_t dropped_incomplete = 0;   // slices below min_completeness
    std::size_t duplicate_slots = 0;      // last-value-wins collisions
    std::size_t off_grid_readings = 0;    // not within +/-150s of any slot
    std::size_t non_working_day_readings = 0;
};

struct SliceResult {
    std::vector<EveningSlice> slices;  // ordered by (household_id, date)
    IngestReport report;
};

// Groups window-filtered readings by (household, working-day date) and snaps
// each to the nearest slot within half a slot spacing. Slices below
// min_completeness are dropped and counted.
SliceResult build_day_slices(const std::vector<MeterReading>& readings,
                             const DayCalendar& calendar,
                             double min_completeness,
                             int local_offset_seconds = 0);

}  // namespace loadclust

#endif
