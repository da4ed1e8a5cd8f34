#include "loadclust/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <utility>

#include "loadclust/errors.hpp"

namespace loadclust {

namespace {

// Splits a reading line on commas; no quoting, the format has none.
std::vector<std::string> split_fields(const std::string& line) {
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
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::int64_t parse_timestamp(const std::string& s) {
    // YYYY-MM-DD[T ]HH:MM:SS followed by Z, +HH:MM, +HHMM, -HH:MM or -HHMM.
    int y, mo, d, h, mi, sec;
    int consumed = 0;
    if (std::sscanf(s.c_str(), "%4d-%2d-%2d%*1[T ]%2d:%2d:%2d%n", &y, &mo, &d, &h,
                    &mi, &sec, &consumed) != 6 ||
        consumed == 0) {
        throw MalformedLine("unparseable timestamp: " + s);
    }
    const std::string rest = s.substr(static_cast<std::size_t>(consumed));
    int offset = 0;
    if (rest == "Z" || rest == "z") {
        offset = 0;
    } else if (!rest.empty() && (rest[0] == '+' || rest[0] == '-')) {
        int oh, om;
        char extra = 0;
        if (std::sscanf(rest.c_str() + 1, "%2d:%2d%c", &oh, &om, &extra) == 2 ||
            std::sscanf(rest.c_str() + 1, "%2d%2d%c", &oh, &om, &extra) == 2) {
            offset = (oh * 3600 + om * 60) * (rest[0] == '-' ? -1 : 1);
        } else {
            throw MalformedLine("bad timezone offset: " + s);
        }
    } else {
        throw MalformedLine("missing timezone offset: " + s);
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || sec > 60) {
        throw MalformedLine("timestamp field out of range: " + s);
    }
    const std::int64_t days = days_from_civil(Date{y, mo, d});
    return days * 86400 + h * 3600 + mi * 60 + sec - offset;
}

std::string format_timestamp_utc(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / 86400;
    std::int64_t sod = epoch_seconds % 86400;
    if (sod < 0) {
        sod += 86400;
        --days;
    }
    const Date d = civil_from_days(days);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02lld:%02lld:%02lld+00:00",
                  d.year, d.month, d.day, static_cast<long long>(sod / 3600),
                  static_cast<long long>((sod / 60) % 60),
                  static_cast<long long>(sod % 60));
    return buf;
}

int EveningSlice::filled_count() const {
    return static_cast<int>(
        std::count_if(slots.begin(), slots.end(), [](const auto& s) { return s.has_value(); }));
}

double EveningSlice::completeness() const {
    return static_cast<double>(filled_count()) / kSlotsPerWindow;
}

ParseResult parse_readings(std::istream& input) {
    ParseResult result;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(input, line)) {
        ++line_number;
        const std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        if (line_number == 1 && trimmed == "household_id,timestamp,watts") continue;

        const auto fields = split_fields(trimmed);
        if (fields.size() != 3) {
            result.issues.push_back({line_number, "MalformedLine",
                                     "expected 3 fields, got " + std::to_string(fields.size())});
            continue;
        }
        const std::string id = trim(fields[0]);
        if (id.empty()) {
            result.issues.push_back({line_number, "MalformedLine", "empty household id"});
            continue;
        }
        std::int64_t epoch;
        try {
            epoch = parse_timestamp(trim(fields[1]));
        } catch (const MalformedLine& e) {
            result.issues.push_back({line_number, "MalformedLine", e.what()});
            continue;
        }
        const std::string watts_text = trim(fields[2]);
        char* end = nullptr;
        const double watts = std::strtod(watts_text.c_str(), &end);
        if (watts_text.empty() || end != watts_text.c_str() + watts_text.size() ||
            !std::isfinite(watts)) {
            result.issues.push_back({line_number, "MalformedLine",
                                     "unparseable watts: " + watts_text});
            continue;
        }
        if (watts < 0) {
            result.issues.push_back({line_number, "NegativePower",
                                     "negative power: " + watts_text});
            continue;
        }
        result.readings.push_back({id, epoch, watts});
    }
    return result;
}

std::vector<MeterReading> filter_window(const std::vector<MeterReading>& readings,
                                        int local_offset_seconds) {
    std::vector<MeterReading> out;
    out.reserve(readings.size());
    for (const auto& r : readings) {
        const std::int64_t local = r.epoch_seconds + local_offset_seconds;
        const std::int64_t sod = ((local % 86400) + 86400) % 86400;
        if (sod >= kWindowStartSecondOfDay && sod < kWindowEndSecondOfDay) {
            out.push_back(r);
        }
    }
    return out;
}

SliceResult build_day_slices(const std::vector<MeterReading>& readings,
                             const DayCalendar& calendar, double min_completeness,
                             int local_offset_seconds) {
    SliceResult result;
    // Ordered map keeps output independent of input partitioning.
    std::map<std::pair<std::string, Date>, std::array<std::optional<double>, kSlotsPerWindow>>
        groups;

    for (const auto& r : readings) {
        const std::int64_t local = r.epoch_seconds + local_offset_seconds;
        std::int64_t days = local / 86400;
        std::int64_t sod = local % 86400;
        if (sod < 0) {
            sod += 86400;
            --days;
        }
        const Date date = civil_from_days(days);
        if (!is_working_day(date, calendar)) {
            ++result.report.non_working_day_readings;
            continue;
        }
        const std::int64_t in_window = sod - kWindowStartSecondOfDay;
        const std::int64_t slot =
            (in_window + kSlotSeconds / 2) / kSlotSeconds;  // nearest slot, +/-150s
        if (slot < 0 || slot >= kSlotsPerWindow ||
            std::llabs(in_window - slot * kSlotSeconds) > kSlotSeconds / 2) {
            ++result.report.off_grid_readings;
            continue;
        }
        auto& slots = groups[{r.household_id, date}];
        if (slots[static_cast<std::size_t>(slot)].has_value()) {
            ++result.report.duplicate_slots;  // last-value-wins
        }
        slots[static_cast<std::size_t>(slot)] = r.watts;
    }

    for (auto& [key, slots] : groups) {
        EveningSlice slice{key.first, key.second, slots};
        if (slice.completeness() < min_completeness) {
            ++result.report.dropped_incomplete;
            continue;
        }
        result.slices.push_back(std::move(slice));
    }
    return result;
}

}  // namespace loadclust
