#ifndef LOADCLUST_CALENDAR_HPP
#define LOADCLUST_CALENDAR_HPP

#include <compare>
#include <cstdint>
#include <set>
#include <string>

namespace loadclust {

struct Date {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    auto operator<=>(const Date&) const = default;
};

enum class Weekday { Sunday = 0, Monday, Tuesday, Wednesday, Thursday, Friday, Saturday };

// Days since 1970-01-01 (proleptic Gregorian).
std::int64_t days_from_civil(const Date& d);
Date civil_from_days(std::int64_t z);
Weekday weekday_of(const Date& d);

std::string to_string(const Date& d);          // YYYY-MM-DD
Date parse_date(const std::string& s);         // throws MalformedLine

struct DayCalendar {
    std::set<Weekday> weekend_days{Weekday::Saturday, Weekday::Sunday};
    std::set<Date> holidays;
};

bool is_working_day(const Date& date, const DayCalendar& calendar);

}  // namespace loadclust

#endif
