#include "loadclust/calendar.hpp"

#include <cstdio>

#include "loadclust/errors.hpp"

namespace loadclust {

// Civil/day conversions after Howard Hinnant's algorithms.
std::int64_t days_from_civil(const Date& d) {
    const int y = d.year - (d.month <= 2);
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy =
        (153u * (static_cast<unsigned>(d.month) + (d.month > 2 ? -3 : 9)) + 2) / 5 +
        static_cast<unsigned>(d.day) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned day = doy - (153 * mp + 2) / 5 + 1;
    const unsigned month = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (month <= 2)), static_cast<int>(month),
                static_cast<int>(day)};
}

Weekday weekday_of(const Date& d) {
    const std::int64_t z = days_from_civil(d);
    return static_cast<Weekday>(((z % 7) + 11) % 7);  // 1970-01-01 was a Thursday
}

std::string to_string(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

Date parse_date(const std::string& s) {
    int y = 0, m = 0, day = 0;
    char trailing = 0;
    if (std::sscanf(s.c_str(), "%d-%d-%d%c", &y, &m, &day, &trailing) != 3 ||
        m < 1 || m > 12 || day < 1 || day > 31) {
        throw MalformedLine("invalid date: " + s);
    }
    Date d{y, m, day};
    if (civil_from_days(days_from_civil(d)) != d) {
        throw MalformedLine("non-existent date: " + s);
    }
    return d;
}

bool is_working_day(const Date& date, const DayCalendar& calendar) {
    if (calendar.weekend_days.contains(weekday_of(date))) return false;
    return !calendar.holidays.contains(date);
}

}  // namespace loadclust
