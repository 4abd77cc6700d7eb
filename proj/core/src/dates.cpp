#include "ews/dates.hpp"

#include "ews/errors.hpp"

#include <cstdio>

namespace ews {
namespace {

bool is_leap(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

int days_in_month(int y, int m) {
    static constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[m - 1];
}

}  // namespace

Date Date::parse(std::string_view iso) {
    int y = 0, m = 0, d = 0;
    char extra = 0;
    std::string buf(iso);
    if (std::sscanf(buf.c_str(), "%d-%d-%d%c", &y, &m, &d, &extra) != 3) {
        throw ParseError("invalid date '" + buf + "', expected YYYY-MM-DD");
    }
    if (m < 1 || m > 12 || d < 1 || d > days_in_month(y, m)) {
        throw ParseError("impossible calendar date '" + buf + "'");
    }
    return Date{y, m, d};
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

// Howard Hinnant's days-from-civil algorithm.
std::int64_t Date::to_days() const {
    std::int64_t y = year;
    const std::int64_t m = month;
    const std::int64_t d = day;
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const std::int64_t yoe = y - era * 400;
    const std::int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

Date Date::from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const std::int64_t doe = z - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = yoe + era * 400;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    const std::int64_t d = doy - (153 * mp + 2) / 5 + 1;
    const std::int64_t m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

Date Date::plus_days(std::int64_t n) const {
    return from_days(to_days() + n);
}

}  // namespace ews
