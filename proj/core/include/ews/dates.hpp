#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ews {

/// Calendar date. Ordering and day stepping only; no timezone handling.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date&) const = default;

    /// Parses "YYYY-MM-DD". Throws ParseError on malformed or impossible dates.
    static Date parse(std::string_view iso);

    std::string to_string() const;

    Date plus_days(std::int64_t n) const;
    Date next_day() const { return plus_days(1); }

    /// Days since 1970-01-01 (proleptic Gregorian).
    std::int64_t to_days() const;
    static Date from_days(std::int64_t days);
};

}  // namespace ews
