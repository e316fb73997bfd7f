#pragma once

#include <cstdint>
#include <string>

namespace leosim {

/// Milliseconds since the Unix epoch, UTC.
using UtcMillis = std::int64_t;

constexpr std::int64_t kMillisPerSecond = 1000;
constexpr std::int64_t kMillisPerDay = 86400000;

/// Parses "YYYY-MM-DDTHH:MM:SS[.mmm]Z" (the trailing 'Z' is required).
/// Throws std::invalid_argument on any other shape.
UtcMillis parse_iso8601(const std::string& text);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ", or with ".mmm" when the value is
/// not second-aligned.
std::string format_iso8601(UtcMillis t);

/// Epoch as (year, fractional day-of-year), day 1.0 = Jan 1 00:00 UTC.
struct YearDay {
    int year;
    double day;
};

UtcMillis from_year_day(int year, double day_of_year);
YearDay to_year_day(UtcMillis t);

} // namespace leosim
