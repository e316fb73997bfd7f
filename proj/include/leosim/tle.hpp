#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "leosim/orbital_elements.hpp"

namespace leosim {

/// Modulo-10 checksum of the first 68 characters of a TLE line:
/// digits count at face value, each '-' counts as 1.
int tle_line_checksum(std::string_view line);

/// Parses a TLE document of 2-line records, each optionally preceded by
/// a name line. Verifies the checksum of every element line and throws
/// TleError with the 1-based document line number on mismatch or on a
/// malformed field.
std::vector<OrbitalElements> parse_tle(const std::string& text);

/// Emits 3-line records (name + two element lines) with valid checksums.
std::string format_tle(const std::vector<OrbitalElements>& elements);

} // namespace leosim
