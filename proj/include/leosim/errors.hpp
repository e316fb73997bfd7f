#pragma once

#include <stdexcept>
#include <string>

namespace leosim {

/// Scenario file is malformed or violates a schema invariant.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// TLE text is malformed or fails its checksum.
class TleError : public std::runtime_error {
public:
    explicit TleError(const std::string& what) : std::runtime_error(what) {}
};

/// Bundle file is unreadable, truncated, corrupt, or from an
/// incompatible schema version.
class BundleError : public std::runtime_error {
public:
    explicit BundleError(const std::string& what) : std::runtime_error(what) {}
};

/// Weather provider could not produce a sample (fixture miss, HTTP
/// failure). Callers on the link path fall back to clear sky.
class WeatherError : public std::runtime_error {
public:
    explicit WeatherError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace leosim
