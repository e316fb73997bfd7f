#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "leosim/geodesy.hpp"

namespace test_support {

/// Independent bisection oracle for E - e*sin(E) = M over [M - 1, M + 1]
/// widened until the root is bracketed.
inline double kepler_bisection_oracle(double mean_anomaly, double eccentricity) {
    auto f = [&](double E) { return E - eccentricity * std::sin(E) - mean_anomaly; };
    double lo = mean_anomaly - 1.5, hi = mean_anomaly + 1.5;
    while (f(lo) > 0.0) lo -= 1.0;
    while (f(hi) < 0.0) hi += 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) >= 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Scratch directory unique to the calling test binary, recreated fresh.
inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("leosim_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

} // namespace test_support
