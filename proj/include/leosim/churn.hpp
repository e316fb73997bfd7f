#pragma once

#include <string>
#include <vector>

#include "leosim/bundle.hpp"

namespace leosim {

/// Per-minute inter-satellite link change statistics over a bundle's
/// delta stream. An "instance" is a tick carrying at least one ISL
/// change; minutes are classed by their instance count (1 green,
/// 2 orange, 3+ red).
struct ChurnReport {
    struct Minute {
        std::uint32_t minute = 0;
        std::uint64_t changes = 0;
        std::uint32_t instances = 0;
        std::string cls; // none | green | orange | red
    };
    std::vector<Minute> minutes;
    std::uint64_t total_isl_count = 0;
    std::uint64_t total_changes = 0;
    double duration_minutes = 0.0;
    double mean_changes_per_minute = 0.0;
    double change_fraction = 0.0; // total changes / total ISLs
};

/// Counts link add/remove events between satellite pairs per minute.
/// Requires a bundle precomputed with the relevance filter off (the
/// full delta stream).
ChurnReport churn_report(const ScenarioBundle& bundle);

/// CSV with header minute,changes,instances,class.
std::string churn_csv(const ChurnReport& report);

/// Human-readable table with a per-minute fraction column and totals.
std::string churn_table(const ChurnReport& report);

} // namespace leosim
