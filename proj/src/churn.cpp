#include "leosim/churn.hpp"

#include <cstdio>
#include <sstream>

#include "leosim/errors.hpp"

namespace leosim {

ChurnReport churn_report(const ScenarioBundle& bundle) {
    if (bundle.relevance.enabled) {
        throw BundleError("churn analysis needs a bundle precomputed with relevance_filter off");
    }
    const std::uint32_t sats = bundle.node_index.satellite_count;
    const double duration_min = static_cast<double>(bundle.tick_count) *
                                bundle.interval_ms / 60000.0;
    const std::uint32_t minute_count =
        static_cast<std::uint32_t>((static_cast<std::uint64_t>(bundle.tick_count) *
                                        bundle.interval_ms +
                                    59999) /
                                   60000);

    ChurnReport report;
    report.total_isl_count = bundle.total_isl_count;
    report.duration_minutes = duration_min;
    report.minutes.resize(minute_count);
    for (std::uint32_t m = 0; m < minute_count; ++m) report.minutes[m].minute = m;

    for (std::size_t k = 0; k < bundle.deltas.size(); ++k) {
        const LinkDelta& d = bundle.deltas[k];
        std::uint64_t isl_changes = 0;
        for (const auto& l : d.added) {
            if (l.i < sats && l.j < sats) ++isl_changes;
        }
        for (const auto& e : d.removed) {
            if (e.a < sats && e.b < sats) ++isl_changes;
        }
        if (isl_changes == 0) continue;
        const std::uint32_t minute = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(k + 1) * bundle.interval_ms) / 60000);
        auto& slot = report.minutes[std::min(minute, minute_count - 1)];
        slot.changes += isl_changes;
        slot.instances += 1;
        report.total_changes += isl_changes;
    }
    for (auto& m : report.minutes) {
        m.cls = m.instances == 0 ? "none"
                : m.instances == 1 ? "green"
                : m.instances == 2 ? "orange"
                                   : "red";
    }
    if (duration_min > 0.0) {
        report.mean_changes_per_minute = static_cast<double>(report.total_changes) / duration_min;
    }
    if (report.total_isl_count > 0) {
        report.change_fraction = static_cast<double>(report.total_changes) /
                                 static_cast<double>(report.total_isl_count);
    }
    return report;
}

std::string churn_csv(const ChurnReport& report) {
    std::ostringstream os;
    os << "minute,changes,instances,class\n";
    for (const auto& m : report.minutes) {
        os << m.minute << "," << m.changes << "," << m.instances << "," << m.cls << "\n";
    }
    return os.str();
}

std::string churn_table(const ChurnReport& report) {
    std::ostringstream os;
    os << "minute  changes  instances  class   fraction\n";
    char line[128];
    for (const auto& m : report.minutes) {
        const double fraction =
            report.total_isl_count > 0
                ? static_cast<double>(m.changes) / static_cast<double>(report.total_isl_count)
                : 0.0;
        std::snprintf(line, sizeof line, "%6u  %7llu  %9u  %-6s  %.4f%%\n", m.minute,
                      static_cast<unsigned long long>(m.changes), m.instances, m.cls.c_str(),
                      fraction * 100.0);
        os << line;
    }
    std::snprintf(line, sizeof line,
                  "total ISLs: %llu, total changes: %llu, mean/min: %.2f, fraction: %.4f%%\n",
                  static_cast<unsigned long long>(report.total_isl_count),
                  static_cast<unsigned long long>(report.total_changes),
                  report.mean_changes_per_minute, report.change_fraction * 100.0);
    os << line;
    return os.str();
}

} // namespace leosim
