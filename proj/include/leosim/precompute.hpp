#pragma once

#include <functional>

#include "leosim/bundle.hpp"
#include "leosim/weather.hpp"

namespace leosim {

/// Everything derived once from a scenario before the tick loop:
/// elements, orbit grouping, node numbering, ground sites, and the
/// flow endpoints resolved to node indices.
struct ScenarioModel {
    ScenarioConfig config;
    std::vector<OrbitalElements> elements;
    ConstellationGeometry geometry;
    NodeIndex node_index;
    std::vector<GroundSite> grounds;
    TopologyConfig topology;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> flow_pairs; // aligned with config.flows
    std::uint32_t total_isl_count = 0;

    static ScenarioModel build(const ScenarioConfig& config);

    /// Full per-tick pipeline: propagate, connect, characterize, route.
    /// prior holds the previous tick's attachments (empty at tick 0);
    /// warnings from the link layer are appended to *warnings when given.
    TopologySnapshot compute_snapshot(std::uint32_t tick, const Propagator& propagator,
                                      WeatherProvider& weather,
                                      const std::vector<AttachmentState>& prior,
                                      std::vector<std::string>* warnings = nullptr) const;

    UtcMillis tick_time(std::uint32_t tick) const {
        return config.start_epoch + static_cast<UtcMillis>(tick) * config.update_interval_ms;
    }
};

/// Accumulates the scenario-relevant node/link subset over ticks.
class RelevanceAccumulator {
public:
    explicit RelevanceAccumulator(std::uint32_t node_count) { mask_.nodes.resize(node_count); }

    void add(const RoutingTable& routing,
             const std::vector<std::pair<std::uint32_t, std::uint32_t>>& flow_pairs);
    RelevanceMask finish(bool enabled) &&;

private:
    RelevanceMask mask_;
};

/// Projects a snapshot/delta onto the relevant subset. No-ops when the
/// mask is disabled.
TopologySnapshot restrict_snapshot(const TopologySnapshot& snapshot, const RelevanceMask& mask);
LinkDelta restrict_delta(const LinkDelta& delta, const RelevanceMask& mask);

struct PrecomputeOptions {
    const Propagator* propagator = nullptr; // default: Keplerian two-body
    std::function<void(std::uint32_t done, std::uint32_t total)> progress;
    std::function<void(const std::string&)> warning_sink;
};

/// Runs the whole pre-computation stage and assembles the bundle:
/// tick 0 stored whole, every later tick as a diff against the folded
/// predecessor state, then everything projected onto the relevance
/// mask when the scenario enables it.
ScenarioBundle precompute(const ScenarioConfig& config, WeatherProvider& weather,
                          const PrecomputeOptions& options = {});

/// Direct recomputation of every tick (the independent route used by
/// replay-soundness checks); snapshots are unmasked.
std::vector<TopologySnapshot> compute_all_snapshots(const ScenarioConfig& config,
                                                    WeatherProvider& weather,
                                                    const Propagator* propagator = nullptr);

} // namespace leosim
