#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "leosim/bundle.hpp"

namespace leosim {

/// One playback observation. Events within a tick are ordered: link
/// events, path changes, flow stats, probes, tick lag.
struct SimEvent {
    enum class Kind { LinkUp, LinkDown, LinkModified, PathChange, FlowStats, ProbeResult, TickLag,
                      Warning };

    std::uint32_t tick = 0;
    UtcMillis t = 0;
    Kind kind = Kind::Warning;
    nlohmann::ordered_json payload;

    static const char* kind_name(Kind k);
    /// Line-delimited JSON record.
    std::string to_json_line() const;
};

/// A flow's current path expressed as its links, for allocation.
struct AllocFlow {
    bool routed = false;
    std::vector<Edge> links;
    std::optional<double> demand_mbps; // empty = unlimited
};

/// Max-min fair allocation by progressive filling over shared links,
/// each flow additionally capped by its demand. Internally runs on
/// integer kbps so conservation is exact. Unrouted flows get 0.
std::vector<double> allocate_throughput(const std::vector<AllocFlow>& flows,
                                        const CapacityMatrix& capacity);

/// Round-trip probe over the flow's current path: 2 x sum of link
/// latencies. Empty optional = probe loss (unrouted flow).
std::optional<double> probe_rtt_ms(const std::optional<std::vector<std::uint32_t>>& path,
                                   const LatencyMatrix& lm);

/// Ticks whose reported rate is forced to 0 after a path change at
/// change_tick: (change_tick, change_tick + ceil(window/interval)].
bool disruption_active(std::uint32_t tick, std::uint32_t change_tick, double window_ms,
                       std::uint32_t interval_ms);

enum class PlaybackMode { Realtime, Fast };

struct PlaybackOptions {
    PlaybackMode mode = PlaybackMode::Fast;
    std::vector<std::string> flow_ids; // empty = every configured flow
    std::function<void(const SimEvent&)> sink;
    std::optional<std::filesystem::path> export_routes_dir;
};

struct PlaybackResult {
    std::vector<double> processing_ms;        // per tick
    std::vector<double> tick_start_offset_ms; // wall offset when each tick began
    double wall_elapsed_ms = 0.0;
    std::uint64_t event_count = 0;
};

/// Replays the bundle tick by tick: apply delta, update routing,
/// recompute flow allocations, emit events. Realtime mode paces each
/// tick to start no earlier than start + k * interval and emits
/// TickLag records; fast mode runs unpaced (and emits no TickLag, so
/// logs are bit-deterministic).
PlaybackResult run_playback(const ScenarioBundle& bundle, const PlaybackOptions& options);

} // namespace leosim
