#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "leosim/scenario.hpp"
#include "leosim/snapshot.hpp"
#include "leosim/topology.hpp"

namespace leosim {

/// Nodes and links that carry scenario traffic at any tick. When
/// enabled, the persisted timeline is restricted to this subset.
struct RelevanceMask {
    bool enabled = false;
    std::vector<bool> nodes;
    std::set<Edge> links;

    bool covers(const Edge& e) const { return links.count(e) != 0; }
    bool operator==(const RelevanceMask&) const = default;
};

/// Persisted pre-computed timeline: scenario echo, node identity, one
/// full initial snapshot and the per-tick delta stream.
struct ScenarioBundle {
    static constexpr std::uint32_t kSchemaVersion = 1;

    std::string config_yaml; // canonical serialize of the scenario
    ScenarioConfig config;   // parsed echo of config_yaml
    NodeIndex node_index;
    UtcMillis start = 0;
    std::uint32_t interval_ms = 0;
    std::uint32_t tick_count = 0;
    std::uint32_t total_isl_count = 0; // unfiltered pattern edges
    RelevanceMask relevance;
    TopologySnapshot initial;
    std::vector<LinkDelta> deltas; // tick_count - 1 entries, t strictly increasing
};

/// Deterministic binary encoding with a trailing integrity checksum;
/// identical bundles re-save byte-identically.
void save_bundle(const ScenarioBundle& bundle, const std::filesystem::path& path);

/// Throws BundleError on version mismatch, checksum failure, or a
/// truncated/malformed file.
ScenarioBundle load_bundle(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_bundle(const ScenarioBundle& bundle);
ScenarioBundle decode_bundle(const std::vector<std::uint8_t>& bytes);

} // namespace leosim
