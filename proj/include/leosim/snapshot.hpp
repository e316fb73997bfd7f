#pragma once

#include <optional>
#include <vector>

#include "leosim/routing.hpp"
#include "leosim/topology.hpp"

namespace leosim {

/// One undirected link with its characteristics; i < j.
struct LinkRecord {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    double latency_ms = 0.0;
    double capacity_mbps = 0.0;
    std::optional<double> snr_db;

    Edge edge() const { return Edge{i, j}; }
    bool operator==(const LinkRecord&) const = default;
};

/// Complete network state at one timestep: connectivity with link
/// characteristics, routing, and ground attachments. links are sorted
/// by (i, j).
struct TopologySnapshot {
    UtcMillis t = 0;
    std::uint32_t node_count = 0;
    std::vector<LinkRecord> links;
    RoutingTable routing;
    std::vector<AttachmentState> attachments;

    bool operator==(const TopologySnapshot&) const = default;
};

/// Changes from one timestep's snapshot to the next.
struct LinkDelta {
    UtcMillis t = 0;

    std::vector<LinkRecord> added;
    std::vector<Edge> removed;
    std::vector<LinkRecord> modified;

    struct RouteChange {
        std::uint32_t node = 0;
        std::uint32_t dest = 0;
        std::optional<std::uint32_t> next; // empty removes the entry
        bool operator==(const RouteChange&) const = default;
    };
    std::vector<RouteChange> routing_changes;

    struct PathChange {
        std::uint32_t flow_index = 0;
        std::optional<std::vector<std::uint32_t>> old_path;
        std::optional<std::vector<std::uint32_t>> new_path;
        bool operator==(const PathChange&) const = default;
    };
    std::vector<PathChange> path_changes;

    struct AttachmentChange {
        std::uint32_t ground = 0;
        AttachmentState state;
        bool operator==(const AttachmentChange&) const = default;
    };
    std::vector<AttachmentChange> attachment_changes;

    bool empty() const {
        return added.empty() && removed.empty() && modified.empty() && routing_changes.empty() &&
               path_changes.empty() && attachment_changes.empty();
    }
    bool operator==(const LinkDelta&) const = default;
};

/// Diffs two snapshots. A link present in both is reported as modified
/// when its latency or capacity moved by more than the thresholds;
/// applying the result to prev reproduces next exactly on everything
/// the delta records.
LinkDelta diff_snapshots(const TopologySnapshot& prev, const TopologySnapshot& next,
                         double eps_latency_ms, double eps_capacity_mbps);

TopologySnapshot apply_delta(const TopologySnapshot& snapshot, const LinkDelta& delta);

} // namespace leosim
