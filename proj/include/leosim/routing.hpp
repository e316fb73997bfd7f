#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <vector>

#include "leosim/link_model.hpp"

namespace leosim {

/// Undirected weighted graph in adjacency-list form; neighbor lists
/// are sorted by node index.
struct WeightedGraph {
    std::uint32_t n = 0;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency;
};

/// Edge weights: Latency -> LM entry (ms); InverseCapacity -> 1/CM
/// entry (zero-capacity edges are excluded); HopCount -> 1.
WeightedGraph build_graph(const LatencyMatrix& lm, const CapacityMatrix& cm, RouteMetric metric);

struct PathResult {
    bool reachable = false;
    std::vector<std::uint32_t> path; // src..dst inclusive when reachable
    double cost = 0.0;
};

/// Shortest-path tree toward one destination. next_hop[u] is the
/// neighbor of u on the minimal-cost path to dest, chosen so that the
/// full path is the lexicographically smallest node-index sequence
/// among all minimal-cost paths.
struct DestinationTree {
    std::uint32_t dest = 0;
    std::vector<double> dist;                         // +inf when unreachable
    std::vector<std::optional<std::uint32_t>> next_hop; // empty at dest/unreachable
};

DestinationTree shortest_path_tree(const WeightedGraph& graph, std::uint32_t dest);

/// Minimal-cost paths for the given pairs; unreachable pairs yield an
/// explicit no-path result.
std::vector<PathResult> shortest_paths(const WeightedGraph& graph,
                                       const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs);

/// Per-node next-hop map restricted to the scenario's flow
/// destinations, plus the path cache per flow.
struct RoutingTable {
    UtcMillis t = 0;
    // (node, destination) -> next hop; adjacent in the tick's connectivity.
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> next_hop;
    // Per flow index: the current path, empty optional when unrouted.
    std::vector<std::optional<std::vector<std::uint32_t>>> flow_paths;

    bool operator==(const RoutingTable&) const = default;
};

/// Builds tables for every destination in flow_pairs (plus all
/// destinations when all_pairs is set). flow_paths is aligned with
/// flow_pairs.
RoutingTable build_routing_tables(const WeightedGraph& graph,
                                  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& flow_pairs,
                                  UtcMillis t, bool all_pairs = false);

/// Writes routes_<unix_millis>.cmd into out_dir: one
/// `ip route replace 10.<d/256>.<d%256>.1/32 via 10.<n/256>.<n%256>.1 # node <u>`
/// line per table entry, sorted by (u, d). An empty table still
/// produces the (empty) timestep file.
std::filesystem::path export_route_commands(const RoutingTable& table, UtcMillis t,
                                            const std::filesystem::path& out_dir);

} // namespace leosim
