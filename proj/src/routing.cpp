#include "leosim/routing.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

namespace leosim {

WeightedGraph build_graph(const LatencyMatrix& lm, const CapacityMatrix& cm, RouteMetric metric) {
    WeightedGraph g;
    g.n = lm.n;
    g.adjacency.assign(g.n, {});
    for (std::size_t k = 0; k < lm.edges.size(); ++k) {
        const Edge& e = lm.edges[k];
        double w = 1.0;
        switch (metric) {
        case RouteMetric::Latency:
            w = lm.values[k];
            break;
        case RouteMetric::InverseCapacity:
            if (cm.values[k] <= 0.0) continue; // unusable link
            w = 1.0 / cm.values[k];
            break;
        case RouteMetric::HopCount:
            w = 1.0;
            break;
        }
        g.adjacency[e.a].emplace_back(e.b, w);
        g.adjacency[e.b].emplace_back(e.a, w);
    }
    for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

DestinationTree shortest_path_tree(const WeightedGraph& graph, std::uint32_t dest) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    DestinationTree tree;
    tree.dest = dest;
    tree.dist.assign(graph.n, kInf);
    tree.next_hop.assign(graph.n, std::nullopt);

    // Dijkstra from the destination over the undirected graph.
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    tree.dist[dest] = 0.0;
    queue.emplace(0.0, dest);
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (d > tree.dist[u]) continue;
        for (const auto& [v, w] : graph.adjacency[u]) {
            if (w < 0.0) throw std::invalid_argument("negative edge weight");
            if (tree.dist[u] + w < tree.dist[v]) {
                tree.dist[v] = tree.dist[u] + w;
                queue.emplace(tree.dist[v], v);
            }
        }
    }
    // Deterministic next hops: the smallest-index neighbor that lies on
    // a minimal-cost continuation. This yields the lexicographically
    // smallest node sequence among tied shortest paths and makes the
    // next hop a function of (node, destination) only.
    for (std::uint32_t u = 0; u < graph.n; ++u) {
        if (u == dest || tree.dist[u] == kInf) continue;
        for (const auto& [v, w] : graph.adjacency[u]) {
            if (tree.dist[v] + w == tree.dist[u]) {
                tree.next_hop[u] = v;
                break; // neighbors sorted ascending
            }
        }
    }
    return tree;
}

namespace {

PathResult walk_tree(const DestinationTree& tree, std::uint32_t src) {
    PathResult r;
    if (tree.dist[src] == std::numeric_limits<double>::infinity()) return r;
    r.reachable = true;
    r.cost = tree.dist[src];
    std::uint32_t u = src;
    r.path.push_back(u);
    while (u != tree.dest) {
        u = *tree.next_hop[u];
        r.path.push_back(u);
    }
    return r;
}

} // namespace

std::vector<PathResult> shortest_paths(
    const WeightedGraph& graph,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
    std::map<std::uint32_t, DestinationTree> trees;
    std::vector<PathResult> out;
    out.reserve(pairs.size());
    for (const auto& [src, dst] : pairs) {
        auto it = trees.find(dst);
        if (it == trees.end()) it = trees.emplace(dst, shortest_path_tree(graph, dst)).first;
        out.push_back(walk_tree(it->second, src));
    }
    return out;
}

RoutingTable build_routing_tables(
    const WeightedGraph& graph,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& flow_pairs, UtcMillis t,
    bool all_pairs) {
    RoutingTable table;
    table.t = t;

    std::set<std::uint32_t> destinations;
    for (const auto& [src, dst] : flow_pairs) destinations.insert(dst);
    if (all_pairs) {
        for (std::uint32_t d = 0; d < graph.n; ++d) destinations.insert(d);
    }

    std::map<std::uint32_t, DestinationTree> trees;
    for (std::uint32_t dest : destinations) {
        DestinationTree tree = shortest_path_tree(graph, dest);
        for (std::uint32_t u = 0; u < graph.n; ++u) {
            if (tree.next_hop[u]) table.next_hop[{u, dest}] = *tree.next_hop[u];
        }
        trees.emplace(dest, std::move(tree));
    }

    table.flow_paths.reserve(flow_pairs.size());
    for (const auto& [src, dst] : flow_pairs) {
        const PathResult r = walk_tree(trees.at(dst), src);
        if (r.reachable) {
            table.flow_paths.emplace_back(r.path);
        } else {
            table.flow_paths.emplace_back(std::nullopt);
        }
    }
    return table;
}

std::filesystem::path export_route_commands(const RoutingTable& table, UtcMillis t,
                                            const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    const std::filesystem::path file = out_dir / ("routes_" + std::to_string(t) + ".cmd");
    std::ofstream out(file, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write route commands to '" + file.string() + "'");
    }
    // std::map iteration order is already (node, destination).
    for (const auto& [key, next] : table.next_hop) {
        const auto [u, d] = key;
        out << "ip route replace 10." << d / 256 << "." << d % 256 << ".1/32 via 10." << next / 256
            << "." << next % 256 << ".1 # node " << u << "\n";
    }
    return file;
}

} // namespace leosim
