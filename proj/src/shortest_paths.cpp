#include "dstkit/shortest_paths.hpp"

#include <algorithm>
#include <queue>
#include <string>
#include <tuple>

namespace dstkit {

std::vector<EdgeId> DistanceTable::path_to(const EmbeddedDigraph& g, VertexId v) const {
    std::vector<EdgeId> path;
    if (!reached(v)) return path;
    for (EdgeId e = parent_edge[v]; e != kNoEdge; e = parent_edge[g.tail(e)]) path.push_back(e);
    std::reverse(path.begin(), path.end());
    return path;
}

DistanceTable dijkstra(const EmbeddedDigraph& g, std::span<const VertexId> sources) {
    const std::size_t n = g.vertex_count();
    if (sources.empty()) throw Error(ErrorCode::InvalidParams, "dijkstra needs at least one source");

    DistanceTable t;
    t.sources.assign(sources.begin(), sources.end());
    t.distance.assign(n, kUnreachable);
    t.parent_edge.assign(n, kNoEdge);
    t.owner.assign(n, kNoOwner);

    // Lexicographic labels (distance, owner index); extending a path keeps the
    // owner, so Dijkstra computes the lexicographic minimum over all dipaths.
    using Entry = std::tuple<Cost, std::uint32_t, VertexId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (std::uint32_t i = 0; i < sources.size(); ++i) {
        const VertexId s = sources[i];
        if (s >= n) throw Error(ErrorCode::UnknownVertex, "source " + std::to_string(s) + " does not exist");
        if (t.owner[s] != kNoOwner) {
            throw Error(ErrorCode::InvalidParams, "source " + std::to_string(s) + " listed twice");
        }
        t.distance[s] = 0;
        t.owner[s] = i;
        heap.emplace(0, i, s);
    }

    // Sources are never relabelled, even when another source reaches them at
    // distance zero.
    std::vector<std::uint8_t> settled(n, 0);
    std::vector<std::uint8_t> is_source(n, 0);
    for (VertexId s : sources) is_source[s] = 1;
    while (!heap.empty()) {
        const auto [d, own, u] = heap.top();
        heap.pop();
        if (settled[u] != 0 || d != t.distance[u] || own != t.owner[u]) continue;
        settled[u] = 1;
        for (DartIndex dart : g.darts_at(u)) {
            if ((dart & 1U) != 0) continue; // only out-edges (tail darts)
            const EdgeId e = dart / 2;
            if (g.is_auxiliary(e)) continue;
            const VertexId v = g.head(e);
            if (settled[v] != 0 || is_source[v] != 0) continue;
            if (g.cost(e) >= kUnreachable - d) {
                throw Error(ErrorCode::InvalidParams, "path cost overflows 64-bit arithmetic");
            }
            const Cost nd = d + g.cost(e);
            const bool better = nd < t.distance[v] ||
                                (nd == t.distance[v] &&
                                 (own < t.owner[v] || (own == t.owner[v] && e < t.parent_edge[v])));
            if (!better) continue;
            const bool relabel = nd != t.distance[v] || own != t.owner[v];
            t.distance[v] = nd;
            t.owner[v] = own;
            t.parent_edge[v] = e;
            if (relabel) heap.emplace(nd, own, v);
        }
    }
    return t;
}

ArborescenceSet bfs_arborescences(const EmbeddedDigraph& g, const DistanceTable& table) {
    ArborescenceSet out;
    out.roots = table.sources;
    out.edges.resize(table.sources.size());
    out.owner = table.owner;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const EdgeId e = table.parent_edge[v];
        if (e != kNoEdge) out.edges[table.owner[v]].push_back(e);
    }
    for (auto& list : out.edges) std::sort(list.begin(), list.end());
    return out;
}

ArborescenceSet bfs_arborescences(const EmbeddedDigraph& g, std::span<const VertexId> roots) {
    return bfs_arborescences(g, dijkstra(g, roots));
}

std::optional<std::vector<EdgeId>> shortest_dipath(const EmbeddedDigraph& g, VertexId u,
                                                   VertexId v) {
    if (v >= g.vertex_count()) throw Error(ErrorCode::UnknownVertex, "vertex " + std::to_string(v) + " does not exist");
    const VertexId src[] = {u};
    const DistanceTable t = dijkstra(g, src);
    if (!t.reached(v)) return std::nullopt;
    return t.path_to(g, v);
}

} // namespace dstkit
