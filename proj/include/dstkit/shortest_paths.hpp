#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dstkit/embedded_digraph.hpp"

namespace dstkit {

/// Distance of a vertex no source reaches. Never used in arithmetic.
inline constexpr Cost kUnreachable = std::numeric_limits<Cost>::max();
inline constexpr std::uint32_t kNoOwner = std::numeric_limits<std::uint32_t>::max();

/// Result of a multi-source Dijkstra run over the real (non-auxiliary) edges.
struct DistanceTable {
    std::vector<VertexId> sources;
    std::vector<Cost> distance;          // kUnreachable when not reached
    std::vector<EdgeId> parent_edge;     // kNoEdge for sources and unreached vertices
    std::vector<std::uint32_t> owner;    // index into sources, kNoOwner when unreached

    bool reached(VertexId v) const { return distance[v] != kUnreachable; }

    /// Edges of the tree dipath from the owning source to v, in path order.
    std::vector<EdgeId> path_to(const EmbeddedDigraph& g, VertexId v) const;
};

/// Exact multi-source distances. A vertex is owned by its nearest source;
/// ties go to the smallest source index, then the smallest parent edge id.
/// Throws UnknownVertex for bad sources and InvalidParams for an empty or
/// repeated source list.
DistanceTable dijkstra(const EmbeddedDigraph& g, std::span<const VertexId> sources);

/// Vertex-disjoint shortest-path arborescences, one per root.
struct ArborescenceSet {
    std::vector<VertexId> roots;
    std::vector<std::vector<EdgeId>> edges; // per root, ascending edge ids
    std::vector<std::uint32_t> owner;       // per vertex, root index or kNoOwner
};

ArborescenceSet bfs_arborescences(const EmbeddedDigraph& g, std::span<const VertexId> roots);
ArborescenceSet bfs_arborescences(const EmbeddedDigraph& g, const DistanceTable& table);

/// A shortest u-v dipath as an edge list, or nullopt when v is unreachable.
std::optional<std::vector<EdgeId>> shortest_dipath(const EmbeddedDigraph& g, VertexId u,
                                                   VertexId v);

} // namespace dstkit
