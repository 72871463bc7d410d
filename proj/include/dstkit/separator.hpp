#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dstkit/embedded_digraph.hpp"
#include "dstkit/shortest_paths.hpp"

namespace dstkit {

/// Non-negative vertex weights; terminals weigh 1 by default.
struct WeightAssignment {
    std::vector<std::uint64_t> weight;

    std::uint64_t total() const;
    static WeightAssignment unit_on(std::size_t vertex_count, std::span<const VertexId> vertices);
};

/// Corners of a weighted centroid face and the tree paths reaching them.
struct ThreePathSeparator {
    std::vector<VertexId> targets;                  // at most three
    std::vector<std::vector<VertexId>> path_vertices; // per target, root first
    std::vector<std::vector<EdgeId>> path_edges;      // per target, root side first
    std::vector<VertexId> separator;                // union of path vertices, ascending
};

/// Undirected shortest-path-tree separator. `spanning_tree` is used without
/// regard to orientation. Every weak component of g minus the returned
/// separator weighs at most half of the total.
///
/// Method: triangulate faces with auxiliary chords, build the dual tree over
/// non-tree edges, charge each vertex to the first face that visits it and
/// take the smallest-id face whose removal splits the dual tree into parts of
/// weight <= W/2. Its corners are the targets.
///
/// Throws NotConnected, NotSpanningTree.
ThreePathSeparator three_path_separator(const EmbeddedDigraph& g,
                                        std::span<const EdgeId> spanning_tree, VertexId root,
                                        const WeightAssignment& w);

struct RootSubtree {
    std::uint32_t root_index = 0;
    VertexId root = kNoVertex;
    std::vector<VertexId> marked;  // deduplicated marked targets inside this arborescence
    std::vector<EdgeId> edges;     // union of the dipaths root -> marked, ascending
};

struct SeparatorResult {
    std::vector<VertexId> targets;
    std::vector<VertexId> separator_vertices; // V(T), ascending
    std::vector<EdgeId> tree_edges;           // E(T), ascending
    std::vector<EdgeId> connector_edges;      // F, not purchased; empty for one root
    std::vector<RootSubtree> subtrees;        // non-empty T_i only
    std::vector<std::vector<VertexId>> components;
    std::vector<std::uint64_t> component_weights;
    std::uint64_t total_weight = 0;

    /// E(T) minus F.
    std::vector<EdgeId> purchased_edges() const;
    bool balanced() const;
};

/// Separator made of at most three shortest dipaths from `root`, taken inside
/// the BFS arborescence. Among subsets of the centroid corners, the cheapest
/// balanced one is returned. Throws UnreachableVertex if some vertex is not
/// reachable from root.
SeparatorResult directed_separator(const EmbeddedDigraph& g, VertexId root,
                                   const WeightAssignment& w);
SeparatorResult directed_separator(const EmbeddedDigraph& g, const DistanceTable& table,
                                   const WeightAssignment& w);

/// Multi-rooted separator: per-root subtrees of the vertex-disjoint BFS
/// arborescences, each the union of at most four shortest dipaths, joined by
/// non-purchased connector edges. Throws NotConnected, UnreachableVertex.
SeparatorResult multirooted_separator(const EmbeddedDigraph& g, std::span<const VertexId> roots,
                                      const WeightAssignment& w);
SeparatorResult multirooted_separator(const EmbeddedDigraph& g, const DistanceTable& table,
                                      const WeightAssignment& w);

} // namespace dstkit
