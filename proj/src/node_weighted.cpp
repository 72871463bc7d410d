#include <algorithm>
#include <string>

#include "dstkit/dst_solver.hpp"

namespace dstkit {

NodeWeightedReduction node_weighted_reduction(const Instance& inst,
                                              std::span<const Cost> node_costs) {
    const EmbeddedDigraph& g = inst.graph;
    const std::size_t n = g.vertex_count();
    if (node_costs.size() != n) {
        throw Error(ErrorCode::InvalidParams, "node cost list does not match the vertex count");
    }
    std::vector<std::uint8_t> special(n, 0);
    for (VertexId r : inst.roots) special[r] = 1;
    for (VertexId t : inst.terminals) special[t] = 1;
    for (VertexId v = 0; v < n; ++v) {
        if (node_costs[v] < 0) throw Error(ErrorCode::NegativeCost, "vertex " + std::to_string(v) + " has negative cost");
        if (node_costs[v] > 0 && special[v] != 0) {
            throw Error(ErrorCode::InvalidInstance,
                        "vertex " + std::to_string(v) + " is a root or terminal with positive cost");
        }
    }

    NodeWeightedReduction out;
    out.original_vertex_count = n;
    std::vector<EdgeRecord> edges;
    std::vector<DartIndex> tail_dart(g.edge_count());
    std::vector<DartIndex> head_dart(g.edge_count());
    std::vector<std::vector<Dart>> rotation(n);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const EdgeRecord& rec = g.edge(e);
        const Cost cv = node_costs[rec.head];
        if (cv == 0 || rec.auxiliary) {
            tail_dart[e] = static_cast<DartIndex>(2 * edges.size());
            head_dart[e] = tail_dart[e] + 1;
            edges.push_back(rec);
            out.edge_origin.push_back(e);
            continue;
        }
        const auto s = static_cast<VertexId>(rotation.size());
        const auto first = static_cast<EdgeId>(edges.size());
        edges.push_back({rec.tail, s, rec.cost, false});
        edges.push_back({s, rec.head, cv, false});
        out.edge_origin.push_back(e);
        out.edge_origin.push_back(e);
        tail_dart[e] = 2 * first;
        head_dart[e] = 2 * (first + 1) + 1;
        rotation.push_back({Dart{first, Side::Head}, Dart{first + 1, Side::Tail}});
    }
    for (VertexId v = 0; v < n; ++v) {
        for (DartIndex d : g.darts_at(v)) {
            const DartIndex nd = (d & 1U) != 0 ? head_dart[d / 2] : tail_dart[d / 2];
            rotation[v].push_back(Dart::from_index(nd));
        }
    }
    const std::size_t total = rotation.size();
    out.instance = make_instance(EmbeddedDigraph(total, std::move(edges), rotation), inst.roots,
                                 inst.terminals);
    return out;
}

std::vector<EdgeId> lift_node_weighted(const NodeWeightedReduction& red,
                                       std::span<const EdgeId> reduced_edges) {
    // An original edge is used when the half entering an original vertex is.
    std::vector<EdgeId> out;
    for (EdgeId e : reduced_edges) {
        if (red.instance.graph.head(e) < red.original_vertex_count) out.push_back(red.edge_origin[e]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Cost node_weighted_cost(const Instance& inst, std::span<const Cost> node_costs,
                        std::span<const EdgeId> edges) {
    const EmbeddedDigraph& g = inst.graph;
    std::vector<std::uint8_t> entered(g.vertex_count(), 0);
    Cost total = 0;
    for (EdgeId e : edges) {
        total += g.cost(e);
        const VertexId v = g.head(e);
        if (entered[v] == 0 && !node_costs.empty()) total += node_costs[v];
        entered[v] = 1;
    }
    return total;
}

} // namespace dstkit
