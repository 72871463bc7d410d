#include "dstkit/instance.hpp"

#include <algorithm>
#include <string>

namespace dstkit {

Instance make_instance(EmbeddedDigraph graph, std::vector<VertexId> roots,
                       std::vector<VertexId> terminals) {
    const std::size_t n = graph.vertex_count();
    if (roots.empty()) throw Error(ErrorCode::InvalidInstance, "instance has no root");
    std::vector<std::uint8_t> role(n, 0);
    for (VertexId r : roots) {
        if (r >= n) throw Error(ErrorCode::UnknownVertex, "root " + std::to_string(r) + " does not exist");
        if (role[r] != 0) throw Error(ErrorCode::InvalidInstance, "root " + std::to_string(r) + " listed twice");
        role[r] = 1;
    }
    std::sort(terminals.begin(), terminals.end());
    for (std::size_t i = 0; i < terminals.size(); ++i) {
        const VertexId t = terminals[i];
        if (t >= n) throw Error(ErrorCode::UnknownVertex, "terminal " + std::to_string(t) + " does not exist");
        if (role[t] == 1) throw Error(ErrorCode::RoleConflict, "vertex " + std::to_string(t) + " is both root and terminal");
        if (i > 0 && terminals[i - 1] == t) {
            throw Error(ErrorCode::InvalidInstance, "terminal " + std::to_string(t) + " listed twice");
        }
    }
    return Instance{std::move(graph), std::move(roots), std::move(terminals)};
}

Cost edge_set_cost(const EmbeddedDigraph& g, std::span<const EdgeId> edges) {
    Cost total = 0;
    for (EdgeId e : edges) total += g.cost(e);
    return total;
}

bool reaches_all_terminals(const Instance& inst, std::span<const EdgeId> edges) {
    const EmbeddedDigraph& g = inst.graph;
    std::vector<std::vector<VertexId>> out(g.vertex_count());
    for (EdgeId e : edges) out[g.tail(e)].push_back(g.head(e));
    std::vector<std::uint8_t> seen(g.vertex_count(), 0);
    std::vector<VertexId> stack(inst.roots.begin(), inst.roots.end());
    for (VertexId r : inst.roots) seen[r] = 1;
    while (!stack.empty()) {
        const VertexId u = stack.back();
        stack.pop_back();
        for (VertexId v : out[u]) {
            if (seen[v] == 0) {
                seen[v] = 1;
                stack.push_back(v);
            }
        }
    }
    return std::all_of(inst.terminals.begin(), inst.terminals.end(),
                       [&](VertexId t) { return seen[t] != 0; });
}

Solution make_solution(const Instance& inst, std::vector<EdgeId> edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    Solution s;
    s.cost = edge_set_cost(inst.graph, edges);
    s.feasible = reaches_all_terminals(inst, edges);
    s.edges = std::move(edges);
    return s;
}

} // namespace dstkit
