#include "dstkit/verify.hpp"

#include <deque>

namespace dstkit {

VerifyResult verify_solution(const InstanceFile& file, std::span<const EdgeId> edges,
                             std::optional<Cost> claimed_cost) {
    const Instance& inst = file.instance;
    const EmbeddedDigraph& g = inst.graph;
    const std::size_t n = g.vertex_count();
    VerifyResult res;

    std::vector<std::uint8_t> used(g.edge_count(), 0);
    std::vector<std::vector<VertexId>> out(n);
    std::vector<std::uint8_t> entered(n, 0);
    for (EdgeId e : edges) {
        if (e >= g.edge_count() || g.is_auxiliary(e)) {
            res.code = ErrorCode::InvalidInstance;
            res.message = "edge " + std::to_string(e) + " is not an edge of the instance";
            return res;
        }
        if (used[e] != 0) {
            res.code = ErrorCode::InvalidInstance;
            res.message = "edge " + std::to_string(e) + " is listed twice";
            return res;
        }
        used[e] = 1;
        const VertexId u = g.tail(e);
        const VertexId v = g.head(e);
        out[u].push_back(v);
        res.cost += g.cost(e);
        if (entered[v] == 0 && v < file.node_costs.size()) res.cost += file.node_costs[v];
        entered[v] = 1;
    }

    std::vector<std::uint8_t> seen(n, 0);
    std::deque<VertexId> queue;
    for (VertexId r : inst.roots) {
        seen[r] = 1;
        queue.push_back(r);
    }
    while (!queue.empty()) {
        const VertexId u = queue.front();
        queue.pop_front();
        for (VertexId v : out[u]) {
            if (seen[v] == 0) {
                seen[v] = 1;
                queue.push_back(v);
            }
        }
    }
    for (VertexId t : inst.terminals) {
        if (seen[t] == 0) res.unreached_terminals.push_back(t);
    }
    res.feasible = res.unreached_terminals.empty();
    if (!res.feasible) {
        res.code = ErrorCode::Infeasible;
        res.message = "terminal " + std::to_string(res.unreached_terminals.front()) +
                      " is not reached (" + std::to_string(res.unreached_terminals.size()) +
                      " unreached in total)";
        return res;
    }
    if (claimed_cost && *claimed_cost != res.cost) {
        res.code = ErrorCode::InvalidInstance;
        res.message = "claimed cost " + std::to_string(*claimed_cost) + " differs from recomputed cost " +
                      std::to_string(res.cost);
        return res;
    }
    res.ok = true;
    return res;
}

} // namespace dstkit
