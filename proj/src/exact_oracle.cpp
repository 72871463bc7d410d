#include "dstkit/exact_oracle.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

namespace dstkit {
namespace {

constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

struct Arc {
    VertexId tail;
    VertexId head;
    Cost cost;
    EdgeId edge; // kNoEdge for super-source arcs
};

unsigned ceil_log2_size(std::size_t x) {
    unsigned l = 0;
    while ((std::size_t{1} << l) < x) ++l;
    return l;
}

} // namespace

Solution exact_dst(const Instance& inst, std::size_t cap) {
    const std::size_t k = inst.k();
    if (k > cap) {
        throw Error(ErrorCode::CapExceeded,
                    "exact oracle handles at most " + std::to_string(cap) + " terminals, got " + std::to_string(k));
    }
    if (k == 0) return make_solution(inst, {});
    const EmbeddedDigraph& g = inst.graph;
    const std::size_t n = g.vertex_count();

    // Vertex n is the super-source when there are several roots.
    const bool virtual_source = inst.roots.size() > 1;
    const std::size_t vn = n + (virtual_source ? 1 : 0);
    const VertexId source = virtual_source ? static_cast<VertexId>(n) : inst.roots.front();
    std::vector<Arc> arcs;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!g.is_auxiliary(e)) arcs.push_back({g.tail(e), g.head(e), g.cost(e), e});
    }
    if (virtual_source) {
        for (VertexId r : inst.roots) arcs.push_back({source, r, 0, kNoEdge});
    }
    std::vector<std::vector<std::uint32_t>> in_arcs(vn);
    for (std::uint32_t a = 0; a < arcs.size(); ++a) in_arcs[arcs[a].head].push_back(a);

    const std::size_t subsets = std::size_t{1} << k;
    std::vector<Cost> f(subsets * vn, kInf);
    std::vector<std::uint32_t> split(subsets * vn, 0);
    std::vector<std::uint32_t> relay(subsets * vn, std::numeric_limits<std::uint32_t>::max());
    auto at = [&](std::size_t s, VertexId v) { return s * vn + v; };

    using Entry = std::pair<Cost, VertexId>;
    for (std::size_t s = 1; s < subsets; ++s) {
        if ((s & (s - 1)) == 0) {
            const auto i = static_cast<std::size_t>(__builtin_ctzll(s));
            f[at(s, inst.terminals[i])] = 0;
        } else {
            for (VertexId v = 0; v < vn; ++v) {
                Cost best = f[at(s, v)];
                std::uint32_t best_split = 0;
                // Each unordered split once: the part holding the lowest bit.
                const std::size_t low = s & (~s + 1);
                for (std::size_t a = (s - 1) & s; a > 0; a = (a - 1) & s) {
                    if ((a & low) == 0) continue;
                    const Cost x = f[at(a, v)];
                    const Cost y = f[at(s ^ a, v)];
                    if (x >= kInf || y >= kInf) continue;
                    if (x + y < best) {
                        best = x + y;
                        best_split = static_cast<std::uint32_t>(a);
                    }
                }
                f[at(s, v)] = best;
                split[at(s, v)] = best_split;
            }
        }
        // Relax along reverse arcs.
        std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
        for (VertexId v = 0; v < vn; ++v) {
            if (f[at(s, v)] < kInf) heap.emplace(f[at(s, v)], v);
        }
        while (!heap.empty()) {
            const auto [d, v] = heap.top();
            heap.pop();
            if (d != f[at(s, v)]) continue;
            for (std::uint32_t a : in_arcs[v]) {
                const VertexId u = arcs[a].tail;
                const Cost nd = d + arcs[a].cost;
                if (nd < f[at(s, u)]) {
                    f[at(s, u)] = nd;
                    relay[at(s, u)] = a;
                    split[at(s, u)] = 0;
                    heap.emplace(nd, u);
                }
            }
        }
    }

    const std::size_t all = subsets - 1;
    if (f[at(all, source)] >= kInf) {
        for (std::size_t i = 0; i < k; ++i) {
            if (f[at(std::size_t{1} << i, source)] >= kInf) {
                throw Error(ErrorCode::Infeasible, "terminal " + std::to_string(inst.terminals[i]) +
                                                       " is unreachable from every root");
            }
        }
        throw Error(ErrorCode::Infeasible, "no feasible solution");
    }

    std::vector<EdgeId> edges;
    std::vector<std::pair<std::size_t, VertexId>> stack{{all, source}};
    while (!stack.empty()) {
        const auto [s, v] = stack.back();
        stack.pop_back();
        const std::uint32_t a = relay[at(s, v)];
        if (a != std::numeric_limits<std::uint32_t>::max()) {
            if (arcs[a].edge != kNoEdge) edges.push_back(arcs[a].edge);
            stack.emplace_back(s, arcs[a].head);
        } else if (split[at(s, v)] != 0) {
            stack.emplace_back(split[at(s, v)], v);
            stack.emplace_back(s ^ split[at(s, v)], v);
        }
    }
    return make_solution(inst, std::move(edges));
}

Solution brute_force_dst(const Instance& inst) {
    const EmbeddedDigraph& g = inst.graph;
    std::vector<EdgeId> real;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!g.is_auxiliary(e)) real.push_back(e);
    }
    if (real.size() > kBruteForceEdgeCap) {
        throw Error(ErrorCode::CapExceeded, "brute force handles at most " +
                                                std::to_string(kBruteForceEdgeCap) + " edges, got " +
                                                std::to_string(real.size()));
    }
    const std::size_t n = g.vertex_count();
    std::vector<std::uint8_t> seen(n);
    auto feasible = [&](std::uint32_t mask) {
        std::fill(seen.begin(), seen.end(), 0);
        for (VertexId r : inst.roots) seen[r] = 1;
        // Fixed point over the chosen edges; the sets are tiny.
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t i = 0; i < real.size(); ++i) {
                if ((mask >> i & 1U) == 0) continue;
                if (seen[g.tail(real[i])] != 0 && seen[g.head(real[i])] == 0) {
                    seen[g.head(real[i])] = 1;
                    grew = true;
                }
            }
        }
        return std::all_of(inst.terminals.begin(), inst.terminals.end(),
                           [&](VertexId t) { return seen[t] != 0; });
    };

    Cost best = kInf;
    std::uint32_t best_mask = 0;
    const std::uint32_t limit = std::uint32_t{1} << real.size();
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        Cost c = 0;
        for (std::size_t i = 0; i < real.size(); ++i) {
            if ((mask >> i & 1U) != 0) c += g.cost(real[i]);
        }
        if (c >= best) continue;
        if (feasible(mask)) {
            best = c;
            best_mask = mask;
        }
    }
    if (best >= kInf) throw Error(ErrorCode::Infeasible, "no feasible solution");
    std::vector<EdgeId> edges;
    for (std::size_t i = 0; i < real.size(); ++i) {
        if ((best_mask >> i & 1U) != 0) edges.push_back(real[i]);
    }
    return make_solution(inst, std::move(edges));
}

std::int64_t guarantee_factor(std::size_t k, std::size_t roots) {
    const auto ell = static_cast<std::int64_t>(ceil_log2_size(std::max<std::size_t>(k, 1)));
    if (roots <= 1) return 6 * ell + 1;
    return 8 * (static_cast<std::int64_t>(roots) + ell) + 1;
}

bool within_bound(Cost approx, Cost opt, std::int64_t factor, Rational epsilon) {
    // approx * den <= factor * (num + den) * opt
    const __int128 lhs = static_cast<__int128>(approx) * epsilon.den;
    const __int128 rhs = static_cast<__int128>(factor) * (epsilon.num + epsilon.den) * opt;
    return lhs <= rhs;
}

RatioRecord ratio_report(const Instance& inst, const Solution& approx, Rational epsilon,
                         std::size_t cap) {
    const Solution opt = exact_dst(inst, cap);
    RatioRecord r;
    r.k = inst.k();
    r.roots = inst.roots.size();
    r.n = inst.graph.vertex_count();
    r.opt = opt.cost;
    r.approx = approx.cost;
    if (opt.cost > 0) {
        r.ratio = static_cast<double>(approx.cost) / static_cast<double>(opt.cost);
    } else {
        r.ratio = approx.cost == 0 ? 1.0 : std::numeric_limits<double>::infinity();
    }
    const std::int64_t factor = guarantee_factor(r.k, r.roots);
    r.bound = static_cast<double>(factor) * (1.0 + epsilon.value());
    r.satisfied = approx.feasible && within_bound(approx.cost, opt.cost, factor, epsilon);
    return r;
}

} // namespace dstkit
