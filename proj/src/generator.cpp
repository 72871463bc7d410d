#include "dstkit/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace dstkit {

GridStyle parse_grid_style(std::string_view text) {
    if (text == "grid") return GridStyle::Grid;
    if (text == "grid-diagonals") return GridStyle::GridDiagonals;
    throw Error(ErrorCode::InvalidParams, "unknown grid style '" + std::string(text) + "'");
}

InstanceFile generate_instance(const GeneratorParams& p) {
    if (p.n == 0 || p.roots == 0 || p.n < p.roots + p.k) {
        throw Error(ErrorCode::InvalidParams, "need n >= roots + k with at least one root");
    }
    if (p.cost_min < 0 || p.cost_min > p.cost_max) {
        throw Error(ErrorCode::InvalidParams, "cost range must satisfy 0 <= min <= max");
    }
    if (p.n > std::numeric_limits<VertexId>::max() / 8) throw Error(ErrorCode::InvalidParams, "n is too large");

    std::mt19937_64 rng(p.seed);
    auto coin = [&](double prob) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < prob; };

    const auto n = static_cast<VertexId>(p.n);
    const auto rows = std::max<VertexId>(1, static_cast<VertexId>(std::sqrt(static_cast<double>(n))));
    const VertexId cols = (n + rows - 1) / rows;
    auto at = [&](VertexId r, VertexId c) -> VertexId {
        const VertexId v = r * cols + c;
        return c < cols && v < n ? v : kNoVertex;
    };

    // Undirected grid edges, then one diagonal per full cell.
    std::vector<std::pair<VertexId, VertexId>> links;
    for (VertexId v = 0; v < n; ++v) {
        const VertexId r = v / cols;
        const VertexId c = v % cols;
        if (at(r, c + 1) != kNoVertex) links.emplace_back(v, at(r, c + 1));
        if (at(r + 1, c) != kNoVertex) links.emplace_back(v, at(r + 1, c));
    }
    if (p.style == GridStyle::GridDiagonals) {
        for (VertexId v = 0; v < n; ++v) {
            const VertexId r = v / cols;
            const VertexId c = v % cols;
            const VertexId right = at(r, c + 1);
            const VertexId down = at(r + 1, c);
            const VertexId diag = at(r + 1, c + 1);
            if (right == kNoVertex || down == kNoVertex || diag == kNoVertex) continue;
            if (coin(0.5)) {
                links.emplace_back(v, diag);
            } else {
                links.emplace_back(right, down);
            }
        }
    }

    std::vector<VertexId> order(n);
    std::iota(order.begin(), order.end(), 0U);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<VertexId> roots(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(p.roots));
    std::vector<VertexId> terminals(order.begin() + static_cast<std::ptrdiff_t>(p.roots),
                                    order.begin() + static_cast<std::ptrdiff_t>(p.roots + p.k));
    std::sort(roots.begin(), roots.end());

    // Random spanning forest grown from the roots; forced arcs point away from them.
    std::vector<std::vector<std::uint32_t>> incident(n);
    for (std::uint32_t i = 0; i < links.size(); ++i) {
        incident[links[i].first].push_back(i);
        incident[links[i].second].push_back(i);
    }
    std::vector<int> forced(links.size(), 0); // +1 first->second, -1 second->first
    std::vector<std::uint8_t> reached(n, 0);
    std::vector<std::pair<std::uint32_t, VertexId>> frontier; // (link, from)
    for (VertexId r : roots) {
        reached[r] = 1;
        for (std::uint32_t l : incident[r]) frontier.emplace_back(l, r);
    }
    while (!frontier.empty()) {
        const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, frontier.size() - 1)(rng);
        const auto [l, from] = frontier[pick];
        frontier[pick] = frontier.back();
        frontier.pop_back();
        const VertexId to = links[l].first == from ? links[l].second : links[l].first;
        if (reached[to] != 0) continue;
        reached[to] = 1;
        forced[l] = links[l].first == from ? 1 : -1;
        for (std::uint32_t x : incident[to]) frontier.emplace_back(x, to);
    }

    std::uniform_int_distribution<Cost> cost_dist(p.cost_min, p.cost_max);
    std::vector<EdgeRecord> edges;
    for (std::uint32_t l = 0; l < links.size(); ++l) {
        auto [a, b] = links[l];
        int dir = forced[l];
        const bool pair = coin(p.antiparallel);
        if (dir == 0) dir = coin(0.5) ? 1 : -1;
        if (dir < 0) std::swap(a, b);
        edges.push_back({a, b, cost_dist(rng), false});
        if (pair) edges.push_back({b, a, cost_dist(rng), false});
    }

    // Rotation by angle around each vertex. Parallel edges share an angle:
    // ascending id at the smaller endpoint, descending at the other.
    auto pos = [&](VertexId v) { return Position{static_cast<double>(v % cols), static_cast<double>(v / cols)}; };
    std::vector<std::vector<Dart>> rotation(n);
    for (EdgeId e = 0; e < edges.size(); ++e) {
        rotation[edges[e].tail].push_back(Dart{e, Side::Tail});
        rotation[edges[e].head].push_back(Dart{e, Side::Head});
    }
    for (VertexId v = 0; v < n; ++v) {
        const Position pv = pos(v);
        auto angle = [&](const Dart& d) {
            const EdgeRecord& rec = edges[d.edge];
            const Position q = pos(rec.tail == v ? rec.head : rec.tail);
            return std::atan2(q.y - pv.y, q.x - pv.x);
        };
        std::sort(rotation[v].begin(), rotation[v].end(), [&](const Dart& a, const Dart& b) {
            const double aa = angle(a);
            const double ab = angle(b);
            if (aa != ab) return aa < ab;
            const EdgeRecord& rec = edges[a.edge];
            const VertexId other = rec.tail == v ? rec.head : rec.tail;
            return v < other ? a.edge < b.edge : a.edge > b.edge;
        });
    }

    InstanceFile file;
    file.name = p.name.empty() ? "grid-n" + std::to_string(p.n) + "-k" + std::to_string(p.k) + "-R" +
                                     std::to_string(p.roots) + "-s" + std::to_string(p.seed)
                               : p.name;
    file.seed = p.seed;
    file.positions.resize(n);
    for (VertexId v = 0; v < n; ++v) file.positions[v] = pos(v);
    file.node_costs.assign(n, 0);
    file.instance = make_instance(EmbeddedDigraph(n, std::move(edges), rotation), std::move(roots),
                                  std::move(terminals));
    return file;
}

} // namespace dstkit
