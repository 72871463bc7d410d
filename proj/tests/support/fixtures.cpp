#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

namespace fixture {

using dstkit::Dart;
using dstkit::Side;

EmbeddedDigraph embed(const std::vector<Point>& points, std::vector<EdgeRecord> edges) {
    std::vector<std::vector<Dart>> rotation(points.size());
    for (dstkit::EdgeId e = 0; e < edges.size(); ++e) {
        rotation[edges[e].tail].push_back({e, Side::Tail});
        rotation[edges[e].head].push_back({e, Side::Head});
    }
    for (VertexId v = 0; v < points.size(); ++v) {
        auto angle = [&](const Dart& d) {
            const EdgeRecord& rec = edges[d.edge];
            const Point q = points[d.side == Side::Tail ? rec.head : rec.tail];
            return std::atan2(q.y - points[v].y, q.x - points[v].x);
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
    return EmbeddedDigraph(points.size(), std::move(edges), rotation);
}

std::vector<Point> grid_points(std::size_t rows, std::size_t cols) {
    std::vector<Point> pts;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) pts.push_back({double(c), double(r)});
    }
    return pts;
}

EmbeddedDigraph grid(std::size_t rows, std::size_t cols, bool both, const std::vector<Cost>& costs) {
    std::vector<EdgeRecord> edges;
    auto add = [&](std::size_t a, std::size_t b) {
        const Cost c = edges.size() < costs.size() ? costs[edges.size()] : 1;
        edges.push_back({VertexId(a), VertexId(b), c, false});
    };
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const std::size_t v = r * cols + c;
            if (c + 1 < cols) {
                add(v, v + 1);
                if (both) add(v + 1, v);
            }
            if (r + 1 < rows) {
                add(v, v + cols);
                if (both) add(v + cols, v);
            }
        }
    }
    return embed(grid_points(rows, cols), std::move(edges));
}

EmbeddedDigraph path(const std::vector<Cost>& costs) {
    std::vector<Point> pts;
    std::vector<EdgeRecord> edges;
    for (std::size_t i = 0; i <= costs.size(); ++i) pts.push_back({double(i), 0});
    for (std::size_t i = 0; i < costs.size(); ++i) edges.push_back({VertexId(i), VertexId(i + 1), costs[i], false});
    return embed(pts, std::move(edges));
}

EmbeddedDigraph star(std::size_t leaves) {
    std::vector<Point> pts{{0, 0}};
    std::vector<EdgeRecord> edges;
    for (std::size_t i = 0; i < leaves; ++i) {
        const double a = 2 * M_PI * double(i) / double(leaves);
        pts.push_back({std::cos(a), std::sin(a)});
        edges.push_back({0, VertexId(i + 1), 1, false});
    }
    return embed(pts, std::move(edges));
}

EmbeddedDigraph triangle() {
    return embed({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 1, false}, {1, 2, 1, false}, {2, 0, 1, false}});
}

EmbeddedDigraph naive_k5() {
    std::vector<EdgeRecord> edges;
    for (VertexId u = 0; u < 5; ++u) {
        for (VertexId v = u + 1; v < 5; ++v) edges.push_back({u, v, 1, false});
    }
    std::vector<std::vector<Dart>> rotation(5);
    for (VertexId v = 0; v < 5; ++v) {
        for (VertexId w = 0; w < 5; ++w) {
            for (dstkit::EdgeId e = 0; e < edges.size(); ++e) {
                if (edges[e].tail == v && edges[e].head == w) rotation[v].push_back({e, Side::Tail});
                if (edges[e].head == v && edges[e].tail == w) rotation[v].push_back({e, Side::Head});
            }
        }
    }
    return EmbeddedDigraph(5, std::move(edges), rotation);
}

dstkit::InstanceFile small_instance(std::uint64_t seed, std::size_t n, std::size_t k, std::size_t roots,
                                    dstkit::GridStyle style, double antiparallel) {
    dstkit::GeneratorParams p;
    p.seed = seed;
    p.n = n;
    p.k = k;
    p.roots = roots;
    p.style = style;
    p.antiparallel = antiparallel;
    return dstkit::generate_instance(p);
}

dstkit::InstanceFile generated(std::uint64_t seed, std::size_t n, std::size_t k, std::size_t roots,
                               Cost cost_min, Cost cost_max) {
    dstkit::GeneratorParams p;
    p.seed = seed;
    p.n = n;
    p.k = k;
    p.roots = roots;
    p.cost_min = cost_min;
    p.cost_max = cost_max;
    return dstkit::generate_instance(p);
}

} // namespace fixture
