#pragma once
// Small hand-built embedded graphs and random instance helpers for tests.

#include <cstdint>
#include <utility>
#include <vector>

#include "dstkit/generator.hpp"
#include "dstkit/instance.hpp"

namespace fixture {

using dstkit::Cost;
using dstkit::EdgeRecord;
using dstkit::EmbeddedDigraph;
using dstkit::VertexId;

struct Point {
    double x = 0;
    double y = 0;
};

/// Straight-line drawing to rotation system: darts at each vertex sorted by
/// angle. Opposed parallel edges are ordered so that they nest.
EmbeddedDigraph embed(const std::vector<Point>& points, std::vector<EdgeRecord> edges);

/// rows x cols grid, vertex r*cols+c at (c, r). Each grid edge points right or
/// down; with `both` every edge gets its reverse as well. Costs come from
/// `cost(e)` in creation order (default 1).
EmbeddedDigraph grid(std::size_t rows, std::size_t cols, bool both = false,
                     const std::vector<Cost>& costs = {});
std::vector<Point> grid_points(std::size_t rows, std::size_t cols);

/// Directed path 0 -> 1 -> ... with the given edge costs.
EmbeddedDigraph path(const std::vector<Cost>& costs);

/// Center 0, leaves 1..leaves, edges center -> leaf with cost 1.
EmbeddedDigraph star(std::size_t leaves);

/// Triangle u=0, v=1, w=2 with edges (0,1), (1,2), (2,0).
EmbeddedDigraph triangle();

/// K5 with every rotation in ascending neighbour order.
EmbeddedDigraph naive_k5();

/// Generated instance (grid style) with a small edge count.
dstkit::InstanceFile small_instance(std::uint64_t seed, std::size_t n, std::size_t k, std::size_t roots,
                                    dstkit::GridStyle style = dstkit::GridStyle::GridDiagonals,
                                    double antiparallel = 0.0);

/// Generator output with the given parameters.
dstkit::InstanceFile generated(std::uint64_t seed, std::size_t n, std::size_t k, std::size_t roots,
                               Cost cost_min = 1, Cost cost_max = 20);

} // namespace fixture
