#pragma once

#include <cstdint>
#include <string>

#include "dstkit/instance_io.hpp"

namespace dstkit {

enum class GridStyle { Grid, GridDiagonals };

struct GeneratorParams {
    std::uint64_t seed = 1;
    std::size_t n = 100;
    std::size_t k = 8;
    std::size_t roots = 1;
    Cost cost_min = 1;
    Cost cost_max = 20;
    GridStyle style = GridStyle::GridDiagonals;
    double antiparallel = 0.25; // chance that a grid edge becomes an opposed pair
    std::string name;           // generated from the parameters when empty
};

GridStyle parse_grid_style(std::string_view text);

/// Random embedded planar digraph on a floor(sqrt(n))-row grid, vertices in
/// row-major order. A random spanning forest grown from the roots is forced
/// into the arc set, so every terminal is reachable. Rotations follow the
/// grid coordinates. Deterministic per seed. Throws InvalidParams.
InstanceFile generate_instance(const GeneratorParams& params);

} // namespace dstkit
