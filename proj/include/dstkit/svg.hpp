#pragma once

#include <span>
#include <string>

#include "dstkit/instance_io.hpp"

namespace dstkit {

/// SVG drawing of the instance. Vertices without coordinates are placed on a
/// circle. Highlighted edges are drawn thick and red; roots are squares and
/// terminals filled circles.
std::string render_svg(const InstanceFile& file, std::span<const EdgeId> highlight = {});

} // namespace dstkit
