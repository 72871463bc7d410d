#pragma once

// Line-oriented instance and solution files.
//
//   dstkit-instance 1
//   name <text>
//   seed <uint>
//   vertices <N>
//   v <id> <root|terminal|steiner> [pos <x> <y>] [cost <c>]
//   edges <M>
//   e <id> <tail> <head> <cost>
//   rotations <N>
//   r <v> <edge>t|<edge>h ...
//   end
//
// Ids are dense and ascending. Blank lines and lines starting with '#' are
// ignored. Roots are ordered by id.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dstkit/instance.hpp"

namespace dstkit {

struct Position {
    double x = 0;
    double y = 0;
};

struct InstanceFile {
    std::string name;
    std::uint64_t seed = 0;
    Instance instance;
    std::vector<std::optional<Position>> positions; // per vertex
    std::vector<Cost> node_costs;                   // per vertex, all zero when absent

    bool has_node_costs() const;
};

/// Parses an instance. With fixed_point_digits = p >= 0, costs may carry up
/// to any number of decimals and are stored as round(value * 10^p); with
/// p < 0 only integers are accepted. Throws SyntaxError (with line number),
/// MalformedRotation, NotPlanarEmbedding, RoleConflict.
InstanceFile parse_instance(std::string_view text, int fixed_point_digits = -1);
std::string emit_instance(const InstanceFile& file);

/// Builds an InstanceFile around an instance with no positions or node costs.
InstanceFile wrap_instance(Instance inst, std::string name, std::uint64_t seed = 0);

struct SolutionFile {
    std::string instance_name;
    std::vector<EdgeId> edges;
    Cost cost = 0;
};

///   dstkit-solution 1
///   instance <name>
///   edges <count>
///   <edge id>            (one per line)
///   cost <total>
std::string emit_solution(const std::string& instance_name, std::span<const EdgeId> edges, Cost cost);
SolutionFile parse_solution(std::string_view text);

/// Whole-file helpers. Throw IoError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

InstanceFile load_instance(const std::string& path, int fixed_point_digits = -1);

} // namespace dstkit
