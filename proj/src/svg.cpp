#include "dstkit/svg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace dstkit {
namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string render_svg(const InstanceFile& file, std::span<const EdgeId> highlight) {
    const Instance& inst = file.instance;
    const EmbeddedDigraph& g = inst.graph;
    const std::size_t n = g.vertex_count();

    std::vector<Position> pos(n);
    for (VertexId v = 0; v < n; ++v) {
        if (v < file.positions.size() && file.positions[v]) {
            pos[v] = *file.positions[v];
        } else {
            const double a = 2 * std::numbers::pi * v / std::max<std::size_t>(n, 1);
            pos[v] = {std::cos(a) * n / 4.0, std::sin(a) * n / 4.0};
        }
    }
    double min_x = 0, min_y = 0, max_x = 1, max_y = 1;
    if (n > 0) {
        min_x = max_x = pos[0].x;
        min_y = max_y = pos[0].y;
    }
    for (const Position& p : pos) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double unit = 40;
    const double margin = 20;
    auto sx = [&](double x) { return margin + (x - min_x) * unit; };
    auto sy = [&](double y) { return margin + (y - min_y) * unit; };

    std::vector<std::uint8_t> hot(g.edge_count(), 0);
    for (EdgeId e : highlight) {
        if (e < g.edge_count()) hot[e] = 1;
    }
    std::vector<std::uint8_t> role(n, 0);
    for (VertexId r : inst.roots) role[r] = 1;
    for (VertexId t : inst.terminals) role[t] = 2;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * margin + (max_x - min_x) * unit
        << "\" height=\"" << 2 * margin + (max_y - min_y) * unit << "\">\n";
    out << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"16\" refY=\"5\" markerWidth=\"5\" "
           "markerHeight=\"5\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#555\"/></marker></defs>\n";
    out << "<title>" << xml_escape(file.name) << "</title>\n";
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Position a = pos[g.tail(e)];
        const Position b = pos[g.head(e)];
        // Opposed pairs are offset sideways so both stay visible.
        const double dx = b.x - a.x;
        const double dy = b.y - a.y;
        const double len = std::max(1e-9, std::hypot(dx, dy));
        const double off = 0.06;
        const double ox = -dy / len * off;
        const double oy = dx / len * off;
        out << "<line x1=\"" << sx(a.x + ox) << "\" y1=\"" << sy(a.y + oy) << "\" x2=\"" << sx(b.x + ox)
            << "\" y2=\"" << sy(b.y + oy) << "\" stroke=\"" << (hot[e] != 0 ? "#d62728" : "#999")
            << "\" stroke-width=\"" << (hot[e] != 0 ? 3 : 1) << "\" marker-end=\"url(#arrow)\">"
            << "<title>e" << e << " cost " << g.cost(e) << "</title></line>\n";
    }
    for (VertexId v = 0; v < n; ++v) {
        const double x = sx(pos[v].x);
        const double y = sy(pos[v].y);
        if (role[v] == 1) {
            out << "<rect x=\"" << x - 6 << "\" y=\"" << y - 6
                << "\" width=\"12\" height=\"12\" fill=\"#1f77b4\">";
        } else {
            out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << (role[v] == 2 ? 6 : 3)
                << "\" fill=\"" << (role[v] == 2 ? "#2ca02c" : "#333") << "\">";
        }
        out << "<title>v" << v << "</title>" << (role[v] == 1 ? "</rect>\n" : "</circle>\n");
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace dstkit
