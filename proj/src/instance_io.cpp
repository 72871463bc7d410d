#include "dstkit/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

namespace dstkit {
namespace {

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    // Next meaningful line split into tokens; false at end of input.
    bool next(std::vector<std::string_view>& tokens) {
        while (pos_ < text_.size()) {
            std::size_t end = text_.find('\n', pos_);
            if (end == std::string_view::npos) end = text_.size();
            std::string_view line = text_.substr(pos_, end - pos_);
            pos_ = end + 1;
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            tokens.clear();
            std::size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
                const std::size_t start = i;
                while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
                if (i > start) tokens.push_back(line.substr(start, i - start));
            }
            if (tokens.empty() || tokens.front().front() == '#') continue;
            current_ = line;
            return true;
        }
        return false;
    }

    std::string_view line() const { return current_; }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line_no_) + ": " + what);
    }

    void expect(std::vector<std::string_view>& tokens, std::string_view keyword, std::size_t min_tokens) {
        if (!next(tokens)) fail("unexpected end of file, expected '" + std::string(keyword) + "'");
        if (tokens.front() != keyword) {
            fail("expected '" + std::string(keyword) + "', got '" + std::string(tokens.front()) + "'");
        }
        if (tokens.size() < min_tokens) fail("too few fields after '" + std::string(keyword) + "'");
    }

    template <class Int>
    Int integer(std::string_view tok, const char* what) const {
        Int v{};
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size()) {
            fail(std::string("bad ") + what + " '" + std::string(tok) + "'");
        }
        return v;
    }

    double real(std::string_view tok) const {
        double v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size()) fail("bad coordinate '" + std::string(tok) + "'");
        return v;
    }

    // Integer cost, or a decimal scaled by 10^digits and rounded half up.
    Cost cost(std::string_view tok, int digits) const {
        if (digits < 0) return integer<Cost>(tok, "cost");
        bool negative = false;
        std::string_view s = tok;
        if (!s.empty() && s.front() == '-') {
            negative = true;
            s.remove_prefix(1);
        }
        const std::size_t dot = s.find('.');
        const std::string_view whole = s.substr(0, dot);
        const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
        if (whole.empty() && frac.empty()) fail("bad cost '" + std::string(tok) + "'");
        __int128 v = 0;
        const __int128 limit = std::numeric_limits<Cost>::max();
        auto push_digit = [&](char c) {
            if (c < '0' || c > '9') fail("bad cost '" + std::string(tok) + "'");
            v = v * 10 + (c - '0');
            if (v > limit) fail("cost out of range '" + std::string(tok) + "'");
        };
        for (char c : whole) push_digit(c);
        for (int i = 0; i < digits; ++i) push_digit(static_cast<std::size_t>(i) < frac.size() ? frac[i] : '0');
        if (static_cast<std::size_t>(digits) < frac.size()) {
            for (char c : frac.substr(digits)) {
                if (c < '0' || c > '9') fail("bad cost '" + std::string(tok) + "'");
            }
            if (frac[digits] >= '5') ++v;
        }
        if (v > limit) fail("cost out of range '" + std::string(tok) + "'");
        return negative ? -static_cast<Cost>(v) : static_cast<Cost>(v);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_no_ = 0;
    std::string_view current_;
};

std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string_view rest_after(std::string_view line, std::string_view keyword) {
    std::size_t i = line.find(keyword) + keyword.size();
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    return line.substr(i);
}

} // namespace

bool InstanceFile::has_node_costs() const {
    return std::any_of(node_costs.begin(), node_costs.end(), [](Cost c) { return c != 0; });
}

InstanceFile parse_instance(std::string_view text, int fixed_point_digits) {
    LineReader in(text);
    std::vector<std::string_view> tok;
    InstanceFile file;

    in.expect(tok, "dstkit-instance", 2);
    if (tok[1] != "1") in.fail("unsupported format version '" + std::string(tok[1]) + "'");
    in.expect(tok, "name", 1);
    file.name = std::string(rest_after(in.line(), "name"));
    in.expect(tok, "seed", 2);
    file.seed = in.integer<std::uint64_t>(tok[1], "seed");

    in.expect(tok, "vertices", 2);
    const auto n = in.integer<std::uint32_t>(tok[1], "vertex count");
    std::vector<VertexId> roots;
    std::vector<VertexId> terminals;
    file.positions.assign(n, std::nullopt);
    file.node_costs.assign(n, 0);
    for (VertexId v = 0; v < n; ++v) {
        in.expect(tok, "v", 3);
        if (in.integer<VertexId>(tok[1], "vertex id") != v) in.fail("vertex ids must be dense and ascending");
        bool is_root = false;
        bool is_terminal = false;
        std::string_view roles = tok[2];
        while (!roles.empty()) {
            const std::size_t comma = roles.find(',');
            const std::string_view role = roles.substr(0, comma);
            if (role == "root") {
                is_root = true;
            } else if (role == "terminal") {
                is_terminal = true;
            } else if (role != "steiner") {
                in.fail("unknown role '" + std::string(role) + "'");
            }
            roles = comma == std::string_view::npos ? std::string_view{} : roles.substr(comma + 1);
        }
        if (is_root && is_terminal) {
            throw Error(ErrorCode::RoleConflict, "vertex " + std::to_string(v) + " is both root and terminal");
        }
        if (is_root) roots.push_back(v);
        if (is_terminal) terminals.push_back(v);
        for (std::size_t i = 3; i < tok.size();) {
            if (tok[i] == "pos" && i + 2 < tok.size()) {
                file.positions[v] = Position{in.real(tok[i + 1]), in.real(tok[i + 2])};
                i += 3;
            } else if (tok[i] == "cost" && i + 1 < tok.size()) {
                file.node_costs[v] = in.cost(tok[i + 1], fixed_point_digits);
                if (file.node_costs[v] < 0) {
                    throw Error(ErrorCode::NegativeCost, "vertex " + std::to_string(v) + " has negative cost");
                }
                if (file.node_costs[v] > 0 && (is_root || is_terminal)) {
                    throw Error(ErrorCode::RoleConflict,
                                "vertex " + std::to_string(v) + " is a root or terminal with a node cost");
                }
                i += 2;
            } else {
                in.fail("unexpected field '" + std::string(tok[i]) + "'");
            }
        }
    }

    in.expect(tok, "edges", 2);
    const auto m = in.integer<std::uint32_t>(tok[1], "edge count");
    std::vector<EdgeRecord> edges(m);
    for (EdgeId e = 0; e < m; ++e) {
        in.expect(tok, "e", 5);
        if (tok.size() != 5) in.fail("edge lines have exactly four fields");
        if (in.integer<EdgeId>(tok[1], "edge id") != e) in.fail("edge ids must be dense and ascending");
        edges[e].tail = in.integer<VertexId>(tok[2], "tail");
        edges[e].head = in.integer<VertexId>(tok[3], "head");
        edges[e].cost = in.cost(tok[4], fixed_point_digits);
    }

    in.expect(tok, "rotations", 2);
    if (in.integer<std::uint32_t>(tok[1], "rotation count") != n) in.fail("rotation count must equal the vertex count");
    std::vector<std::vector<Dart>> rotation(n);
    for (VertexId v = 0; v < n; ++v) {
        in.expect(tok, "r", 2);
        if (in.integer<VertexId>(tok[1], "vertex id") != v) in.fail("rotation lines must be dense and ascending");
        for (std::size_t i = 2; i < tok.size(); ++i) {
            std::string_view d = tok[i];
            if (d.size() < 2 || (d.back() != 't' && d.back() != 'h')) in.fail("bad dart '" + std::string(d) + "'");
            const Side side = d.back() == 't' ? Side::Tail : Side::Head;
            d.remove_suffix(1);
            rotation[v].push_back(Dart{in.integer<EdgeId>(d, "dart edge"), side});
        }
    }
    if (!in.next(tok) || tok.front() != "end") in.fail("expected 'end'");
    if (in.next(tok)) in.fail("trailing content after 'end'");

    EmbeddedDigraph graph(n, std::move(edges), rotation);
    validate_embedding(graph);
    file.instance = make_instance(std::move(graph), std::move(roots), std::move(terminals));
    return file;
}

std::string emit_instance(const InstanceFile& file) {
    const Instance& inst = file.instance;
    const EmbeddedDigraph& g = inst.graph;
    std::vector<std::uint8_t> role(g.vertex_count(), 0);
    for (VertexId r : inst.roots) role[r] = 1;
    for (VertexId t : inst.terminals) role[t] = 2;

    std::ostringstream out;
    out << "dstkit-instance 1\n";
    out << "name " << file.name << "\n";
    out << "seed " << file.seed << "\n";
    out << "vertices " << g.vertex_count() << "\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out << "v " << v << ' ' << (role[v] == 1 ? "root" : role[v] == 2 ? "terminal" : "steiner");
        if (v < file.positions.size() && file.positions[v]) {
            out << " pos " << format_real(file.positions[v]->x) << ' ' << format_real(file.positions[v]->y);
        }
        if (v < file.node_costs.size() && file.node_costs[v] != 0) out << " cost " << file.node_costs[v];
        out << "\n";
    }
    out << "edges " << g.edge_count() << "\n";
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        out << "e " << e << ' ' << g.tail(e) << ' ' << g.head(e) << ' ' << g.cost(e) << "\n";
    }
    out << "rotations " << g.vertex_count() << "\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        out << "r " << v;
        for (const Dart& d : g.rotation(v)) out << ' ' << d.edge << (d.side == Side::Tail ? 't' : 'h');
        out << "\n";
    }
    out << "end\n";
    return out.str();
}

InstanceFile wrap_instance(Instance inst, std::string name, std::uint64_t seed) {
    InstanceFile file;
    file.name = std::move(name);
    file.seed = seed;
    file.positions.assign(inst.graph.vertex_count(), std::nullopt);
    file.node_costs.assign(inst.graph.vertex_count(), 0);
    file.instance = std::move(inst);
    return file;
}

std::string emit_solution(const std::string& instance_name, std::span<const EdgeId> edges, Cost cost) {
    std::ostringstream out;
    out << "dstkit-solution 1\n";
    out << "instance " << instance_name << "\n";
    out << "edges " << edges.size() << "\n";
    for (EdgeId e : edges) out << e << "\n";
    out << "cost " << cost << "\n";
    return out.str();
}

SolutionFile parse_solution(std::string_view text) {
    LineReader in(text);
    std::vector<std::string_view> tok;
    SolutionFile sol;
    in.expect(tok, "dstkit-solution", 2);
    if (tok[1] != "1") in.fail("unsupported format version '" + std::string(tok[1]) + "'");
    in.expect(tok, "instance", 1);
    sol.instance_name = std::string(rest_after(in.line(), "instance"));
    in.expect(tok, "edges", 2);
    const auto count = in.integer<std::uint32_t>(tok[1], "edge count");
    for (std::uint32_t i = 0; i < count; ++i) {
        if (!in.next(tok)) in.fail("unexpected end of file in edge list");
        if (tok.size() != 1) in.fail("expected one edge id per line");
        sol.edges.push_back(in.integer<EdgeId>(tok[0], "edge id"));
    }
    in.expect(tok, "cost", 2);
    sol.cost = in.integer<Cost>(tok[1], "cost");
    if (in.next(tok)) in.fail("trailing content after 'cost'");
    return sol;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

InstanceFile load_instance(const std::string& path, int fixed_point_digits) {
    return parse_instance(read_text_file(path), fixed_point_digits);
}

} // namespace dstkit
