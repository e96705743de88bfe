#pragma once

// The weight diagram of the rank-(n-1) type-A system in its second
// fundamental representation: vertices are the 2-subsets of [n], and an
// edge labeled k joins P and P' exactly when P' = (P \ {k}) ∪ {k+1}.
// Paths, elementary squares (the six 2-subsets of a 4-set, found as
// pairwise intersections of four paths), the diagram route to exterior
// numbers, and text renderers (ascii / dot / svg).

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "exsq/errors.hpp"
#include "exsq/index_set.hpp"
#include "exsq/matrix.hpp"
#include "exsq/scalar.hpp"

namespace exsq {

struct DiagramEdge {
    int from;   // vertex rank, lex-smaller endpoint
    int to;     // vertex rank
    int label;  // the substituted letter k
};

class WeightDiagram {
public:
    explicit WeightDiagram(int n) : n_(n) {
        if (n < 3) throw RankTooSmall("weight diagram needs n >= 3");
        vertices_ = subsets(n, 2);
        for (int v = 0; v < static_cast<int>(vertices_.size()); ++v) {
            const auto& P = vertices_[static_cast<std::size_t>(v)];
            for (int k : P.elements()) {
                if (k + 1 > n || P.contains(k + 1)) continue;
                const auto repl = P.with_replaced(k, k + 1);
                const int w = static_cast<int>(rank(IndexSet(repl), n));
                edges_.push_back({v, w, k});  // replacement raises lex order, so v < w
            }
        }
        std::sort(edges_.begin(), edges_.end(), [](const DiagramEdge& a, const DiagramEdge& b) {
            return std::tie(a.from, a.to) < std::tie(b.from, b.to);
        });
    }

    int n() const { return n_; }
    const std::vector<IndexSet>& vertices() const { return vertices_; }
    const std::vector<DiagramEdge>& edges() const { return edges_; }

    int vertex_rank(const Pair& P) const {
        if (P.arity() != 2 || !P.valid_for(n_))
            throw InvalidIndexSet("not a diagram vertex: " + P.str());
        return static_cast<int>(rank(P, n_));
    }

    bool adjacent(const Pair& P, const Pair& Q) const {
        const int a = vertex_rank(P), b = vertex_rank(Q);
        const int lo = std::min(a, b), hi = std::max(a, b);
        for (const auto& e : edges_)
            if (e.from == lo && e.to == hi) return true;
        return false;
    }

    std::vector<std::pair<Pair, int>> neighbors(const Pair& P) const {
        const int v = vertex_rank(P);
        std::vector<std::pair<Pair, int>> out;
        for (const auto& e : edges_) {
            if (e.from == v) out.emplace_back(vertices_[static_cast<std::size_t>(e.to)], e.label);
            if (e.to == v) out.emplace_back(vertices_[static_cast<std::size_t>(e.from)], e.label);
        }
        return out;
    }

private:
    int n_;
    std::vector<IndexSet> vertices_;
    std::vector<DiagramEdge> edges_;
};

inline WeightDiagram build_diagram(int n) { return WeightDiagram(n); }

/// The maximal vertex chain through a letter i: all pairs containing i,
/// ordered by the partner letter. Consecutive chain links are diagram
/// edges, except the single junction between (i-1, i) and (i, i+1); on
/// the symmetric-square diagram that link runs through the phantom
/// vertex (i, i).
struct DiagramPath {
    int anchor = 0;
    std::vector<Pair> vertices;
};

inline DiagramPath path_of(const WeightDiagram& d, int i) {
    if (i < 1 || i > d.n())
        throw InvalidIndexSet("path anchor " + std::to_string(i) + " out of [1, n]");
    DiagramPath p;
    p.anchor = i;
    for (int x = 1; x <= d.n(); ++x) {
        if (x == i) continue;
        p.vertices.push_back(Pair::pair(std::min(i, x), std::max(i, x)));
    }
    return p;
}

/// The six 2-subsets of H with the three complementary pairings and
/// their signs; the combinatorial support of one exterior number.
struct ElementarySquare {
    Quad H;
    std::vector<Pair> vertices;                 // lex order
    std::array<PairPartition, 3> pairings;
    std::vector<std::pair<Pair, Pair>> edges;   // ambient edges induced on the square
};

inline ElementarySquare elementary_square(const WeightDiagram& d, const Quad& H) {
    if (H.arity() != 4 || !H.valid_for(d.n()))
        throw InvalidIndexSet("elementary square needs a 4-set over [n]");
    ElementarySquare sq{H, {}, pair_partitions(H), {}};

    // Pairwise intersections of the four paths through the letters of H.
    const std::array<DiagramPath, 4> paths = {path_of(d, H[0]), path_of(d, H[1]),
                                              path_of(d, H[2]), path_of(d, H[3])};
    for (int u = 0; u < 4; ++u) {
        for (int v = u + 1; v < 4; ++v) {
            std::optional<Pair> common;
            for (const auto& P : paths[static_cast<std::size_t>(u)].vertices) {
                for (const auto& Q : paths[static_cast<std::size_t>(v)].vertices) {
                    if (P == Q) {
                        if (common) throw DomainError("paths meet more than once");
                        common = P;
                    }
                }
            }
            if (!common) throw DomainError("paths fail to meet");
            sq.vertices.push_back(*common);
        }
    }
    std::sort(sq.vertices.begin(), sq.vertices.end());

    for (std::size_t a = 0; a < sq.vertices.size(); ++a)
        for (std::size_t b = a + 1; b < sq.vertices.size(); ++b)
            if (d.adjacent(sq.vertices[a], sq.vertices[b]))
                sq.edges.emplace_back(sq.vertices[a], sq.vertices[b]);
    return sq;
}

/// The diagram route to a^H_{A,C}(g): pick the two diagram copies at A
/// and C inside the product diagram, build the elementary square for H
/// in each, and take the signed sum of pairwise products over the
/// complementary pairings. The product diagram itself stays implicit as
/// the (outer pair, inner pair) addressing of g.
inline Scalar diagram_exterior_number(const SquareMatrix& g, const Pair& A, const Pair& C,
                                      const Quad& H) {
    if (g.indexing().kind() != IndexingKind::Wedge || g.indexing().arity() != 2)
        throw ShapeMismatch("exterior numbers need a wedge2-indexed matrix");
    const int n = g.indexing().n();
    if (A.arity() != 2 || C.arity() != 2 || !A.valid_for(n) || !C.valid_for(n))
        throw InvalidIndexSet("exterior number key (A, C, H) malformed");
    const WeightDiagram d(n);
    const ElementarySquare square_at_A = elementary_square(d, H);
    const ElementarySquare square_at_C = elementary_square(d, H);

    const int a = d.vertex_rank(A), c = d.vertex_rank(C);
    Scalar acc = Scalar::zero(g.ring());
    for (std::size_t p = 0; p < 3; ++p) {
        const auto& pairing_a = square_at_A.pairings[p];
        const auto& pairing_c = square_at_C.pairings[p];
        const int b = d.vertex_rank(pairing_a.first);
        const int e = d.vertex_rank(pairing_c.second);
        Scalar term = g.at(a, b) * g.at(c, e) + g.at(a, e) * g.at(c, b);
        if (pairing_a.sign < 0)
            acc -= term;
        else
            acc += term;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Rendering

enum class RenderFormat { Ascii, Dot, Svg };

inline RenderFormat parse_render_format(std::string_view s) {
    if (s == "ascii") return RenderFormat::Ascii;
    if (s == "dot") return RenderFormat::Dot;
    if (s == "svg") return RenderFormat::Svg;
    throw UnsupportedFormat("unsupported diagram format '" + std::string(s) + "'");
}

struct RenderHighlights {
    std::vector<int> paths;        // anchors whose chains get marked
    std::optional<Quad> square;    // elementary square to mark
    bool signs = false;            // annotate the square's pairing signs
};

namespace detail {

struct DiagramLayout {
    // Triangle rows: difference d = b - a from n-1 (top) down to 1.
    // Vertex (a, a+d) sits at horizontal unit (d - 1) + 2 (a - 1).
    int rows;
    int max_units;
    std::map<int, std::pair<int, int>> pos;  // vertex rank -> (row idx, x units)

    explicit DiagramLayout(const WeightDiagram& d) {
        const int n = d.n();
        rows = n - 1;
        max_units = 2 * (n - 2);
        for (int v = 0; v < static_cast<int>(d.vertices().size()); ++v) {
            const auto& P = d.vertices()[static_cast<std::size_t>(v)];
            const int diff = P[1] - P[0];
            const int row = n - 1 - diff;
            const int units = (diff - 1) + 2 * (P[0] - 1);
            pos[v] = {row, units};
        }
    }
};

inline std::vector<bool> highlight_mask(const WeightDiagram& d, const RenderHighlights& h) {
    std::vector<bool> mark(d.vertices().size(), false);
    for (int anchor : h.paths)
        for (const auto& P : path_of(d, anchor).vertices)
            mark[static_cast<std::size_t>(d.vertex_rank(P))] = true;
    if (h.square)
        for (const auto& P : elementary_square(d, *h.square).vertices)
            mark[static_cast<std::size_t>(d.vertex_rank(P))] = true;
    return mark;
}

inline std::string sign_legend(const WeightDiagram& d, const Quad& H) {
    std::string out = "signs " + H.str() + ":";
    for (const auto& p : elementary_square(d, H).pairings) {
        out += " " + p.first.str() + "|" + p.second.str() + ":";
        out += p.sign < 0 ? '-' : '+';
    }
    return out;
}

inline std::string render_ascii(const WeightDiagram& d, const RenderHighlights& h) {
    const DiagramLayout layout(d);
    const auto mark = highlight_mask(d, h);
    std::size_t label_w = 0;
    for (const auto& P : d.vertices()) label_w = std::max(label_w, P.str().size());
    const int slot = static_cast<int>(label_w) + 2;  // room for () markers
    const int half = (slot + 2) / 2 * 2 / 2 + 1;     // center-to-center half distance
    const int width = (layout.max_units + 1) * half + slot;

    std::vector<std::string> canvas(static_cast<std::size_t>(2 * layout.rows - 1),
                                    std::string(static_cast<std::size_t>(width), ' '));
    std::vector<int> center(d.vertices().size(), 0);
    for (int v = 0; v < static_cast<int>(d.vertices().size()); ++v) {
        const auto [row, units] = layout.pos.at(v);
        std::string label = d.vertices()[static_cast<std::size_t>(v)].str();
        if (mark[static_cast<std::size_t>(v)]) label = "(" + label + ")";
        const int cx = units * half + slot / 2;
        center[static_cast<std::size_t>(v)] = cx;
        const int start = cx - static_cast<int>(label.size()) / 2;
        canvas[static_cast<std::size_t>(2 * row)].replace(static_cast<std::size_t>(start),
                                                          label.size(), label);
    }
    for (const auto& e : d.edges()) {
        const auto [row_from, units_from] = layout.pos.at(e.from);
        const auto [row_to, units_to] = layout.pos.at(e.to);
        // Edges always join adjacent rows; draw on the row between them.
        const int upper = std::min(row_from, row_to);
        const int cx = (center[static_cast<std::size_t>(e.from)] +
                        center[static_cast<std::size_t>(e.to)]) / 2;
        const int upper_row = (row_from < row_to) ? row_from : row_to;
        const int upper_units = (row_from < row_to) ? units_from : units_to;
        const int lower_units = (row_from < row_to) ? units_to : units_from;
        const char glyph = lower_units < upper_units ? '/' : '\\';
        (void)upper;
        canvas[static_cast<std::size_t>(2 * upper_row + 1)][static_cast<std::size_t>(cx)] = glyph;
    }
    std::string out;
    for (auto& line : canvas) {
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line;
        out += '\n';
    }
    for (int anchor : h.paths) {
        out += "path " + std::to_string(anchor) + ":";
        for (const auto& P : path_of(d, anchor).vertices) out += " " + P.str();
        out += '\n';
    }
    if (h.square) {
        out += "square " + h.square->str() + ":";
        for (const auto& P : elementary_square(d, *h.square).vertices) out += " " + P.str();
        out += '\n';
        if (h.signs) out += sign_legend(d, *h.square) + '\n';
    }
    return out;
}

inline std::string render_dot(const WeightDiagram& d, const RenderHighlights& h) {
    const auto mark = highlight_mask(d, h);
    std::ostringstream out;
    out << "graph wedge_diagram_n" << d.n() << " {\n";
    out << "  node [shape=circle];\n";
    for (int v = 0; v < static_cast<int>(d.vertices().size()); ++v) {
        out << "  \"" << d.vertices()[static_cast<std::size_t>(v)].str() << "\"";
        if (mark[static_cast<std::size_t>(v)]) out << " [color=red, penwidth=2]";
        out << ";\n";
    }
    for (const auto& e : d.edges()) {
        out << "  \"" << d.vertices()[static_cast<std::size_t>(e.from)].str() << "\" -- \""
            << d.vertices()[static_cast<std::size_t>(e.to)].str() << "\" [label=\"" << e.label
            << "\"];\n";
    }
    if (h.square && h.signs) out << "  // " << sign_legend(d, *h.square) << "\n";
    out << "}\n";
    return out.str();
}

inline std::string render_svg(const WeightDiagram& d, const RenderHighlights& h) {
    const DiagramLayout layout(d);
    const auto mark = highlight_mask(d, h);
    const int unit = 40, radius = 16, margin = 30;
    auto px = [&](int units) { return margin + units * unit; };
    auto py = [&](int row) { return margin + row * 2 * unit; };
    const int width = px(layout.max_units) + margin;
    int height = py(layout.rows - 1) + margin;
    const bool legend = h.square && h.signs;
    if (legend) height += unit;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    for (const auto& e : d.edges()) {
        const auto [r1, u1] = layout.pos.at(e.from);
        const auto [r2, u2] = layout.pos.at(e.to);
        out << "  <line x1=\"" << px(u1) << "\" y1=\"" << py(r1) << "\" x2=\"" << px(u2)
            << "\" y2=\"" << py(r2) << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << (px(u1) + px(u2)) / 2 + 4 << "\" y=\""
            << (py(r1) + py(r2)) / 2 << "\" font-size=\"10\">" << e.label << "</text>\n";
    }
    for (int v = 0; v < static_cast<int>(d.vertices().size()); ++v) {
        const auto [row, units] = layout.pos.at(v);
        const bool hl = mark[static_cast<std::size_t>(v)];
        out << "  <circle cx=\"" << px(units) << "\" cy=\"" << py(row) << "\" r=\"" << radius
            << "\" fill=\"" << (hl ? "gold" : "white") << "\" stroke=\""
            << (hl ? "red" : "black") << "\"/>\n";
        out << "  <text x=\"" << px(units) << "\" y=\"" << py(row) + 4
            << "\" font-size=\"11\" text-anchor=\"middle\">"
            << d.vertices()[static_cast<std::size_t>(v)].str() << "</text>\n";
    }
    if (legend) {
        out << "  <text x=\"" << margin << "\" y=\"" << height - margin / 2
            << "\" font-size=\"12\">" << sign_legend(d, *h.square) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace detail

/// Deterministic text rendering of a diagram in the requested format,
/// with optional path/square/sign highlights.
inline std::string render(const WeightDiagram& d, RenderFormat format,
                          const RenderHighlights& highlights = {}) {
    switch (format) {
        case RenderFormat::Ascii: return detail::render_ascii(d, highlights);
        case RenderFormat::Dot: return detail::render_dot(d, highlights);
        case RenderFormat::Svg: return detail::render_svg(d, highlights);
    }
    throw UnsupportedFormat("unknown render format");
}

} // namespace exsq
