#include "gzfiber/pattern.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gzfiber {

std::string to_string(Color c) { return c == Color::Black ? "black" : "white"; }

std::string to_string(Side s) {
    switch (s) {
        case Side::Positive: return "positive";
        case Side::Negative: return "negative";
        case Side::Midline: return "midline";
    }
    return "?";
}

std::string to_string(Shape s) {
    switch (s) {
        case Shape::M: return "M";
        case Shape::W: return "W";
        case Shape::P: return "P";
    }
    return "?";
}

int Component::max_width() const { return *std::max_element(widths.begin(), widths.end()); }

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Pattern::Pattern(Flavor flavor, int top) : flavor_(flavor), top_(top) {
    if (top < 1) throw StructureError("pattern needs at least one row");
    int nv = vertex_count();
    eh_.assign(nv, 0);
    el_.assign(nv, 0);
    er_.assign(nv, 0);
    white_.assign(nv, 0);
    signs_.assign(top + 1, 0);
}

bool Pattern::edge_h(int k, int j) const { return j < k && eh_[id(k, j)]; }
bool Pattern::edge_l(int k, int j) const { return k < top_ && el_[id(k, j)]; }
bool Pattern::edge_r(int k, int j) const { return k < top_ && er_[id(k, j)]; }

int Pattern::even_row_sign(int k) const { return (k >= 0 && k <= top_) ? signs_[k] : 0; }

Pattern Pattern::from_staircase(const Staircase& s) {
    auto rep = validate(s);
    if (!rep.ok) throw std::invalid_argument("staircase violates interlacing");
    Pattern p(s.flavor(), s.top());
    std::vector<std::vector<Rational>> v(s.top() + 1);
    for (int k = 1; k <= s.top(); ++k) v[k] = s.extended_row(k);
    for (int k = 1; k <= s.top(); ++k) {
        for (int j = 1; j <= k; ++j) {
            int i = p.id(k, j);
            if (j < k) p.eh_[i] = v[k][j - 1] == v[k][j];
            if (k < s.top()) {
                p.el_[i] = v[k][j - 1] == v[k + 1][j - 1];
                p.er_[i] = v[k][j - 1] == v[k + 1][j];
            }
            p.white_[i] = s.flavor() == Flavor::Orthogonal && v[k][j - 1] == 0;
        }
        if (s.flavor() == Flavor::Orthogonal && k % 2 == 0 && k >= 2) {
            const Rational& last = s.row(k).back();
            p.signs_[k] = last > 0 ? 1 : (last < 0 ? -1 : 0);
        }
    }
    p.finish();
    return p;
}

Pattern Pattern::from_equalities(Flavor flavor, int top, const std::vector<std::pair<Vertex, Vertex>>& equal,
                                 const std::vector<Vertex>& white, const std::vector<int>& signs) {
    Pattern p(flavor, top);
    auto check = [&](const Vertex& v) {
        if (v.k < 1 || v.k > top || v.j < 1 || v.j > v.k)
            throw StructureError("vertex (" + std::to_string(v.k) + "," + std::to_string(v.j) + ") out of range");
    };
    UnionFind uf(p.vertex_count());
    for (const auto& [a, b] : equal) {
        check(a);
        check(b);
        uf.unite(p.id(a.k, a.j), p.id(b.k, b.j));
    }
    std::vector<char> white_root(p.vertex_count(), 0);
    if (flavor == Flavor::Orthogonal) {
        for (const auto& v : white) {
            check(v);
            white_root[uf.find(p.id(v.k, v.j))] = 1;
        }
        for (int k = 1; k <= top; k += 2) white_root[uf.find(p.id(k, (k + 1) / 2))] = 1;
    }
    for (int k = 1; k <= top; ++k) {
        for (int j = 1; j <= k; ++j) {
            int i = p.id(k, j);
            int r = uf.find(i);
            if (j < k) p.eh_[i] = r == uf.find(p.id(k, j + 1));
            if (k < top) {
                p.el_[i] = r == uf.find(p.id(k + 1, j));
                p.er_[i] = r == uf.find(p.id(k + 1, j + 1));
            }
            p.white_[i] = white_root[r];
        }
    }
    for (std::size_t k = 0; k < signs.size() && k < p.signs_.size(); ++k) p.signs_[k] = signs[k];
    p.finish();
    return p;
}

void Pattern::finish() {
    int nv = vertex_count();
    UnionFind uf(nv);
    for (int k = 1; k <= top_; ++k)
        for (int j = 1; j <= k; ++j) {
            int i = id(k, j);
            if (edge_h(k, j)) uf.unite(i, id(k, j + 1));
            if (edge_l(k, j)) uf.unite(i, id(k + 1, j));
            if (edge_r(k, j)) uf.unite(i, id(k + 1, j + 1));
        }
    std::vector<std::vector<Vertex>> groups(nv);
    for (int k = 1; k <= top_; ++k)
        for (int j = 1; j <= k; ++j) groups[uf.find(id(k, j))].push_back({k, j});
    comps_.clear();
    for (auto& g : groups) {
        if (g.empty()) continue;
        std::sort(g.begin(), g.end());
        Component c;
        c.vertices = g;
        c.kb = g.front().k;
        c.kt = g.back().k;
        c.widths.assign(c.kt - c.kb + 1, 0);
        for (const auto& v : g) c.widths[v.k - c.kb]++;
        c.color = white_[id(g.front().k, g.front().j)] ? Color::White : Color::Black;
        if (flavor_ == Flavor::Orthogonal) {
            if (c.color == Color::White) {
                c.side = Side::Midline;
            } else {
                const auto& v = g.front();
                c.side = 2 * v.j < v.k + 1 ? Side::Positive : Side::Negative;
                c.mirror = c.side == Side::Negative;
            }
        }
        comps_.push_back(std::move(c));
    }
    std::sort(comps_.begin(), comps_.end(), [](const Component& a, const Component& b) {
        return std::pair(a.kb, a.leftmost()) < std::pair(b.kb, b.leftmost());
    });
    comp_of_.assign(nv, -1);
    for (std::size_t c = 0; c < comps_.size(); ++c) {
        comps_[c].id = static_cast<int>(c);
        for (const auto& v : comps_[c].vertices) comp_of_[id(v.k, v.j)] = static_cast<int>(c);
    }
}

std::vector<RowSegment> Pattern::row_segments(int k) const {
    std::vector<RowSegment> out;
    int j = 1;
    while (j <= k) {
        RowSegment s;
        s.first = j;
        s.width = 1;
        while (edge_h(k, j)) {
            ++j;
            ++s.width;
        }
        s.component = component_of(k, s.first);
        s.color = white(k, s.first) ? Color::White : Color::Black;
        out.push_back(s);
        ++j;
    }
    return out;
}

ShapeTable Pattern::shapes() const {
    ShapeTable t;
    for (const auto& c : comps_) {
        int last = std::min(c.kt, top_ - 1);
        for (int k = c.kb; k <= last; ++k) {
            ShapeEntry e;
            e.component = c.id;
            e.k = k;
            e.w_lower = c.width(k);
            e.w_upper = c.width(k + 1);
            e.shape = e.w_lower > e.w_upper ? Shape::M : (e.w_lower < e.w_upper ? Shape::W : Shape::P);
            t.push_back(e);
        }
    }
    return t;
}

std::vector<int> pinch_rows(const Component& c) {
    std::vector<int> out;
    for (int k = c.kb + 1; k < c.kt; ++k)
        if (c.width(k) == 1) out.push_back(k);
    return out;
}

std::vector<WhitePiece> Pattern::white_pieces() const {
    std::vector<WhitePiece> out;
    for (const auto& c : comps_) {
        if (c.color != Color::White) continue;
        std::vector<int> cuts{c.kb};
        for (int k : pinch_rows(c)) cuts.push_back(k);
        if (c.kt > c.kb) cuts.push_back(c.kt);
        std::size_t pieces = cuts.size() == 1 ? 1 : cuts.size() - 1;
        for (std::size_t i = 0; i < pieces; ++i) {
            WhitePiece w;
            w.component = c.id;
            w.kb = cuts[i];
            w.kt = cuts.size() == 1 ? cuts[0] : cuts[i + 1];
            for (int k = w.kb; k <= w.kt; ++k) w.widths.push_back(c.width(k));
            out.push_back(w);
        }
    }
    return out;
}

Pattern Pattern::mirrored() const {
    Pattern p(flavor_, top_);
    for (int k = 1; k <= top_; ++k)
        for (int j = 1; j <= k; ++j) {
            int i = id(k, j);
            int jm = k + 1 - j;
            int im = id(k, jm);
            p.white_[im] = white_[i];
            if (j < k) p.eh_[id(k, jm - 1)] = eh_[i];
            if (k < top_) {
                // (k,j)-(k+1,j) reflects to (k,jm)-(k+1,jm+1)
                p.er_[im] = el_[i];
                p.el_[im] = er_[i];
            }
        }
    p.signs_ = signs_;
    p.finish();
    return p;
}

bool Pattern::same_graph(const Pattern& o) const {
    return flavor_ == o.flavor_ && top_ == o.top_ && eh_ == o.eh_ && el_ == o.el_ && er_ == o.er_ &&
           white_ == o.white_;
}

namespace {

std::string vname(int k, int j) { return "v" + std::to_string(k) + "_" + std::to_string(j); }

}  // namespace

std::string Pattern::render(const std::string& format) const {
    std::ostringstream os;
    if (format == "ascii") {
        // Row k sits at column 2(N-k) + 4(j-1); the top row is printed first.
        int width = 4 * top_;
        for (int k = top_; k >= 1; --k) {
            std::string line(width, ' ');
            for (int j = 1; j <= k; ++j) {
                int x = 2 * (top_ - k) + 4 * (j - 1);
                line[x] = white(k, j) ? 'o' : '#';
                if (edge_h(k, j)) line[x + 1] = line[x + 2] = line[x + 3] = '-';
            }
            while (!line.empty() && line.back() == ' ') line.pop_back();
            os << line << '\n';
            if (k > 1) {
                std::string mid(width, ' ');
                for (int j = 1; j < k; ++j) {
                    int x = 2 * (top_ - k + 1) + 4 * (j - 1);
                    if (edge_l(k - 1, j)) mid[x - 1] = '\\';
                    if (edge_r(k - 1, j)) mid[x + 1] = '/';
                }
                while (!mid.empty() && mid.back() == ' ') mid.pop_back();
                os << mid << '\n';
            }
        }
        return os.str();
    }
    if (format == "dot") {
        os << "graph gz {\n  node [shape=circle, label=\"\", width=0.15];\n";
        for (int k = 1; k <= top_; ++k)
            for (int j = 1; j <= k; ++j)
                os << "  " << vname(k, j) << " [pos=\"" << (2 * j - k - 1) << "," << 2 * (k - 1)
                   << "!\", style=filled, fillcolor=" << (white(k, j) ? "white" : "black") << "];\n";
        for (int k = 1; k <= top_; ++k)
            for (int j = 1; j <= k; ++j) {
                if (edge_h(k, j)) os << "  " << vname(k, j) << " -- " << vname(k, j + 1) << ";\n";
                if (edge_l(k, j)) os << "  " << vname(k, j) << " -- " << vname(k + 1, j) << ";\n";
                if (edge_r(k, j)) os << "  " << vname(k, j) << " -- " << vname(k + 1, j + 1) << ";\n";
            }
        os << "}\n";
        return os.str();
    }
    if (format == "tikz") {
        os << "\\documentclass[tikz]{standalone}\n\\begin{document}\n\\begin{tikzpicture}[x=1cm,y=0.9cm]\n";
        auto at = [&](int k, int j) {
            std::ostringstream p;
            p << "(" << (2 * j - k - 1) * 0.5 << "," << (k - 1) << ")";
            return p.str();
        };
        for (int k = 1; k <= top_; ++k)
            for (int j = 1; j <= k; ++j) {
                if (edge_h(k, j)) os << "  \\draw[line width=0.5mm] " << at(k, j) << " -- " << at(k, j + 1) << ";\n";
                if (edge_l(k, j)) os << "  \\draw[line width=0.5mm] " << at(k, j) << " -- " << at(k + 1, j) << ";\n";
                if (edge_r(k, j))
                    os << "  \\draw[line width=0.5mm] " << at(k, j) << " -- " << at(k + 1, j + 1) << ";\n";
            }
        for (int k = 1; k <= top_; ++k)
            for (int j = 1; j <= k; ++j)
                os << "  \\draw[fill=" << (white(k, j) ? "white" : "black") << "] " << at(k, j)
                   << " circle (2.5pt);\n";
        os << "\\end{tikzpicture}\n\\end{document}\n";
        return os.str();
    }
    throw std::invalid_argument("unknown render format '" + format + "'");
}

}  // namespace gzfiber
