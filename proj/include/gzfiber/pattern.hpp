#pragma once

#include "gzfiber/staircase.hpp"

#include <string>
#include <vector>

namespace gzfiber {

enum class Color { Black, White };
enum class Side { Positive, Negative, Midline };
enum class Shape { M, W, P };

std::string to_string(Color c);
std::string to_string(Side s);
std::string to_string(Shape s);

struct Vertex {
    int k = 0;  // row, 1-based
    int j = 0;  // position in the row, 1-based
    bool operator==(const Vertex&) const = default;
    auto operator<=>(const Vertex&) const = default;
};

struct Component {
    int id = 0;                  // index in canonical order
    std::vector<Vertex> vertices;  // sorted by (k, j)
    Color color = Color::Black;
    Side side = Side::Positive;  // unitary components are all Positive
    int kb = 0, kt = 0;          // bottom and top rows
    std::vector<int> widths;     // widths[i] = w(kb + i)
    bool mirror = false;         // negative-part duplicate of a positive component

    int width(int k) const { return (k < kb || k > kt) ? 0 : widths[k - kb]; }
    int max_width() const;
    int leftmost() const { return vertices.front().j; }
};

// A white component cut at its interior rows of width one.
struct WhitePiece {
    int component = 0;
    int kb = 0, kt = 0;
    std::vector<int> widths;
    int width(int k) const { return (k < kb || k > kt) ? 0 : widths[k - kb]; }
};

struct ShapeEntry {
    int component = 0;
    int k = 0;       // lower row of the pair (k, k+1)
    int w_lower = 0;
    int w_upper = 0;
    Shape shape = Shape::P;
    bool operator==(const ShapeEntry&) const = default;
};

using ShapeTable = std::vector<ShapeEntry>;

// One maximal run of equal values inside a row.
struct RowSegment {
    int first = 0;  // leftmost position
    int width = 0;
    int component = 0;
    Color color = Color::Black;
};

/**
 * Gelfand-Zeitlin pattern: the triangle of positions with an edge between
 * nearest neighbours carrying equal values.  Orthogonal patterns use the
 * full symmetric triangle (rows 1 .. n+1, row k of length k).
 */
class Pattern {
public:
    static Pattern from_staircase(const Staircase& s);

    // Builds a pattern from an equality relation given as vertex pairs; the
    // relation is closed transitively.  white lists the zero vertices of an
    // orthogonal pattern; signs[k] is the sign of the last entry of even row k.
    static Pattern from_equalities(Flavor flavor, int top, const std::vector<std::pair<Vertex, Vertex>>& equal,
                                   const std::vector<Vertex>& white = {}, const std::vector<int>& signs = {});

    Flavor flavor() const { return flavor_; }
    int alpha() const { return flavor_ == Flavor::Unitary ? 1 : 2; }
    int top() const { return top_; }
    int n() const { return top_ - 1; }
    int first_row() const { return 1; }

    bool edge_h(int k, int j) const;  // (k,j) - (k,j+1)
    bool edge_l(int k, int j) const;  // (k,j) - (k+1,j)
    bool edge_r(int k, int j) const;  // (k,j) - (k+1,j+1)
    bool white(int k, int j) const { return white_[id(k, j)]; }
    // Sign of the last staircase entry of even row k (orthogonal); 0 if zero.
    int even_row_sign(int k) const;

    int vertex_count() const { return top_ * (top_ + 1) / 2; }
    int id(int k, int j) const { return k * (k - 1) / 2 + (j - 1); }
    int component_of(int k, int j) const { return comp_of_[id(k, j)]; }

    const std::vector<Component>& components() const { return comps_; }
    std::vector<RowSegment> row_segments(int k) const;
    ShapeTable shapes() const;
    // White components cut at interior width-one rows, in canonical order.
    std::vector<WhitePiece> white_pieces() const;
    // Components entering orthogonal counts: positive black and white.
    bool counted(const Component& c) const { return !c.mirror && (flavor_ == Flavor::Unitary || c.side != Side::Negative); }

    Pattern mirrored() const;
    bool same_graph(const Pattern& o) const;
    bool operator==(const Pattern& o) const { return same_graph(o) && signs_ == o.signs_; }

    std::string render(const std::string& format) const;

private:
    Pattern(Flavor flavor, int top);
    void finish();

    Flavor flavor_;
    int top_;
    std::vector<char> eh_, el_, er_, white_;
    std::vector<int> signs_;  // indexed by row
    std::vector<int> comp_of_;
    std::vector<Component> comps_;
};

// Interior rows of width one, where a white component pinches.
std::vector<int> pinch_rows(const Component& c);

}  // namespace gzfiber
