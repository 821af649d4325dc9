#include "doctest.h"
#include "gzfiber/groupexpr.hpp"
#include "support/corpus.hpp"
#include "support/fixtures.hpp"

#include "json.hpp"

#include <algorithm>
#include <set>

using namespace gzfiber;
using fixtures::ortho;
using fixtures::pat;
using fixtures::unitary;

namespace {

std::set<std::pair<Vertex, Vertex>> edges_of(const Pattern& p) {
    std::set<std::pair<Vertex, Vertex>> e;
    for (int k = 1; k <= p.top(); ++k)
        for (int j = 1; j <= k; ++j) {
            if (j < k && p.edge_h(k, j)) e.insert({{k, j}, {k, j + 1}});
            if (k < p.top() && p.edge_l(k, j)) e.insert({{k, j}, {k + 1, j}});
            if (k < p.top() && p.edge_r(k, j)) e.insert({{k, j}, {k + 1, j + 1}});
        }
    return e;
}

std::vector<Shape> shapes_of(const Pattern& p, int component) {
    std::vector<Shape> s;
    for (const auto& e : p.shapes())
        if (e.component == component) s.push_back(e.shape);
    return s;
}

const Component& component_at(const Pattern& p, int k, int j) { return p.components()[p.component_of(k, j)]; }

}  // namespace

TEST_CASE("unitary n=2 with all components reaching the top") {
    auto p = pat(unitary({{1}, {2, 1}, {2, 1, 0}}));
    CHECK(p.components().size() == 3);
    for (const auto& c : p.components()) CHECK(c.kt == 3);
    CHECK(torus_rank(p) == 0);
}

TEST_CASE("edgeless interior pattern") {
    auto p = pat(unitary({{3}, {4, 2}, {5, 3, 1}}));
    CHECK(edges_of(p).empty());
    CHECK(p.components().size() == 6);
    int below = 0;
    for (const auto& c : p.components()) below += c.kt < 3;
    CHECK(below == 3);
    auto art = p.render("ascii");
    CHECK(std::count(art.begin(), art.end(), '#') == 6);
    CHECK(art.find('-') == std::string::npos);
}

TEST_CASE("golden_u10 pattern matches the transcribed edges") {
    auto p = pat(fixtures::load("u10.json"));
    auto frozen = nlohmann::json::parse(fixtures::read_file(std::string(GZ_TEST_DATA) + "/u10_edges.json"));
    std::set<std::pair<Vertex, Vertex>> want;
    for (const auto& e : frozen) {
        Vertex a{e[0][0].get<int>(), e[0][1].get<int>()}, b{e[1][0].get<int>(), e[1][1].get<int>()};
        want.insert(std::minmax(a, b));
    }
    CHECK(edges_of(p) == want);
    // the large component spans rows 1..10; the double diamond sits on the left
    const auto& big = component_at(p, 1, 1);
    CHECK(big.kb == 1);
    CHECK(big.kt == 10);
    CHECK(big.max_width() == 4);
    // six singleton circles plus the double diamond end below the top row
    int below_top = 0;
    for (const auto& c : p.components()) below_top += c.kt <= p.n();
    CHECK(below_top == 7);
}

TEST_CASE("so5 pattern") {
    auto p = pat(ortho({{0}, {1}, {1, -1}, {2, 1}}));
    CHECK(p.vertex_count() == 15);
    int black_pos = 0, black_neg = 0, white_diamonds = 0;
    for (const auto& c : p.components()) {
        bool diamond = c.widths == std::vector<int>{1, 2, 1};
        if (c.color == Color::Black && diamond) {
            c.side == Side::Positive ? ++black_pos : ++black_neg;
            CHECK(c.mirror == (c.side == Side::Negative));
        }
        if (c.color == Color::White && c.kb == p.top()) CHECK(c.vertices.size() == 1);
        if (c.color == Color::White && c.widths == std::vector<int>{1, 2, 1}) ++white_diamonds;
    }
    CHECK(black_pos == 1);
    CHECK(black_neg == 1);
    CHECK(white_diamonds == 1);
    CHECK(p.even_row_sign(4) == -1);
    auto dot = p.render("dot");
    CHECK(std::count(dot.begin(), dot.end(), '!') == 15);
}

TEST_CASE("o23 white component widths") {
    auto p = pat(fixtures::load("o23.json"));
    const auto& c = component_at(p, 1, 1);
    CHECK(c.color == Color::White);
    CHECK(c.widths == std::vector<int>{1, 2, 3, 2, 3, 2, 1, 2, 3, 4, 5, 6, 7, 8, 7, 8, 7, 6, 7, 6, 5, 4, 3});
    CHECK(pinch_rows(c) == std::vector<int>{7});
    auto pieces = p.white_pieces();
    int wide = 0;
    for (const auto& w : pieces) wide += w.kt > w.kb;
    CHECK(wide == 2);
}

TEST_CASE("shape classification") {
    SUBCASE("diamond below the top row") {
        // row 1 = row 2 = row 3 middle; 1,2,1 widths in rows 1..3 of a 4-row triangle
        auto p = pat(unitary({{2}, {2, 2}, {3, 2, 1}, {4, 3, 1, 0}}));
        const auto& c = component_at(p, 1, 1);
        REQUIRE(c.widths == std::vector<int>{1, 2, 1});
        CHECK(shapes_of(p, c.id) == std::vector<Shape>{Shape::W, Shape::M, Shape::M});
    }
    SUBCASE("width-one column below the top row") {
        auto p = pat(unitary({{1}, {3, 1}, {4, 3, 0}}));
        const auto& c = component_at(p, 1, 1);
        REQUIRE(c.widths == std::vector<int>{1, 1});
        // a P-shape then the exit M of width one
        auto s = shapes_of(p, c.id);
        CHECK(s == std::vector<Shape>{Shape::P, Shape::M});
    }
    SUBCASE("singleton in the top row") {
        auto p = pat(unitary({{1}, {3, 1}, {4, 3, 0}}));
        CHECK(shapes_of(p, component_at(p, 3, 3).id).empty());
    }
}

TEST_CASE("render formats") {
    auto p = pat(ortho({{0}, {1}, {1, -1}, {2, 1}}));
    auto tikz = p.render("tikz");
    CHECK(tikz.find("\\begin{tikzpicture}") != std::string::npos);
    CHECK(tikz.find("\\end{document}") != std::string::npos);
    CHECK(p.render("ascii") == p.render("ascii"));
    CHECK_THROWS_AS(p.render("svg"), std::invalid_argument);
}

TEST_CASE("from_equalities builds the same pattern as the staircase") {
    auto s = unitary({{1}, {2, 1}, {2, 1, 0}});
    auto p = pat(s);
    std::vector<std::pair<Vertex, Vertex>> eq;
    for (const auto& e : edges_of(p)) eq.push_back(e);
    CHECK(Pattern::from_equalities(Flavor::Unitary, 3, eq) == p);
}

TEST_CASE("property: pattern depends only on the equality relation") {
    corpus::Generator g(201);
    for (int i = 0; i < 150; ++i) {
        bool orth = i % 2;
        auto s = orth ? g.orthogonal(3 + i % 9) : g.unitary(1 + i % 6);
        auto rows = s.rows();
        // strictly increasing maps preserving equalities (odd for orthogonal)
        Rational a(3 + i % 5, 2), b(i % 7 - 3, 3);
        for (auto& row : rows)
            for (auto& x : row) x = orth ? Rational(x * a) : Rational(x * a + b);
        auto t = Staircase(s.flavor(), rows);
        REQUIRE(validate(t).ok);
        CHECK(pat(t) == pat(s));
    }
}

TEST_CASE("property: orthogonal mirror symmetry") {
    corpus::Generator g(202);
    for (int i = 0; i < 150; ++i) {
        auto p = pat(g.orthogonal(3 + i % 10));
        CHECK(p.mirrored().same_graph(p));
        for (int k = 1; k <= p.top(); ++k)
            for (int j = 1; j <= k; ++j) CHECK(p.white(k, j) == p.white(k, k + 1 - j));
        for (int k = 1; k <= p.top(); k += 2) CHECK(p.white(k, (k + 1) / 2));
    }
}

TEST_CASE("property: widths change by at most one and shapes follow the widths") {
    corpus::Generator g(203);
    for (int i = 0; i < 200; ++i) {
        auto p = pat(i % 2 ? g.orthogonal(3 + i % 10) : g.unitary(1 + i % 6));
        for (const auto& c : p.components()) {
            CHECK(c.width(c.kb) == 1);
            if (c.kt < p.top()) CHECK(c.width(c.kt) == 1);
            for (int k = c.kb; k < c.kt; ++k) CHECK(std::abs(c.width(k + 1) - c.width(k)) <= 1);
        }
        for (const auto& e : p.shapes()) {
            const auto& c = p.components()[e.component];
            CHECK(e.w_lower == c.width(e.k));
            CHECK(e.w_upper == c.width(e.k + 1));
            Shape want = e.w_lower > e.w_upper ? Shape::M : e.w_lower < e.w_upper ? Shape::W : Shape::P;
            CHECK(e.shape == want);
        }
    }
}

TEST_CASE("property: width-one M-shapes count the components ending below the top") {
    corpus::Generator g(204);
    for (int i = 0; i < 200; ++i) {
        auto p = pat(i % 2 ? g.orthogonal(3 + i % 10) : g.unitary(1 + i % 6));
        int by_shapes = 0, by_components = 0;
        for (const auto& e : p.shapes()) {
            const auto& c = p.components()[e.component];
            if (e.shape == Shape::M && e.w_lower == 1 && e.k >= p.alpha() && e.k <= p.n() && p.counted(c)) ++by_shapes;
        }
        for (const auto& c : p.components())
            if (p.counted(c) && c.kt <= p.n() && c.kt >= p.alpha()) ++by_components;
        CHECK(by_shapes == by_components);
    }
}
