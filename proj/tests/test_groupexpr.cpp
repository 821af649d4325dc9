#include "doctest.h"
#include "gzfiber/groupexpr.hpp"
#include "gzfiber/oracle.hpp"
#include "support/corpus.hpp"
#include "support/fixtures.hpp"

using namespace gzfiber;
using fixtures::ortho;
using fixtures::pat;
using fixtures::unitary;

namespace {

const Factor* factor_of(const FiberPresentation& pres, int k, int j, const Pattern& p) {
    for (const auto& f : pres.factors)
        if (f.component == p.component_of(k, j)) return &f;
    return nullptr;
}

Chain chain(Family f, std::vector<int> g, std::vector<int> l, int q = 0) { return {f, g, l, q}; }

// dim of A\G/B recomputed from the tree
int biquotient_dim(const ExprPtr& e) {
    REQUIRE(e->kind == Expr::Kind::Biquotient);
    int d = 0;
    for (const auto& g : e->children) d += group_dim(g);
    for (const auto& x : e->a) d -= group_dim(x.group);
    for (const auto& x : e->b) d -= group_dim(x.group);
    return d;
}

bool torus_shaped(const Pattern& p) {
    for (const auto& c : p.components()) {
        if (c.kt < p.top()) {
            if (c.max_width() > 1) return false;
        } else {
            for (int k = c.kb; k < c.kt; ++k)
                if (c.width(k + 1) < c.width(k)) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("atoms and dimensions") {
    CHECK(group_dim(point()) == 0);
    CHECK(atom(Family::U, 0)->kind == Expr::Kind::Point);
    CHECK(atom(Family::SU, 1)->kind == Expr::Kind::Point);
    CHECK(atom(Family::SO, 1)->kind == Expr::Kind::Point);
    CHECK(group_dim(atom(Family::U, 4)) == 16);
    CHECK(group_dim(atom(Family::SU, 3)) == 8);
    CHECK(group_dim(atom(Family::SO, 5)) == 10);
    CHECK(group_dim(quotient(atom(Family::SO, 5), atom(Family::SO, 3))) == 7);
    CHECK(text(quotient(atom(Family::SO, 5), atom(Family::SO, 3))) == "SO(5)/SO(3)");
    auto b = balanced(atom(Family::U, 4), atom(Family::U, 2), atom(Family::U, 3));
    CHECK(group_dim(b) == 21);
    CHECK(text(quotient(b, atom(Family::U, 2))) == "U(4) (x)_{U(2)} U(3) / U(2)");
    CHECK(sexpr(quotient(b, atom(Family::U, 2))) == "(quot (bal (U 4) (U 2) (U 3)) (U 2))");
    CHECK(product({point(), atom(Family::U, 1), point()})->kind == Expr::Kind::Atom);
    CHECK(group_dim(product({torus(3), sphere(5)})) == 8);
}

TEST_CASE("normalization erases conjugation flags") {
    auto e = product({atom(Family::U, 2, true), atom(Family::SO, 3)});
    CHECK(has_nonstandard(e));
    auto n = normalize(e);
    CHECK_FALSE(has_nonstandard(n));
    CHECK(equal(normalize(n), n));
    CHECK(group_dim(n) == group_dim(e));
}

TEST_CASE("golden_u10 stabilizers") {
    auto p = pat(fixtures::load("u10.json"));
    CHECK(stabilizer_H(p, 4).text() == "U(4)");
    CHECK(stabilizer_H(p, 6).text() == "U(2) + U(2) + U(1) + U(1)");
    CHECK(stabilizer_L(p, 4).text() == "[1]+U(3)");
    CHECK(stabilizer_L(p, 9).text() == "U(2) + U(0) + U(0) + U(2) + U(0) + U(1) + U(0)");
}

TEST_CASE("so5 stabilizers") {
    auto p = pat(ortho({{0}, {1}, {1, -1}, {2, 1}}));
    CHECK(stabilizer_H(p, 2).text() == "SO(2)");
    CHECK(stabilizer_H(p, 4).text() == "U(2)^o");
    CHECK(stabilizer_H(p, 4, true).text() == "U(2)^o + U(2)");
    CHECK(equal(stabilizer_L(p, 3).expr(), stabilizer_H(p, 3).expr()));
    CHECK(group_dim(stabilizer_L(p, 2).expr()) == 0);
}

TEST_CASE("golden_u10 presentation") {
    auto p = pat(fixtures::load("u10.json"));
    auto pres = factorize(p);
    CHECK(pres.factors.size() == 10);
    CHECK(pres.torus_rank == 7);
    CHECK(torus_rank(p) == 7);
    CHECK(pres.dim == 33);
    CHECK(group_dim(pres.balanced) == 33);
    CHECK(sphere_form(pres) == "(S^1)^7 x (S^3)^3 x U(2)\\(U(4) x U(3))/U(2)");

    const Factor* big = factor_of(pres, 1, 1, p);
    REQUIRE(big);
    CHECK(text(big->telescoped.expr()) == "U(4) (x)_{U(2)} U(3) / U(2)");
    CHECK(text(big->biquotient) == "U(2)\\(U(4) x U(3))/U(2)");

    int circles = 0, diamonds = 0, stiefel = 0;
    for (const auto& f : pres.factors) {
        std::string t = text(f.telescoped.expr());
        circles += t == "U(1)";
        diamonds += t == "U(2) (x)_{U(1)} U(2)";
        stiefel += t == "U(2)/U(1)";
    }
    CHECK(circles == 6);
    CHECK(diamonds == 1);
    CHECK(stiefel == 1);
}

TEST_CASE("so5 presentation") {
    auto p = pat(ortho({{0}, {1}, {1, -1}, {2, 1}}));
    auto pres = factorize(p);
    CHECK(group_form(pres) == "SU(2) x SO(2)");
    CHECK(pres.dim == 4);
    CHECK(torus_rank(p) == 1);
    CHECK_FALSE(has_nonstandard(pres.balanced));
    CHECK(extract_torus(pres).rank == 1);
}

TEST_CASE("o23 factors") {
    auto p = pat(fixtures::load("o23.json"));
    auto pres = factorize(p);
    std::vector<const Factor*> white;
    for (const auto& f : pres.factors)
        if (f.color == Color::White && !f.telescoped.empty()) white.push_back(&f);
    REQUIRE(white.size() == 2);
    const Factor& x = *white[0];
    const Factor& y = *white[1];
    CHECK(x.kt == 7);
    CHECK(y.kb == 7);
    CHECK(text(x.telescoped.expr()) == "SO(3) (x)_{SO(2)} SO(3)");
    CHECK(text(x.simplified) == "S^2 x SO(3)");
    CHECK(text(y.telescoped.expr()) == "SO(8) (x)_{SO(7)} SO(8) (x)_{SO(6)} SO(7) / SO(3)");
    CHECK(text(y.simplified) == "S^7 x (SO(8) (x)_{SO(6)} SO(7) / SO(3))");
}

TEST_CASE("diamond below the top row telescopes to U(2)") {
    auto p = pat(unitary({{2}, {2, 2}, {3, 2, 1}, {4, 3, 1, 0}}));
    auto pres = factorize(p);
    const Factor* d = factor_of(pres, 1, 1, p);
    REQUIRE(d);
    CHECK(text(d->telescoped.expr()) == "U(2)");
    CHECK(text(d->biquotient) == "1\\U(2)/1");
}

TEST_CASE("single-row staircase is a point") {
    auto p = pat(unitary({{7}}));
    CHECK(balanced_product(p)->kind == Expr::Kind::Point);
    CHECK(factorize(p).dim == 0);
}

TEST_CASE("split_stiefel examples") {
    auto a = split_stiefel(chain(Family::U, {2, 2}, {1}), true);
    CHECK(text(a.expr) == "S^3 x U(2)");
    auto b = split_stiefel(chain(Family::SO, {3, 3}, {2}), true);
    CHECK(text(b.expr) == "S^2 x SO(3)");
    auto c = split_stiefel(chain(Family::U, {3, 2}, {1}, 1), false);
    CHECK(c.peeled.empty());
    CHECK(text(c.expr) == "U(3) (x)_{U(1)} U(2) / U(1)");
    CHECK(group_dim(a.expr) == chain(Family::U, {2, 2}, {1}).dim());
}

TEST_CASE("telescoping") {
    auto t = telescope(chain(Family::U, {1, 2, 3, 2, 2, 3, 2}, {1, 2, 2, 2, 2, 2}, 2));
    CHECK(t.groups == std::vector<int>{3, 3});
    CHECK(t.glues == std::vector<int>{2});
    CHECK(telescope(chain(Family::U, {1, 1, 1}, {1, 1}, 0)).groups == std::vector<int>{1});
    CHECK(telescope(chain(Family::SO, {1, 1}, {1}, 0)).empty());
}

TEST_CASE("biquotient of a two-group chain") {
    auto e = to_biquotient(chain(Family::U, {2, 2}, {1}));
    CHECK(text(e) == "1\\(U(2) x U(2))/U(1)");
    CHECK(group_dim(e) == 7);
    CHECK(biquotient_dim(e) == 7);
}

TEST_CASE("so4 family staircases") {
    struct Case {
        Staircase s;
        const char* form;
        int dim;
    };
    std::vector<Case> cases{
        {ortho({{0}, {0}, {0, 0}, {1, 0}, {1, 1, 0}, {1, 1, 1}, {1, 1, 1, 1}}), "SO(4)", 6},
        {ortho({{0}, {0}, {1, 0}, {1, 1}}), "SO(3)", 3},
        {ortho({{0}, {0}, {0, 0}, {1, 0}, {1, 1, 0}}), "SO(4)/SO(2)", 5},
        {ortho({{0}, {0}, {0, 0}, {0, 0}, {1, 0, 0}, {1, 1, 0}}), "SO(5)/SO(3)", 7},
    };
    for (const auto& c : cases) {
        REQUIRE(validate(c.s).ok);
        auto pres = factorize(pat(c.s));
        CHECK(group_form(pres) == c.form);
        CHECK(pres.dim == c.dim);
    }
}

TEST_CASE("property: rewrites preserve dimension") {
    corpus::Generator g(301);
    for (int i = 0; i < 300; ++i) {
        auto s = i % 2 ? g.orthogonal(3 + i % 12) : g.unitary(1 + i % 8);
        auto p = pat(s);
        auto pres = factorize(p);
        int sum = 0;
        for (const auto& f : pres.factors) {
            int d = f.raw.dim();
            CHECK(f.telescoped.dim() == d);
            CHECK(group_dim(f.split.expr) == d);
            CHECK(group_dim(f.simplified) == d);
            CHECK(group_dim(f.biquotient) == d);
            CHECK(biquotient_dim(f.biquotient) == d);
            sum += d;
        }
        CHECK(sum == pres.dim);
        CHECK(group_dim(pres.balanced) == pres.dim);
        CHECK(group_dim(pres.biquotient) == pres.dim);
        CHECK(biquotient_dim(pres.biquotient) == pres.dim);
        CHECK(tower_dim(sphere_tower(p)) == pres.dim);
        auto ts = extract_torus(pres);
        int residual = 0;
        for (const auto& r : ts.residual) residual += group_dim(r);
        CHECK(ts.rank + residual == pres.dim);
        CHECK(ts.rank == torus_rank(p));
    }
}

TEST_CASE("property: unitary dimension is the M-shape sphere sum") {
    corpus::Generator g(302);
    for (int i = 0; i < 200; ++i) {
        auto p = pat(g.unitary(1 + i % 8));
        int d = 0;
        for (const auto& e : p.shapes())
            if (e.shape == Shape::M && e.k <= p.n()) d += 2 * e.w_lower - 1;
        CHECK(group_dim(balanced_product(p)) == d);
    }
}

TEST_CASE("property: normalization is idempotent") {
    corpus::Generator g(303);
    int flagged = 0;
    for (int i = 0; i < 300; ++i) {
        auto p = pat(g.orthogonal(4 + i % 10));
        for (int k = 2; k <= p.top(); ++k) {
            auto h = stabilizer_H(p, k, true).expr();
            flagged += has_nonstandard(h);
            auto n = normalize(h);
            CHECK_FALSE(has_nonstandard(n));
            CHECK(equal(normalize(n), n));
            CHECK(group_dim(n) == group_dim(h));
        }
        CHECK_FALSE(has_nonstandard(factorize(p).balanced));
    }
    CHECK(flagged > 0);
}

TEST_CASE("property: telescoping agrees with the local-extrema route") {
    corpus::Generator g(304);
    for (int i = 0; i < 400; ++i) {
        auto s = i % 2 ? g.orthogonal(3 + i % 12) : g.unitary(1 + i % 8);
        auto p = pat(s);
        for (const auto& f : factorize(p).factors) {
            int upper = f.reaches_top ? f.widths.back() : 0;
            std::vector<int> w;
            for (int k = std::max(f.kb, p.alpha()); k <= std::min(f.kt, p.n()); ++k) w.push_back(f.widths[k - f.kb]);
            CHECK(telescope_by_extrema(w, upper, f.raw.family) == f.telescoped);
        }
    }
}

TEST_CASE("property: unitary fiber is a torus exactly for torus-shaped patterns") {
    corpus::Generator g(305);
    int tori = 0;
    for (int i = 0; i < 400; ++i) {
        auto p = pat(g.unitary(1 + i % 6));
        auto pres = factorize(p);
        bool torus = pres.dim == pres.torus_rank;
        tori += torus;
        CHECK(torus == torus_shaped(p));
    }
    CHECK(tori > 20);
}
