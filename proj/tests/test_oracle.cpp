#include "doctest.h"
#include "gzfiber/groupexpr.hpp"
#include "gzfiber/oracle.hpp"
#include "support/corpus.hpp"
#include "support/fixtures.hpp"

#include <cmath>
#include <map>

using namespace gzfiber;
using fixtures::ortho;
using fixtures::pat;
using fixtures::unitary;

namespace {

Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
    Eigen::MatrixXd m(rows.size(), rows.begin()->size());
    int i = 0;
    for (const auto& r : rows) {
        int j = 0;
        for (double x : r) m(i, j++) = x;
        ++i;
    }
    return m;
}

double maxdiff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

// total r^2 attached to each lower-row value; entries within `eps` of a
// limit value are pooled with it
std::map<Rational, Rational> border_mass(const XiMatrix& xi, const std::vector<Rational>& limits, const Rational& eps) {
    std::map<Rational, Rational> m;
    for (const auto& v : limits) m[v] = 0;
    for (const auto& b : xi.border) {
        Rational mu = xi.lower[b.index];
        for (const auto& v : limits)
            if (abs_q(mu - v) <= eps) {
                m[v] += b.r2;
                break;
            }
    }
    return m;
}

}  // namespace

TEST_CASE("r squared examples") {
    auto a = unitary({{1}, {2, 0}});
    auto pa = pat(a);
    CHECK(r_squared(pa, a, 1, pa.component_of(1, 1)) == 1);
    CHECK(maxdiff(build_xi(a, 1).numeric(), mat({{1, 1}, {1, 1}})) == 0);

    auto b = unitary({{2}, {3, 1}});
    auto pb = pat(b);
    CHECK(r_squared(pb, b, 1, pb.component_of(1, 1)) == 1);
    CHECK(maxdiff(build_xi(b, 1).numeric(), mat({{2, 1}, {1, 2}})) == 0);

    // the lower entry continues up-left: a P-shape, no border mass
    auto c = unitary({{2}, {2, 1}});
    auto pc = pat(c);
    CHECK(r_squared(pc, c, 1, pc.component_of(1, 1)) == 0);
    auto xc = build_xi(c, 1);
    CHECK(xc.c == 1);
    CHECK(maxdiff(xc.numeric(), mat({{2, 0}, {0, 1}})) == 0);
}

TEST_CASE("W-shapes carry no border mass") {
    corpus::Generator g(501);
    int seen = 0;
    for (int i = 0; i < 100; ++i) {
        auto s = i % 2 ? g.orthogonal(3 + i % 9) : g.unitary(1 + i % 6);
        auto p = pat(s);
        for (const auto& e : p.shapes()) {
            if (e.k < s.alpha() || e.k > s.n() || e.shape == Shape::M || !p.counted(p.components()[e.component])) continue;
            CHECK(r_squared(p, s, e.k, e.component) == 0);
            ++seen;
        }
    }
    CHECK(seen > 100);
}

TEST_CASE("single-row staircase has nothing to check") {
    auto r = eigencheck(unitary({{3}}));
    CHECK(r.rows.empty());
    CHECK(r.pass);
}

TEST_CASE("eigencheck on the golden staircases") {
    CHECK(eigencheck(fixtures::load("u10.json")).pass);
    CHECK(eigencheck(ortho({{0}, {1}, {1, -1}, {2, 1}})).pass);
    CHECK(eigencheck(fixtures::load("o23.json")).pass);
}

TEST_CASE("eigencheck with wide spreads") {
    std::vector<std::vector<Rational>> rows(7);
    rows[6] = {Rational(1000), Rational(700), Rational(300), Rational(10), Rational(-5), Rational(-400), Rational(-1000)};
    for (int k = 6; k >= 1; --k)
        for (int j = 0; j < k; ++j) rows[k - 1].push_back((rows[k][j] * 2 + rows[k][j + 1]) / 3);
    Staircase s(Flavor::Unitary, rows);
    REQUIRE(validate(s).ok);
    CHECK(eigencheck(s, 1e-8).pass);
}

TEST_CASE("corrupted border mass fails the eigencheck") {
    for (const auto& s : {fixtures::load("u10.json"), ortho({{0}, {1}, {1, -1}, {2, 1}})}) {
        int corrupted = 0;
        for (int k = s.alpha(); k <= s.n(); ++k) {
            auto xi = build_xi(s, k);
            CHECK(eigencheck_xi(xi, 1e-9).pass);
            for (auto& b : xi.border)
                if (b.r2 != 0) {
                    b.r2 += 1;
                    CHECK_FALSE(eigencheck_xi(xi, 1e-9).pass);
                    ++corrupted;
                    break;
                }
        }
        CHECK(corrupted > 0);
    }
}

TEST_CASE("conjugator examples") {
    auto a = unitary({{1}, {2, 0}});
    auto c = conjugator_a(build_xi(a, 1));
    REQUIRE(c);
    CHECK(c->residual < 1e-12);
    CHECK(std::abs(c->det - 1) < 1e-12);
    double h = 1 / std::sqrt(2.0);
    // rows are +-(1,1)/sqrt2 and +-(-1,1)/sqrt2
    CHECK(std::abs(std::abs(c->a(0, 0)) - h) < 1e-12);
    CHECK(std::abs(std::abs(c->a(0, 1)) - h) < 1e-12);
    CHECK(std::abs(c->a(0, 0) * c->a(1, 0) + c->a(0, 1) * c->a(1, 1)) < 1e-12);

    auto d = unitary({{2}, {2, 1}});
    auto cd = conjugator_a(build_xi(d, 1));
    REQUIRE(cd);
    CHECK(maxdiff(cd->a.cwiseAbs(), Eigen::MatrixXd::Identity(2, 2)) < 1e-12);

    auto so5 = ortho({{0}, {1}, {1, -1}, {2, 1}});
    auto c4 = conjugator_a(build_xi(so5, 4));
    REQUIRE(c4);
    CHECK(c4->residual < 1e-9);
}

TEST_CASE("sphere towers") {
    auto u = pat(fixtures::load("u10.json"));
    for (const auto& r : sphere_tower(u))
        if (r.k == 4) CHECK(r.spheres == std::vector<int>{7});
    auto so5 = pat(ortho({{0}, {1}, {1, -1}, {2, 1}}));
    auto t = sphere_tower(so5);
    REQUIRE(t.size() >= 2);
    CHECK(t[0].k == 2);
    CHECK(t[0].spheres == std::vector<int>{1});
    // every component reaches the top: only W and P shapes
    auto top = pat(unitary({{1}, {2, 1}, {2, 1, 0}}));
    for (const auto& r : sphere_tower(top)) CHECK(r.spheres.empty());
}

TEST_CASE("canonical elements and Pfaffians") {
    CHECK(maxdiff(canonical_element(Flavor::Unitary, 2, {Rational(3), Rational(1)}), mat({{3, 0}, {0, 1}})) == 0);
    auto b = canonical_element(Flavor::Orthogonal, 3, {Rational(2)});
    CHECK(b.rows() == 3);
    CHECK(std::abs(pfaffian(b.topLeftCorner(2, 2))) == doctest::Approx(2));
    CHECK(pfaffian(mat({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 3}, {0, 0, -3, 0}})) == doctest::Approx(3));
}

TEST_CASE("invalid input is refused") {
    CHECK_THROWS(build_xi(unitary({{9}, {1, 0}}), 1));
    CHECK_THROWS(build_xi(unitary({{1}, {2, 0}}), 2));
}

TEST_CASE("property: eigencheck and conjugators on the corpus") {
    corpus::Generator g(502);
    for (int i = 0; i < 300; ++i) {
        auto s = i % 2 ? g.orthogonal(3 + i % 12) : g.unitary(1 + i % 8);
        auto r = eigencheck(s, 1e-9);
        CHECK(r.pass);
        for (const auto& row : r.rows) CHECK(row.deviation >= 0);
        for (int k = s.alpha(); k <= s.n(); ++k) {
            std::string diag;
            auto c = conjugator_a(build_xi(s, k), &diag);
            REQUIRE_MESSAGE(c, diag);
            CHECK(c->residual < 1e-8);
            CHECK(c->orthogonality < 1e-10);
            CHECK(std::abs(c->det - 1) < 1e-10);
        }
    }
}

TEST_CASE("property: r squared is continuous under specialization") {
    corpus::Generator g(503);
    int tested = 0;
    for (int i = 0; i < 400 && tested < 150; ++i) {
        auto limit = g.unitary(2 + i % 5);
        int k = 1 + i % limit.n();
        const auto& up = limit.row(k + 1);
        const auto& row = limit.row(k);
        // an entry of row k sitting on its upper-left neighbour
        for (int j = 0; j < k; ++j) {
            if (row[j] != up[j] || up[j] == up[j + 1]) continue;
            if (k > 1 && j < k - 1 && limit.row(k - 1)[j] == row[j]) continue;
            auto shifted = [&](const Rational& eps) {
                auto rows = limit.rows();
                rows[k - 1][j] -= eps;
                return Staircase(Flavor::Unitary, rows);
            };
            auto diff = [&](const Rational& eps) {
                auto s = shifted(eps);
                REQUIRE(validate(s).ok);
                auto lim = border_mass(build_xi(limit, k), row, Rational(0));
                auto near = border_mass(build_xi(s, k), row, 2 * eps);
                double d = 0;
                for (const auto& [v, mass] : lim) d = std::max(d, std::abs(to_double(near[v] - mass)));
                return d;
            };
            double d1 = diff(Rational(1, 1000)), d2 = diff(Rational(1, 1000000));
            CHECK(d2 <= d1 / 100 + 1e-15);
            ++tested;
            break;
        }
    }
    CHECK(tested >= 100);
}
