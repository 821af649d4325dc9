#include "gzfiber/invariants.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace gzfiber {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

// Rank by exact elimination; rows are arbitrary vectors of equal length.
int rank_q(Matrix a) {
    if (a.empty()) return 0;
    int rows = static_cast<int>(a.size()), cols = static_cast<int>(a[0].size()), r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[r]);
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c] / a[r][c];
            for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

int rank_f2(std::vector<std::vector<int>> a) {
    if (a.empty()) return 0;
    for (auto& row : a)
        for (auto& x : row) x = ((x % 2) + 2) % 2;
    int rows = static_cast<int>(a.size()), cols = static_cast<int>(a[0].size()), r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c]) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[r]);
        for (int i = 0; i < rows; ++i)
            if (i != r && a[i][c])
                for (int j = c; j < cols; ++j) a[i][j] ^= a[r][j];
        ++r;
    }
    return r;
}

int pi3_dim(Family f, int n) {
    if (f == Family::SO) return n == 3 ? 1 : n == 4 ? 2 : n >= 5 ? 1 : 0;
    return n >= 2 ? 1 : 0;
}

// pi_3 of the lower-right block inclusion G(m) -> G(M), as a
// pi3_dim(M) x pi3_dim(m) matrix.
std::vector<std::vector<int>> pi3_map(Family f, int m, int M) {
    int rows = pi3_dim(f, M), cols = pi3_dim(f, m);
    std::vector<std::vector<int>> a(rows, std::vector<int>(cols, 0));
    if (!rows || !cols) return a;
    if (f != Family::SO || m >= 5) {
        a[0][0] = 1;
    } else if (m == 3) {
        if (M == 3) a[0][0] = 1;
        else if (M == 4) a[0][0] = a[1][0] = 1;
        else a[0][0] = 2;
    } else if (m == 4) {
        if (M == 4) a[0][0] = a[1][1] = 1;
        else a[0][0] = a[0][1] = 1;
    }
    return a;
}

enum class Pi1 { None, Free, Two };

Pi1 pi1_kind(Family f, int n) {
    if (f == Family::SO) return n == 2 ? Pi1::Free : n >= 3 ? Pi1::Two : Pi1::None;
    if (f == Family::SU) return Pi1::None;
    return n >= 1 ? Pi1::Free : Pi1::None;
}

}  // namespace

HomotopyProfile chain_homotopy(const Chain& c) {
    HomotopyProfile h;
    int r = static_cast<int>(c.groups.size());
    if (r == 0) return h;
    // subgroup atoms with their target slots
    struct Sub {
        int rank;
        std::vector<int> slots;
    };
    std::vector<Sub> subs;
    for (int i = 0; i + 1 < r; ++i) subs.push_back({c.glues[i], {i, i + 1}});
    subs.push_back({c.quotient, {r - 1}});

    // pi_3: cokernel rank over Q
    std::vector<int> off(r + 1, 0);
    for (int i = 0; i < r; ++i) off[i + 1] = off[i] + pi3_dim(c.family, c.groups[i]);
    Matrix cols3;
    for (const auto& s : subs) {
        int d = pi3_dim(c.family, s.rank);
        for (int a = 0; a < d; ++a) {
            std::vector<Rational> col(off[r], 0);
            for (int slot : s.slots) {
                auto m = pi3_map(c.family, s.rank, c.groups[slot]);
                for (std::size_t b = 0; b < m.size(); ++b) col[off[slot] + b] += m[b][a];
            }
            cols3.push_back(col);
        }
    }
    h.pi3_rank = off[r] - (off[r] ? rank_q(cols3) : 0);

    // pi_1 and pi_2
    std::vector<Pi1> g1(r);
    for (int i = 0; i < r; ++i) g1[i] = pi1_kind(c.family, c.groups[i]);
    std::vector<std::vector<int>> rel;
    Matrix free_images;
    int free_subs = 0;
    for (const auto& s : subs) {
        Pi1 k = pi1_kind(c.family, s.rank);
        if (k == Pi1::None) continue;
        std::vector<int> col(r, 0);
        std::vector<Rational> qcol(r, 0);
        for (int slot : s.slots) {
            if (g1[slot] == Pi1::None) continue;
            col[slot] = 1;
            if (k == Pi1::Free && g1[slot] == Pi1::Free) qcol[slot] = 1;
        }
        rel.push_back(col);
        if (k == Pi1::Free) {
            ++free_subs;
            free_images.push_back(qcol);
        }
    }
    Matrix qrel;
    for (const auto& col : rel) qrel.push_back(std::vector<Rational>(col.begin(), col.end()));
    for (int i = 0; i < r; ++i)
        if (g1[i] == Pi1::Two) {
            std::vector<int> col(r, 0);
            col[i] = 2;
            rel.push_back(col);
            qrel.push_back(std::vector<Rational>(col.begin(), col.end()));
        }
    int gens = 0;
    for (auto k : g1) gens += k != Pi1::None;
    // coordinates of groups without pi_1 are zero in every relation, so
    // counting over all r slots only adds the same constant to both sides
    int none = r - gens;
    int free_rank = r - rank_q(qrel) - none;
    int f2_dim = r - rank_f2(rel) - none;
    h.pi1_free_rank = free_rank;
    h.pi1_two_torsion_rank = f2_dim - free_rank;
    h.pi2_rank = free_subs - rank_q(free_images);
    return h;
}

namespace {

void add(HomotopyProfile& a, const HomotopyProfile& b) {
    a.pi1_free_rank += b.pi1_free_rank;
    a.pi1_two_torsion_rank += b.pi1_two_torsion_rank;
    a.pi2_rank += b.pi2_rank;
    a.pi3_rank += b.pi3_rank;
}

// Runs of rows of width >= 2 that stay below the top row.
int pruned_runs(const Component& c, int top) {
    int runs = 0;
    bool in = false, touches = false;
    for (int k = c.kb; k <= c.kt + 1; ++k) {
        bool wide = k <= c.kt && c.width(k) >= 2;
        if (wide) {
            if (!in) touches = false;
            in = true;
            touches = touches || k == top;
        } else if (in) {
            in = false;
            if (!touches) ++runs;
        }
    }
    return runs;
}

std::vector<int> compress(const std::vector<int>& v) {
    std::vector<int> x;
    for (int w : v)
        if (x.empty() || x.back() != w) x.push_back(w);
    return x;
}

bool is_diamond(const WhitePiece& w) { return w.widths == std::vector<int>{1, 2, 1}; }

void require(const Pattern& p, Flavor f, const char* op) {
    if (p.flavor() != f) throw std::invalid_argument(std::string(op) + ": wrong flavor");
}

}  // namespace

HomotopyProfile homotopy_unitary(const Pattern& p) {
    require(p, Flavor::Unitary, "homotopy_unitary");
    HomotopyProfile h;
    h.pi1_free_rank = torus_rank(p);
    for (const auto& c : p.components()) h.pi3_rank += pruned_runs(c, p.top());
    return h;
}

HomotopyProfile homotopy_orthogonal(const Pattern& p) {
    require(p, Flavor::Orthogonal, "homotopy_orthogonal");
    HomotopyProfile h;
    h.pi1_free_rank = torus_rank(p);
    for (const auto& c : p.components())
        if (c.color == Color::Black && p.counted(c)) h.pi3_rank += pruned_runs(c, p.top());
    for (const auto& w : p.white_pieces()) {
        // f: width-2 local minima between wider rows, or at the top below a wider row
        auto x = compress(w.widths);
        bool top = w.kt == p.top();
        for (std::size_t i = 1; i < x.size(); ++i) {
            if (x[i] != 2 || x[i - 1] < 3) continue;
            bool last = i + 1 == x.size();
            if ((last && top) || (!last && x[i + 1] >= 3)) ++h.pi2_rank;
        }
        if (is_diamond(w)) continue;
        Chain raw;
        raw.family = Family::SO;
        int first = std::max(w.kb, p.alpha()), end = std::min(w.kt, p.n());
        if (first > end) continue;
        for (int k = first; k <= end; ++k) {
            raw.groups.push_back(w.width(k));
            if (k < end) raw.glues.push_back(std::min(w.width(k), w.width(k + 1)));
        }
        raw.quotient = std::min(w.width(end), end < w.kt ? w.width(end + 1) : 0);
        Chain t = telescope(raw);
        if (t.empty()) continue;
        // s: one Z/2 per factor whose quotient is trivial
        if (t.quotient == 0) ++h.pi1_two_torsion_rank;
        // g = r + N_4 - #{m_j >= 3}, the quotient counted among the m_j
        int r = static_cast<int>(t.groups.size());
        int n4 = static_cast<int>(std::count(t.groups.begin(), t.groups.end(), 4));
        int n3 = static_cast<int>(std::count_if(t.glues.begin(), t.glues.end(), [](int m) { return m >= 3; }));
        n3 += t.quotient >= 3;
        h.pi3_rank += r + n4 - n3;
    }
    h.notes.push_back("s per stated procedure: white factors split at pinches first, singleton pieces excluded");
    return h;
}

HomotopyProfile homotopy(const Pattern& p) {
    return p.flavor() == Flavor::Unitary ? homotopy_unitary(p) : homotopy_orthogonal(p);
}

HomotopyProfile homotopy_by_exact_sequence(const Pattern& p) {
    HomotopyProfile h;
    for (const auto& f : factorize(p).factors) add(h, chain_homotopy(f.raw));
    return h;
}

// ---------------------------------------------------------------------------
// Polynomials.

Polynomial poly_one() { return {1}; }

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    if (a.empty() || b.empty()) return {};
    Polynomial c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    return c;
}

Polynomial exterior_poly(const std::vector<int>& degrees) {
    Polynomial p = poly_one();
    for (int d : degrees) {
        Polynomial f(d + 1, 0);
        f[0] += 1;
        f[d] += 1;
        p = poly_mul(p, f);
    }
    return p;
}

std::string poly_text(const Polynomial& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0) {
            s += p[i].str();
            continue;
        }
        if (p[i] != 1) s += p[i].str();
        s += i == 1 ? "q" : "q^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

std::vector<int> ExteriorModel::degrees() const {
    std::vector<int> d;
    for (const auto& g : generators) d.push_back(g.degree);
    std::sort(d.begin(), d.end());
    return d;
}

int ExteriorModel::degree_sum() const {
    int s = 0;
    for (const auto& g : generators) s += g.degree;
    return s;
}

// ---------------------------------------------------------------------------
// Stiefel manifolds SO(M)/SO(m).

std::string StiefelCohomology::name() const {
    if (m <= 1) return "SO(" + std::to_string(M) + ")";
    if (m == M - 1) return "S^" + std::to_string(M - 1);
    if (m == M - 2) return "V2(R^" + std::to_string(M) + ")";
    return "SO(" + std::to_string(M) + ")/SO(" + std::to_string(m) + ")";
}

Polynomial StiefelCohomology::poincare_f2() const { return exterior_poly(mod2_degrees); }

Polynomial StiefelCohomology::poincare_free() const {
    std::vector<int> d;
    for (const auto& g : free) d.push_back(g.degree);
    return exterior_poly(d);
}

int StiefelCohomology::dim() const { return M * (M - 1) / 2 - m * (m - 1) / 2; }

Polynomial torsion_from_polys(const Polynomial& f2, const Polynomial& free) {
    // dim H^i(;F2) = b_i + t_i + t_{i+1}
    std::size_t top = std::max(f2.size(), free.size());
    Polynomial t(top + 1, 0);
    for (std::size_t i = 0; i < top; ++i) {
        Integer a = i < f2.size() ? f2[i] : Integer(0), b = i < free.size() ? free[i] : Integer(0);
        t[i + 1] = a - b - t[i];
        if (t[i + 1] < 0) throw std::logic_error("inconsistent mod-2 and free Poincare data");
    }
    while (!t.empty() && t.back() == 0) t.pop_back();
    return t;
}

StiefelCohomology stiefel_cohomology(int M, int m) {
    if (m < 0 || m >= M) throw std::invalid_argument("stiefel_cohomology needs 0 <= m < M");
    StiefelCohomology s;
    s.M = M;
    s.m = std::max(m, 1);
    int lo = s.m;
    for (int i = lo; i < M; ++i) {
        s.mod2_degrees.push_back(i);
        std::string v = "v" + std::to_string(i);
        s.relations.push_back(v + "^2 = " + (2 * i < M ? "v" + std::to_string(2 * i) : std::string("0")));
        if (i % 2 == 1 && i + 1 < M) s.relations.push_back("Sq1 " + v + " = v" + std::to_string(i + 1));
    }
    for (int j = 1; 2 * j + 1 <= M; ++j)
        if (2 * j - 1 >= lo) s.free.push_back({4 * j - 1, "q" + std::to_string(4 * j - 1), "[" +
                                               std::to_string(2 * j - 1) + "," + std::to_string(2 * j + 1) + "]"});
    if (lo % 2 == 0 && lo >= 2) s.free.push_back({lo, "u" + std::to_string(lo), "m even"});
    if (M % 2 == 0) s.free.push_back({M - 1, "chi" + std::to_string(M - 1), "M even"});
    std::sort(s.free.begin(), s.free.end(), [](const Generator& a, const Generator& b) { return a.degree < b.degree; });
    s.torsion = torsion_from_polys(s.poincare_f2(), s.poincare_free());
    if (M == 4 && lo == 1)
        s.notes.push_back("presentation with an undefined symbol y read via the general catalog");
    if (M % 2 == 1 && lo == M - 2 && lo >= 3)
        s.notes.push_back("mod-2 ring is Z/2[v]/(v^2) tensor Lambda[Sq1 v], not an exterior algebra on z, s");
    return s;
}

// ---------------------------------------------------------------------------
// Cohomology models.

namespace {

std::string shape_id(const ShapeEntry& e) {
    return "M" + std::to_string(e.w_lower) + "@k" + std::to_string(e.k) + "#" + std::to_string(e.component);
}

}  // namespace

ExteriorModel cohomology_unitary(const Pattern& p) {
    require(p, Flavor::Unitary, "cohomology_unitary");
    ExteriorModel m;
    for (const auto& e : p.shapes())
        if (e.shape == Shape::M && e.k >= p.alpha() && e.k <= p.n())
            m.generators.push_back({2 * e.w_lower - 1, "z" + std::to_string(2 * e.w_lower - 1), shape_id(e)});
    return m;
}

Polynomial WhiteFactorModel::poincare_f2() const { return exterior_poly(mod2_degrees); }

Polynomial WhiteFactorModel::hexagon_f2() const {
    Polynomial p = poly_one();
    for (const auto& h : hexagons) p = poly_mul(p, h.cohomology.poincare_f2());
    return p;
}

Polynomial WhiteFactorModel::hexagon_free() const {
    Polynomial p = poly_one();
    for (const auto& h : hexagons) p = poly_mul(p, h.cohomology.poincare_free());
    return p;
}

ExteriorModel OrthogonalCohomologyModel::fso_free() const {
    ExteriorModel m;
    for (const auto& f : fso) m.generators.insert(m.generators.end(), f.free.generators.begin(), f.free.generators.end());
    return m;
}

std::vector<int> OrthogonalCohomologyModel::fso_mod2_degrees() const {
    std::vector<int> d;
    for (const auto& f : fso) d.insert(d.end(), f.mod2_degrees.begin(), f.mod2_degrees.end());
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<std::string> OrthogonalCohomologyModel::additive_model() const {
    std::vector<std::string> c;
    for (const auto& f : fso) c.insert(c.end(), f.additive_model.begin(), f.additive_model.end());
    return c;
}

OrthogonalCohomologyModel cohomology_orthogonal(const Pattern& p) {
    require(p, Flavor::Orthogonal, "cohomology_orthogonal");
    OrthogonalCohomologyModel model;
    const auto& comps = p.components();
    for (const auto& e : p.shapes()) {
        const auto& c = comps[e.component];
        if (c.color != Color::Black || !p.counted(c)) continue;
        if (e.shape == Shape::M && e.k >= p.alpha() && e.k <= p.n())
            model.fu.generators.push_back({2 * e.w_lower - 1, "z" + std::to_string(2 * e.w_lower - 1), shape_id(e)});
    }
    auto pres = factorize(p);
    for (const auto& w : p.white_pieces()) {
        int first = std::max(w.kb, p.alpha()), end = std::min(w.kt, p.n());
        if (first > end) continue;
        WhiteFactorModel f;
        f.component = w.component;
        f.kb = w.kb;
        f.kt = w.kt;
        for (const auto& fa : pres.factors)
            if (fa.color == Color::White && fa.component == w.component && fa.kb == w.kb) f.group_form = text(fa.simplified);
        // M-shapes of the piece, bottom-up
        std::vector<int> mk;
        for (int k = first; k <= end; ++k) {
            int a = w.width(k), b = w.width(k + 1);
            if (a > b && a >= 2) {
                f.mod2_degrees.push_back(a - 1);
                mk.push_back(k);
            }
        }
        std::sort(f.mod2_degrees.begin(), f.mod2_degrees.end());
        std::vector<bool> used(mk.size(), false);
        for (std::size_t i = 0; i + 1 < mk.size(); ++i) {
            int a = w.width(mk[i]);
            if (used[i] || a % 2 == 0 || a < 3 || mk[i + 1] != mk[i] + 1) continue;
            int s = (a - 1) / 2;
            ShapeEntry e{w.component, mk[i], a, a - 1, Shape::M};
            f.free.generators.push_back({4 * s - 1, "q" + std::to_string(4 * s - 1), "M" + shape_id(e)});
            f.mm_widths.push_back(a);
            f.additive_model.push_back("V2(R^" + std::to_string(a) + ")");
            used[i] = used[i + 1] = true;
        }
        for (std::size_t i = 0; i < mk.size(); ++i) {
            if (used[i]) continue;
            int a = w.width(mk[i]);
            ShapeEntry e{w.component, mk[i], a, a - 1, Shape::M};
            f.free.generators.push_back({a - 1, "z" + std::to_string(a - 1), shape_id(e)});
            f.additive_model.push_back("S^" + std::to_string(a - 1));
        }
        // hexagons from the telescoped chain: SO(M_p)/SO(m_p), m_r = Q
        Chain raw;
        raw.family = Family::SO;
        for (int k = first; k <= end; ++k) {
            raw.groups.push_back(w.width(k));
            if (k < end) raw.glues.push_back(std::min(w.width(k), w.width(k + 1)));
        }
        raw.quotient = std::min(w.width(end), end < w.kt ? w.width(end + 1) : 0);
        Chain t = telescope(raw);
        for (std::size_t i = 0; i < t.groups.size(); ++i) {
            int M = t.groups[i];
            int m = i + 1 < t.groups.size() ? t.glues[i] : t.quotient;
            f.hexagons.push_back({M, std::max(m, 1), stiefel_cohomology(M, std::max(m, 1))});
        }
        if (f.mod2_degrees.empty() && f.hexagons.empty()) continue;
        model.fso.push_back(std::move(f));
    }
    return model;
}

Coefficients parse_coefficients(const std::string& s) {
    if (s == "F2") return Coefficients::F2;
    if (s == "Q") return Coefficients::Q;
    if (s == "Z-free" || s == "Z") return Coefficients::ZFree;
    throw std::invalid_argument("unknown coefficients '" + s + "'");
}

Polynomial poincare_polynomial(const ExteriorModel& m, Coefficients) {
    std::vector<int> d;
    for (const auto& g : m.generators) d.push_back(g.degree);
    return exterior_poly(d);
}

Polynomial poincare_polynomial(const OrthogonalCohomologyModel& m, Coefficients c) {
    Polynomial p = poincare_polynomial(m.fu, c);
    for (const auto& f : m.fso) p = poly_mul(p, c == Coefficients::F2 ? f.hexagon_f2() : f.hexagon_free());
    return p;
}

Polynomial integral_torsion(const OrthogonalCohomologyModel& m) {
    return torsion_from_polys(poincare_polynomial(m, Coefficients::F2), poincare_polynomial(m, Coefficients::Q));
}

}  // namespace gzfiber
