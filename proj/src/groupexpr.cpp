#include "gzfiber/groupexpr.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gzfiber {

std::string to_string(Family f) {
    switch (f) {
        case Family::U: return "U";
        case Family::SU: return "SU";
        case Family::SO: return "SO";
    }
    return "?";
}

bool trivial_atom(Family f, int rank) { return f == Family::U ? rank <= 0 : rank <= 1; }

int atom_dim(Family f, int rank) {
    if (trivial_atom(f, rank)) return 0;
    switch (f) {
        case Family::U: return rank * rank;
        case Family::SU: return rank * rank - 1;
        case Family::SO: return rank * (rank - 1) / 2;
    }
    return 0;
}

bool Atom::trivial() const { return trivial_atom(family, rank); }
int Atom::dim() const { return atom_dim(family, rank); }

std::string Atom::text() const {
    return to_string(family) + "(" + std::to_string(rank) + ")" + (nonstandard ? "^o" : "");
}

// ---------------------------------------------------------------------------
// Constructors.  Trivial atoms and trivial gluing groups are normalized away
// immediately, so syntactic equality is meaningful.

ExprPtr point() {
    static const ExprPtr pt = std::make_shared<Expr>();
    return pt;
}

ExprPtr atom(Family f, int rank, bool nonstandard) {
    if (trivial_atom(f, rank)) return point();
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Atom;
    e->atom = {f, rank, nonstandard && f == Family::U};
    return e;
}

ExprPtr torus(int rank) {
    if (rank <= 0) return point();
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Torus;
    e->n = rank;
    return e;
}

ExprPtr sphere(int dim) {
    if (dim <= 0) throw std::invalid_argument("sphere of dimension <= 0");
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Sphere;
    e->n = dim;
    return e;
}

ExprPtr product(std::vector<ExprPtr> factors) {
    std::vector<ExprPtr> flat;
    for (auto& f : factors) {
        if (!f || f->kind == Expr::Kind::Point) continue;
        if (f->kind == Expr::Kind::Product)
            flat.insert(flat.end(), f->children.begin(), f->children.end());
        else
            flat.push_back(f);
    }
    if (flat.empty()) return point();
    if (flat.size() == 1) return flat.front();
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Product;
    e->children = std::move(flat);
    return e;
}

ExprPtr balanced(ExprPtr left, ExprPtr glue, ExprPtr right, Embedding into_left, Embedding into_right) {
    if (glue->kind == Expr::Kind::Point) return product({left, right});
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Balanced;
    e->children = {std::move(left), std::move(right)};
    e->sub = std::move(glue);
    e->embed = {std::move(into_left), std::move(into_right)};
    return e;
}

ExprPtr quotient(ExprPtr total, ExprPtr sub, Embedding into_total) {
    if (sub->kind == Expr::Kind::Point) return total;
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Quotient;
    e->children = {std::move(total)};
    e->sub = std::move(sub);
    e->embed = {std::move(into_total)};
    return e;
}

ExprPtr biquotient(std::vector<Diagonal> a, std::vector<ExprPtr> g, std::vector<Diagonal> b) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Biquotient;
    e->children = std::move(g);
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}

int group_dim(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Point: return 0;
        case Expr::Kind::Atom: return e->atom.dim();
        case Expr::Kind::Torus:
        case Expr::Kind::Sphere: return e->n;
        case Expr::Kind::Product: {
            int d = 0;
            for (const auto& c : e->children) d += group_dim(c);
            return d;
        }
        case Expr::Kind::Balanced:
            return group_dim(e->children[0]) + group_dim(e->children[1]) - group_dim(e->sub);
        case Expr::Kind::Quotient: return group_dim(e->children[0]) - group_dim(e->sub);
        case Expr::Kind::Biquotient: {
            int d = 0;
            for (const auto& c : e->children) d += group_dim(c);
            for (const auto& x : e->a) d -= group_dim(x.group);
            for (const auto& x : e->b) d -= group_dim(x.group);
            return d;
        }
    }
    return 0;
}

namespace {

bool is_multi_product(const ExprPtr& e) { return e->kind == Expr::Kind::Product && e->children.size() > 1; }

std::string wrap(const std::string& s) { return "(" + s + ")"; }

std::string diag_text(const std::vector<Diagonal>& ds) {
    if (ds.empty()) return "1";
    if (ds.size() == 1) return is_multi_product(ds[0].group) ? wrap(text(ds[0].group)) : text(ds[0].group);
    std::string s;
    for (std::size_t i = 0; i < ds.size(); ++i) s += (i ? " x " : "") + text(ds[i].group);
    return wrap(s);
}

}  // namespace

std::string text(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Point: return "pt";
        case Expr::Kind::Atom: return e->atom.text();
        case Expr::Kind::Torus: return e->n == 1 ? "S^1" : "T^" + std::to_string(e->n);
        case Expr::Kind::Sphere: return "S^" + std::to_string(e->n);
        case Expr::Kind::Product: {
            std::string s;
            for (std::size_t i = 0; i < e->children.size(); ++i) {
                const auto& c = e->children[i];
                bool paren = c->kind == Expr::Kind::Balanced ||
                             (c->kind == Expr::Kind::Quotient && c->children[0]->kind == Expr::Kind::Balanced);
                s += (i ? " x " : "") + (paren ? wrap(text(c)) : text(c));
            }
            return s;
        }
        case Expr::Kind::Balanced: {
            auto side = [](const ExprPtr& c) { return is_multi_product(c) ? wrap(text(c)) : text(c); };
            return side(e->children[0]) + " (x)_{" + text(e->sub) + "} " + side(e->children[1]);
        }
        case Expr::Kind::Quotient: {
            const auto& t = e->children[0];
            std::string sub = is_multi_product(e->sub) ? wrap(text(e->sub)) : text(e->sub);
            if (t->kind == Expr::Kind::Balanced) return text(t) + " / " + sub;
            return (is_multi_product(t) ? wrap(text(t)) : text(t)) + "/" + sub;
        }
        case Expr::Kind::Biquotient: {
            std::string g;
            for (std::size_t i = 0; i < e->children.size(); ++i) g += (i ? " x " : "") + text(e->children[i]);
            if (e->children.size() != 1 || is_multi_product(e->children[0])) g = wrap(g);
            if (e->children.empty()) g = "1";
            return diag_text(e->a) + "\\" + g + "/" + diag_text(e->b);
        }
    }
    return "?";
}

std::string sexpr(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Point: return "(pt)";
        case Expr::Kind::Atom:
            return "(" + to_string(e->atom.family) + (e->atom.nonstandard ? "^o " : " ") +
                   std::to_string(e->atom.rank) + ")";
        case Expr::Kind::Torus: return "(T " + std::to_string(e->n) + ")";
        case Expr::Kind::Sphere: return "(S " + std::to_string(e->n) + ")";
        case Expr::Kind::Product: {
            std::string s = "(x";
            for (const auto& c : e->children) s += " " + sexpr(c);
            return s + ")";
        }
        case Expr::Kind::Balanced:
            return "(bal " + sexpr(e->children[0]) + " " + sexpr(e->sub) + " " + sexpr(e->children[1]) + ")";
        case Expr::Kind::Quotient: return "(quot " + sexpr(e->children[0]) + " " + sexpr(e->sub) + ")";
        case Expr::Kind::Biquotient: {
            auto diags = [](const char* tag, const std::vector<Diagonal>& ds) {
                std::string s = std::string("(") + tag;
                for (const auto& d : ds) {
                    s += " (diag " + sexpr(d.group);
                    for (int i : d.slots) s += " " + std::to_string(i);
                    s += ")";
                }
                return s + ")";
            };
            std::string g = "(G";
            for (const auto& c : e->children) g += " " + sexpr(c);
            g += ")";
            return "(biquot " + diags("A", e->a) + " " + g + " " + diags("B", e->b) + ")";
        }
    }
    return "?";
}

ExprPtr normalize(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Point:
        case Expr::Kind::Torus:
        case Expr::Kind::Sphere: return e;
        case Expr::Kind::Atom: return atom(e->atom.family, e->atom.rank, false);
        case Expr::Kind::Product: {
            std::vector<ExprPtr> cs;
            for (const auto& c : e->children) cs.push_back(normalize(c));
            return product(cs);
        }
        case Expr::Kind::Balanced:
            return balanced(normalize(e->children[0]), normalize(e->sub), normalize(e->children[1]), e->embed[0],
                            e->embed[1]);
        case Expr::Kind::Quotient: return quotient(normalize(e->children[0]), normalize(e->sub), e->embed[0]);
        case Expr::Kind::Biquotient: {
            auto nd = [](const std::vector<Diagonal>& ds) {
                std::vector<Diagonal> out;
                for (const auto& d : ds) {
                    auto g = normalize(d.group);
                    if (g->kind != Expr::Kind::Point) out.push_back({g, d.slots});
                }
                return out;
            };
            std::vector<ExprPtr> g;
            for (const auto& c : e->children) g.push_back(normalize(c));
            return biquotient(nd(e->a), g, nd(e->b));
        }
    }
    return e;
}

bool has_nonstandard(const ExprPtr& e) {
    if (e->kind == Expr::Kind::Atom) return e->atom.nonstandard;
    for (const auto& c : e->children)
        if (has_nonstandard(c)) return true;
    if (e->sub && has_nonstandard(e->sub)) return true;
    for (const auto& d : e->a)
        if (has_nonstandard(d.group)) return true;
    for (const auto& d : e->b)
        if (has_nonstandard(d.group)) return true;
    return false;
}

bool equal(const ExprPtr& a, const ExprPtr& b) { return sexpr(a) == sexpr(b); }

// ---------------------------------------------------------------------------
// Row stabilizers.

std::string Block::text() const {
    std::string f = to_string(family);
    std::string o = nonstandard ? "^o" : "";
    if (!corank_one) return f + "(" + std::to_string(size) + ")" + o;
    if (size == 1) return f + "(0)";
    std::string s = "[1]+" + f + "(" + std::to_string(size - 1) + ")";
    return nonstandard ? "(" + s + ")^o" : s;
}

ExprPtr BlockGroup::expr() const {
    std::vector<ExprPtr> fs;
    for (const auto& b : blocks) fs.push_back(atom(b.family, b.rank(), b.nonstandard));
    return product(fs);
}

int BlockGroup::dim() const {
    int d = 0;
    for (const auto& b : blocks) d += atom_dim(b.family, b.rank());
    return d;
}

std::string BlockGroup::text() const {
    if (blocks.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < blocks.size(); ++i) s += (i ? " + " : "") + blocks[i].text();
    return s;
}

namespace {

void check_row(const Pattern& p, int k, int hi) {
    if (k < p.alpha() || k > hi) throw std::out_of_range("row " + std::to_string(k) + " outside stabilizer range");
}

// The o-conjugate block: even row k whose last two staircase entries satisfy
// lambda_m = -lambda_{m-1} != 0.
bool nonstandard_segment(const Pattern& p, int k, const RowSegment& s) {
    if (p.flavor() != Flavor::Orthogonal || k % 2 != 0) return false;
    int m = k / 2;
    if (m < 2 || p.even_row_sign(k) >= 0) return false;
    if (!p.edge_h(k, m - 1)) return false;
    return s.first <= m && m < s.first + s.width;
}

}  // namespace

BlockGroup stabilizer_H(const Pattern& p, int k, bool include_mirror) {
    check_row(p, k, p.top());
    BlockGroup g;
    if (p.flavor() == Flavor::Unitary) {
        for (const auto& s : p.row_segments(k)) g.blocks.push_back({Family::U, s.width, false, false, s.component});
        return g;
    }
    std::vector<Block> mirror;
    int white = 0, white_comp = -1;
    for (const auto& s : p.row_segments(k)) {
        if (s.color == Color::White) {
            white = s.width;
            white_comp = s.component;
            continue;
        }
        const auto& c = p.components()[s.component];
        if (c.side == Side::Positive)
            g.blocks.push_back({Family::U, s.width, false, nonstandard_segment(p, k, s), s.component});
        else if (include_mirror)
            mirror.push_back({Family::U, s.width, false, false, s.component, true});
    }
    g.blocks.insert(g.blocks.end(), mirror.begin(), mirror.end());
    if (white > 0) g.blocks.push_back({Family::SO, white, false, false, white_comp});
    return g;
}

BlockGroup stabilizer_L(const Pattern& p, int k, bool include_mirror) {
    check_row(p, k, p.n());
    BlockGroup g = stabilizer_H(p, k, include_mirror);
    for (auto& b : g.blocks) {
        const auto& c = p.components()[b.component];
        b.corank_one = c.width(k) > c.width(k + 1);
    }
    return g;
}

namespace {

// Index of each component's block among the nontrivial atoms of a group.
std::map<int, int> atom_index(const BlockGroup& g) {
    std::map<int, int> idx;
    int i = 0;
    for (const auto& b : g.blocks) {
        if (trivial_atom(b.family, b.rank())) continue;
        idx[b.component] = i++;
    }
    return idx;
}

Embedding embed_blocks(const BlockGroup& sub, const BlockGroup& target) {
    auto idx = atom_index(target);
    std::map<int, int> size;
    for (const auto& b : target.blocks) size[b.component] = b.rank();
    Embedding e;
    for (const auto& b : sub.blocks) {
        if (trivial_atom(b.family, b.rank())) continue;
        auto it = idx.find(b.component);
        if (it == idx.end()) throw std::logic_error("stabilizer block without target");
        e.slots.push_back({it->second, size[b.component] == b.rank() ? EmbedKind::Identity : EmbedKind::LowerRightBlock});
    }
    return e;
}

}  // namespace

ExprPtr balanced_product(const Pattern& p) {
    if (p.n() < p.alpha()) return point();
    auto H = [&](int k) { return stabilizer_H(p, k); };
    BlockGroup hk = H(p.alpha());
    ExprPtr acc = hk.expr();
    for (int k = p.alpha(); k < p.n(); ++k) {
        BlockGroup lk = stabilizer_L(p, k);
        BlockGroup hn = H(k + 1);
        acc = balanced(acc, lk.expr(), hn.expr(), embed_blocks(lk, hk), embed_blocks(lk, hn));
        hk = hn;
    }
    BlockGroup ln = stabilizer_L(p, p.n());
    acc = quotient(acc, ln.expr(), embed_blocks(ln, hk));
    return normalize(acc);
}

// ---------------------------------------------------------------------------
// Chains.

int Chain::dim() const {
    int d = 0;
    for (int g : groups) d += atom_dim(family, g);
    for (int l : glues) d -= atom_dim(family, l);
    return d - atom_dim(family, quotient);
}

ExprPtr Chain::expr() const {
    if (groups.empty()) return point();
    auto kind = [](int sub, int target) { return sub == target ? EmbedKind::Identity : EmbedKind::LowerRightBlock; };
    ExprPtr acc = atom(family, groups[0]);
    for (std::size_t i = 0; i < glues.size(); ++i) {
        Embedding l{{{0, kind(glues[i], groups[i])}}};
        Embedding r{{{0, kind(glues[i], groups[i + 1])}}};
        acc = balanced(acc, atom(family, glues[i]), atom(family, groups[i + 1]), l, r);
    }
    return gzfiber::quotient(acc, atom(family, quotient), Embedding{{{0, kind(quotient, groups.back())}}});
}

std::string Chain::raw_text() const {
    if (groups.empty()) return "pt";
    auto a = [&](int r) { return to_string(family) + "(" + std::to_string(r) + ")"; };
    std::string s = a(groups[0]);
    for (std::size_t i = 0; i < glues.size(); ++i) s += " (x)_{" + a(glues[i]) + "} " + a(groups[i + 1]);
    return s + " / " + a(quotient);
}

Chain telescope(const Chain& raw) {
    Chain c = raw;
    auto triv = [&](int r) { return trivial_atom(c.family, r); };
    auto same = [&](int a, int b) { return a == b || (triv(a) && triv(b)); };
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < c.glues.size() && !changed; ++i) {
            if (same(c.glues[i], c.groups[i])) {
                // G_i (x)_{G_i} G_{i+1} = G_{i+1}
                c.groups.erase(c.groups.begin() + i);
                c.glues.erase(c.glues.begin() + i);
                changed = true;
            } else if (same(c.glues[i], c.groups[i + 1])) {
                // G_i (x)_{G_{i+1}} G_{i+1} = G_i
                c.groups.erase(c.groups.begin() + i + 1);
                c.glues.erase(c.glues.begin() + i);
                changed = true;
            }
        }
        if (!changed && !c.groups.empty() && !triv(c.quotient) && same(c.quotient, c.groups.back())) {
            if (c.glues.empty()) {
                c.groups.clear();
                c.quotient = 0;
            } else {
                // X (x)_L G / G = X / L
                c.quotient = c.glues.back();
                c.glues.pop_back();
                c.groups.pop_back();
            }
            changed = true;
        }
    }
    if (triv(c.quotient)) c.quotient = 0;
    bool all_trivial = std::all_of(c.groups.begin(), c.groups.end(), triv);
    if (all_trivial) c = Chain{raw.family, {}, {}, 0};
    return c;
}

Chain telescope_by_extrema(const std::vector<int>& widths, int upper_width, Family f) {
    Chain c;
    c.family = f;
    if (widths.empty()) return c;
    int q = std::min(widths.back(), upper_width);
    std::vector<int> x;
    for (int w : widths)
        if (x.empty() || x.back() != w) x.push_back(w);
    int last = static_cast<int>(x.size()) - 1;
    std::vector<int> maxima;
    for (int i = 0; i <= last; ++i) {
        bool left = i == 0 || x[i] > x[i - 1];
        bool right = i == last || x[i] > x[i + 1];
        if (left && right) maxima.push_back(i);
    }
    for (std::size_t p = 0; p < maxima.size(); ++p) {
        c.groups.push_back(x[maxima[p]]);
        if (p + 1 < maxima.size())
            c.glues.push_back(*std::min_element(x.begin() + maxima[p], x.begin() + maxima[p + 1] + 1));
    }
    c.quotient = q;
    if (c.quotient == c.groups.back()) {
        if (c.glues.empty()) {
            c.groups.clear();
            c.quotient = 0;
        } else {
            c.quotient = c.glues.back();
            c.glues.pop_back();
            c.groups.pop_back();
        }
    }
    if (trivial_atom(f, c.quotient)) c.quotient = 0;
    bool all_trivial = std::all_of(c.groups.begin(), c.groups.end(), [&](int r) { return trivial_atom(f, r); });
    if (all_trivial) c = Chain{f, {}, {}, 0};
    return c;
}

namespace {

// V = G(M)/G(m) as a sphere, group or Stiefel quotient.
ExprPtr stiefel(Family f, int M, int m) {
    if (trivial_atom(f, m)) return atom(f, M);
    if (m == M - 1) return sphere(f == Family::SO ? M - 1 : 2 * M - 1);
    return quotient(atom(f, M), atom(f, m), Embedding{{{0, EmbedKind::LowerRightBlock}}});
}

// Expression of a chain with the single-group rewrites applied.
ExprPtr chain_simplified(const Chain& c, bool su_rule) {
    if (c.groups.size() == 1) {
        int M = c.groups[0], q = c.quotient;
        if (su_rule && c.family == Family::U && q == 1 && M >= 2) return atom(Family::SU, M);
        return stiefel(c.family, M, q);
    }
    return c.expr();
}

}  // namespace

SplitResult split_stiefel(const Chain& tele, bool below_top) {
    SplitResult r;
    r.rest = tele;
    auto& c = r.rest;
    auto record = [&](const char* side, int M, int m) {
        ExprPtr v = stiefel(c.family, M, m);
        r.peeled.push_back(v);
        r.peels.push_back(std::string(side) + " " + text(v));
    };
    bool changed = true;
    while (changed) {
        changed = false;
        while (c.groups.size() >= 2 && c.groups[0] <= c.groups[1]) {
            record("left", c.groups[0], c.glues[0]);
            c.groups.erase(c.groups.begin());
            c.glues.erase(c.glues.begin());
            changed = true;
        }
        while (below_top && c.groups.size() >= 2 && c.groups.back() < c.groups[c.groups.size() - 2]) {
            record("right", c.groups.back(), c.glues.back());
            c.groups.pop_back();
            c.glues.pop_back();
            changed = true;
        }
    }
    std::vector<ExprPtr> fs = r.peeled;
    fs.push_back(chain_simplified(c, false));
    r.expr = product(fs);
    return r;
}

// ---------------------------------------------------------------------------
// Factorization.

namespace {

Chain raw_chain(Family f, int alpha, int n, int kb, const std::vector<int>& widths, int kt) {
    // widths cover rows kb..kt; rows above kt have width zero
    Chain c;
    c.family = f;
    int first = std::max(kb, alpha);
    int end = std::min(kt, n);
    if (first > end) return c;
    auto w = [&](int k) {
        if (k > kt) return 0;
        return widths[k - kb];
    };
    for (int k = first; k <= end; ++k) {
        c.groups.push_back(w(k));
        if (k < end) c.glues.push_back(std::min(w(k), w(k + 1)));
    }
    int up = end < kt ? w(end + 1) : 0;
    c.quotient = std::min(w(end), up);
    return c;
}

Factor make_factor(const Pattern& p, int comp, Color color, Side side, int kb, int kt, std::vector<int> widths,
                   Family f) {
    Factor fa;
    fa.component = comp;
    fa.color = color;
    fa.side = side;
    fa.kb = kb;
    fa.kt = kt;
    fa.widths = widths;
    fa.reaches_top = kt == p.top();
    fa.raw = raw_chain(f, p.alpha(), p.n(), kb, widths, kt);
    fa.telescoped = telescope(fa.raw);
    fa.split = split_stiefel(fa.telescoped, !fa.reaches_top);
    if (color == Color::Black) {
        fa.circle = !fa.reaches_top;
    } else {
        const auto& t = fa.telescoped;
        fa.circle = t.groups.size() == 1 && t.groups[0] == 2 && t.quotient == 0;
    }
    // group form: peeled pieces plus the remainder, with U(w)/U(1) read as SU(w)
    std::vector<ExprPtr> fs = fa.split.peeled;
    fs.push_back(chain_simplified(fa.split.rest, true));
    fa.simplified = product(fs);
    fa.biquotient = to_biquotient(fa.telescoped);
    return fa;
}

}  // namespace

FiberPresentation factorize(const Pattern& p) {
    FiberPresentation pres;
    pres.flavor = p.flavor();
    for (const auto& c : p.components()) {
        if (c.color != Color::Black || !p.counted(c)) continue;
        if (c.kb > p.n()) continue;
        pres.factors.push_back(make_factor(p, c.id, c.color, c.side, c.kb, c.kt, c.widths, Family::U));
    }
    if (p.flavor() == Flavor::Orthogonal) {
        for (const auto& w : p.white_pieces()) {
            if (std::max(w.kb, p.alpha()) > std::min(w.kt, p.n())) continue;
            pres.factors.push_back(make_factor(p, w.component, Color::White, Side::Midline, w.kb, w.kt, w.widths,
                                               Family::SO));
        }
    }
    for (const auto& f : pres.factors) pres.torus_rank += f.circle ? 1 : 0;
    pres.balanced = balanced_product(p);
    pres.dim = group_dim(pres.balanced);
    pres.biquotient = global_biquotient(p);
    return pres;
}

int torus_rank(const Pattern& p) {
    int t = 0;
    for (const auto& c : p.components())
        if (c.color == Color::Black && p.counted(c) && c.kt <= p.n()) ++t;
    if (p.flavor() == Flavor::Orthogonal)
        for (const auto& w : p.white_pieces())
            if (w.widths == std::vector<int>{1, 2, 1}) ++t;
    return t;
}

namespace {

// Splits an SU chain at trivial gluing groups into independent pieces.
std::vector<ExprPtr> su_pieces(const Chain& c) {
    std::vector<ExprPtr> out;
    Chain cur{Family::SU, {}, {}, 0};
    for (std::size_t i = 0; i < c.groups.size(); ++i) {
        cur.groups.push_back(c.groups[i]);
        bool cut = i + 1 == c.groups.size() || trivial_atom(Family::SU, c.glues[i]);
        if (cut) {
            if (i + 1 == c.groups.size()) cur.quotient = c.quotient;
            out.push_back(cur.groups.size() > 1 ? to_biquotient(cur) : chain_simplified(cur, false));
            cur = Chain{Family::SU, {}, {}, 0};
        } else {
            cur.glues.push_back(c.glues[i]);
        }
    }
    return out;
}

// Pieces of a factor once its circle, if any, has been removed.
std::vector<ExprPtr> residual_pieces(const Factor& f) {
    std::vector<ExprPtr> out = f.split.peeled;
    const Chain& rest = f.split.rest;
    if (f.circle) {
        if (f.color == Color::White) return out;
        Chain su = rest;
        su.family = Family::SU;
        auto ps = su_pieces(su);
        out.insert(out.end(), ps.begin(), ps.end());
        return out;
    }
    if (rest.groups.size() > 1)
        out.push_back(to_biquotient(rest));
    else
        out.push_back(chain_simplified(rest, true));
    return out;
}

}  // namespace

TorusSplit extract_torus(const FiberPresentation& pres) {
    TorusSplit t;
    for (const auto& f : pres.factors) {
        if (f.circle) ++t.rank;
        t.residual.push_back(product(residual_pieces(f)));
    }
    return t;
}

ExprPtr to_biquotient(const Chain& c) {
    std::vector<ExprPtr> g;
    std::vector<Diagonal> a, b;
    int r = static_cast<int>(c.groups.size());
    for (int x : c.groups) g.push_back(atom(c.family, x));
    // l_1 .. l_{r-1} glue slots (i-1, i); the quotient is l_r in the last slot
    for (int i = 1; i <= r; ++i) {
        int rank = i < r ? c.glues[i - 1] : c.quotient;
        if (trivial_atom(c.family, rank)) continue;
        Diagonal d{atom(c.family, rank), i < r ? std::vector<int>{i - 1, i} : std::vector<int>{r - 1}};
        (i % 2 == 1 ? b : a).push_back(d);
    }
    return biquotient(a, g, b);
}

ExprPtr global_biquotient(const Pattern& p) {
    std::vector<ExprPtr> g;
    std::vector<Diagonal> a, b;
    if (p.n() < p.alpha()) return biquotient({}, {}, {});
    for (int k = p.alpha(); k <= p.n(); ++k) g.push_back(normalize(stabilizer_H(p, k).expr()));
    for (int k = p.alpha(); k <= p.n(); ++k) {
        ExprPtr l = normalize(stabilizer_L(p, k).expr());
        if (l->kind == Expr::Kind::Point) continue;
        int s = k - p.alpha();
        Diagonal d{l, k < p.n() ? std::vector<int>{s, s + 1} : std::vector<int>{s}};
        (s % 2 == 0 ? b : a).push_back(d);
    }
    return biquotient(a, g, b);
}

std::string group_form(const FiberPresentation& pres) {
    std::vector<ExprPtr> fs;
    for (const auto& f : pres.factors) fs.push_back(f.simplified);
    return text(product(fs));
}

std::string sphere_form(const FiberPresentation& pres) {
    int circles = 0;
    std::map<int, int> spheres;
    std::vector<ExprPtr> rest;
    std::vector<ExprPtr> pieces;
    for (const auto& f : pres.factors) {
        if (f.circle) ++circles;
        for (const auto& x : residual_pieces(f)) {
            if (x->kind == Expr::Kind::Product)
                pieces.insert(pieces.end(), x->children.begin(), x->children.end());
            else
                pieces.push_back(x);
        }
    }
    for (const auto& x : pieces) {
        if (x->kind == Expr::Kind::Point) continue;
        if (x->kind == Expr::Kind::Sphere)
            spheres[x->n]++;
        else if (x->kind == Expr::Kind::Torus)
            circles += x->n;
        else if (x->kind == Expr::Kind::Atom && x->atom.family == Family::SU && x->atom.rank == 2)
            spheres[3]++;
        else if (x->kind == Expr::Kind::Atom && x->atom.rank == (x->atom.family == Family::SO ? 2 : 1))
            ++circles;
        else
            rest.push_back(x);
    }
    spheres[1] += circles;
    std::vector<std::string> parts;
    for (const auto& [d, count] : spheres) {
        if (count == 0) continue;
        std::string s = "S^" + std::to_string(d);
        parts.push_back(count == 1 ? s : "(" + s + ")^" + std::to_string(count));
    }
    for (const auto& x : rest) parts.push_back(text(x));
    if (parts.empty()) return "pt";
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " x " : "") + parts[i];
    return out;
}

}  // namespace gzfiber
