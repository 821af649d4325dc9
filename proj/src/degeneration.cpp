#include "gzfiber/degeneration.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace gzfiber {

namespace {

int positive_len(Flavor f, int k) { return f == Flavor::Unitary ? k : k / 2; }

// Row k of the extended triangle from the positive values (absolute values
// for the orthogonal case).
std::vector<Rational> extend(Flavor f, int k, const std::vector<Rational>& pos) {
    if (f == Flavor::Unitary) return pos;
    std::vector<Rational> e(pos.begin(), pos.end());
    if (k % 2) e.push_back(0);
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) e.push_back(-*it);
    return e;
}

std::vector<Rational> staircase_row(Flavor f, int k, const std::vector<Rational>& ext, int sign) {
    std::vector<Rational> r(ext.begin(), ext.begin() + positive_len(f, k));
    if (f == Flavor::Orthogonal && k % 2 == 0 && !r.empty() && sign < 0) r.back() = -r.back();
    return r;
}

Vertex anchor_of(const Component& c) {
    for (const auto& v : c.vertices)
        if (c.width(v.k) >= 2) return v;
    return c.vertices.front();
}

int rank_int(const std::vector<std::vector<int>>& m) {
    std::vector<std::vector<Rational>> a;
    for (const auto& row : m) a.push_back(std::vector<Rational>(row.begin(), row.end()));
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

bool subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

}  // namespace

std::vector<TorusCoordinate> torus_coordinates(const Pattern& p) {
    std::vector<TorusCoordinate> out;
    for (const auto& c : p.components())
        if (c.color == Color::Black && p.counted(c) && c.kt <= p.n())
            out.push_back({c.id, false, c.kb, c.kt, anchor_of(c)});
    if (p.flavor() == Flavor::Orthogonal) {
        for (const auto& w : p.white_pieces()) {
            if (w.widths != std::vector<int>{1, 2, 1}) continue;
            const auto& c = p.components()[w.component];
            Vertex a{};
            for (const auto& v : c.vertices)
                if (v.k == w.kb + 1) {
                    a = v;
                    break;
                }
            out.push_back({w.component, true, w.kb, w.kt, a});
        }
    }
    return out;
}

TorusMap TorusMap::identity(int n) {
    TorusMap t{n, n, std::vector<std::vector<int>>(n, std::vector<int>(n, 0))};
    for (int i = 0; i < n; ++i) t.m[i][i] = 1;
    return t;
}

TorusMap TorusMap::compose(const TorusMap& first) const {
    if (cols != first.rows) throw std::invalid_argument("torus map size mismatch");
    TorusMap t{rows, first.cols, std::vector<std::vector<int>>(rows, std::vector<int>(first.cols, 0))};
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k)
            if (m[i][k])
                for (int j = 0; j < first.cols; ++j) t.m[i][j] += m[i][k] * first.m[k][j];
    return t;
}

int TorusMap::rank() const { return rank_int(m); }

TorusMap torus_map(const Pattern& e, const Pattern& f) {
    auto ce = torus_coordinates(e), cf = torus_coordinates(f);
    TorusMap t{static_cast<int>(cf.size()), static_cast<int>(ce.size()),
               std::vector<std::vector<int>>(cf.size(), std::vector<int>(ce.size(), 0))};
    for (std::size_t i = 0; i < ce.size(); ++i) {
        const Vertex& a = ce[i].anchor;
        int comp = f.component_of(a.k, a.j);
        for (std::size_t r = 0; r < cf.size(); ++r) {
            if (cf[r].component != comp) continue;
            if (cf[r].white && (a.k < cf[r].kb || a.k > cf[r].kt)) continue;
            t.m[r][i] = 1;
            break;
        }
    }
    return t;
}

std::string merge_descriptor(const Pattern& e, const Pattern& f) {
    std::map<int, std::vector<int>> into;
    std::vector<std::string> parts;
    for (const auto& c : e.components()) {
        if (!e.counted(c)) continue;
        const auto& v = c.vertices.front();
        const auto& fc = f.components()[f.component_of(v.k, v.j)];
        into[fc.id].push_back(c.id);
        if (c.kt <= e.n() && fc.kt == f.top()) parts.push_back("top c" + std::to_string(c.id));
        if (c.color == Color::Black && fc.color == Color::White) parts.push_back("white c" + std::to_string(c.id));
    }
    for (const auto& [fid, es] : into) {
        if (es.size() < 2) continue;
        std::string s = "merge";
        for (std::size_t i = 0; i < es.size(); ++i) s += (i ? "+c" : " c") + std::to_string(es[i]);
        parts.push_back(s + " -> c" + std::to_string(fid));
    }
    if (parts.empty()) return "none";
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "; " : "") + parts[i];
    return out;
}

namespace {

struct Enumerator {
    Flavor flavor;
    int top;
    int alpha;
    std::vector<int> offset;  // first bit of row k
    int bits = 0;
    std::vector<std::vector<Rational>> ext;  // ext[k], k = 1..top
    std::vector<Rational> pos;               // positive values of the row in progress
    std::vector<std::uint64_t> tight;
    int free = 0;
    std::vector<Face> faces;

    void set_bit(int b) { tight[b / 64] |= std::uint64_t(1) << (b % 64); }
    void clear_bit(int b) { tight[b / 64] &= ~(std::uint64_t(1) << (b % 64)); }

    void record() {
        std::vector<std::vector<Rational>> rows;
        for (int k = alpha; k <= top; ++k) rows.push_back(staircase_row(flavor, k, ext[k], 1));
        // the top row keeps its given sign
        rows.back() = top_row;
        Staircase s(flavor, rows);
        if (!validate(s).ok) throw std::logic_error("face witness failed validation");
        Pattern p = Pattern::from_staircase(s);
        int t = static_cast<int>(torus_coordinates(p).size());
        faces.push_back(Face{static_cast<int>(faces.size()), p, free, t, s, tight});
    }

    std::vector<Rational> top_row;

    void run(int k, int j) {
        if (k < alpha) {
            record();
            return;
        }
        int len = positive_len(flavor, k);
        if (j > len) {
            ext[k] = extend(flavor, k, pos);
            std::vector<Rational> saved = pos;
            pos.clear();
            run(k - 1, 1);
            pos = saved;
            return;
        }
        const auto& up = ext[k + 1];
        const Rational& hi = up[j - 1];
        const Rational& lo = up[j];
        int bl = offset[k] + 2 * (j - 1), br = bl + 1;
        if (hi == lo) {
            set_bit(bl);
            set_bit(br);
            pos.push_back(hi);
            run(k, j + 1);
            pos.pop_back();
            clear_bit(bl);
            clear_bit(br);
            return;
        }
        ++free;
        pos.push_back((hi + lo) / 2);
        run(k, j + 1);
        pos.pop_back();
        --free;
        set_bit(bl);
        pos.push_back(hi);
        run(k, j + 1);
        pos.pop_back();
        clear_bit(bl);
        set_bit(br);
        pos.push_back(lo);
        run(k, j + 1);
        pos.pop_back();
        clear_bit(br);
    }
};

template <class F>
void parallel_for(int n, int threads, F&& body) {
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (int i = t; i < n; i += threads) body(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

FaceLattice enumerate_faces(Flavor flavor, int n, const std::vector<Rational>& top, const FaceOptions& opt) {
    int toprow = n + 1;
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (static_cast<int>(top.size()) != Staircase::row_length(flavor, toprow))
        throw std::invalid_argument("top row has the wrong length for n = " + std::to_string(n));
    if (n > opt.n_bound) throw std::invalid_argument("n = " + std::to_string(n) + " exceeds the n-bound " +
                                                     std::to_string(opt.n_bound));
    Enumerator en{flavor, toprow, flavor == Flavor::Unitary ? 1 : 2, {}, 0, {}, {}, {}, 0, {}, top};
    {
        if (flavor == Flavor::Unitary) {
            for (std::size_t i = 1; i < top.size(); ++i)
                if (top[i] > top[i - 1]) throw std::invalid_argument("infeasible top row: not weakly decreasing");
        } else {
            for (std::size_t i = 1; i < top.size(); ++i)
                if (abs_q(top[i]) > top[i - 1]) throw std::invalid_argument("infeasible top row: not weakly decreasing");
            bool odd = toprow % 2 == 1;
            for (std::size_t i = 0; i < top.size(); ++i)
                if (top[i] < 0 && (odd || i + 1 < top.size()))
                    throw std::invalid_argument("infeasible top row: negative entry");
        }
    }
    en.offset.assign(toprow + 1, 0);
    for (int k = en.alpha; k <= n; ++k) {
        en.offset[k] = en.bits;
        en.bits += 2 * positive_len(flavor, k);
    }
    en.tight.assign((en.bits + 63) / 64 + 1, 0);
    en.ext.assign(toprow + 1, {});
    std::vector<Rational> abs_top;
    for (const auto& x : top) abs_top.push_back(abs_q(x));
    en.ext[toprow] = extend(flavor, toprow, abs_top);
    if (flavor == Flavor::Orthogonal) en.ext[1] = {Rational(0)};
    en.run(n, 1);

    FaceLattice lat;
    lat.flavor = flavor;
    lat.n = n;
    lat.top = top;
    lat.faces = std::move(en.faces);
    std::map<int, std::vector<int>> by_dim;
    for (const auto& f : lat.faces) by_dim[f.dim].push_back(f.id);
    std::vector<std::vector<Cover>> found(lat.faces.size());
    parallel_for(static_cast<int>(lat.faces.size()), opt.threads, [&](int fi) {
        const Face& f = lat.faces[fi];
        auto it = by_dim.find(f.dim + 1);
        if (it == by_dim.end()) return;
        for (int ei : it->second) {
            const Face& e = lat.faces[ei];
            if (!subset(e.tight, f.tight)) continue;
            found[fi].push_back({ei, fi, merge_descriptor(e.pattern, f.pattern), torus_map(e.pattern, f.pattern)});
        }
    });
    for (auto& v : found)
        for (auto& c : v) lat.covers.push_back(std::move(c));
    std::sort(lat.covers.begin(), lat.covers.end(),
              [](const Cover& a, const Cover& b) { return std::pair(a.upper, a.lower) < std::pair(b.upper, b.lower); });
    return lat;
}

std::vector<int> FaceLattice::f_vector() const {
    int top_dim = 0;
    for (const auto& f : faces) top_dim = std::max(top_dim, f.dim);
    std::vector<int> v(top_dim + 1, 0);
    for (const auto& f : faces) v[f.dim]++;
    return v;
}

bool FaceLattice::leq(int f, int e) const { return subset(faces[e].tight, faces[f].tight); }

TorusMap torus_map(const FaceLattice& lattice, int e, int f) {
    const auto& E = lattice.faces.at(e);
    const auto& F = lattice.faces.at(f);
    if (E.dim != F.dim + 1 || !lattice.leq(f, e))
        throw std::invalid_argument("faces " + std::to_string(e) + " and " + std::to_string(f) + " do not form a cover");
    return torus_map(E.pattern, F.pattern);
}

CoherenceReport check_coherence(const FaceLattice& lat) {
    CoherenceReport r;
    std::vector<std::vector<const Cover*>> down(lat.faces.size());
    for (const auto& c : lat.covers) {
        down[c.upper].push_back(&c);
        int te = lat.faces[c.upper].t, tf = lat.faces[c.lower].t;
        if (tf != te && tf != te - 1) {
            // a positive pair falling onto the zero midline can take several
            // circles with it, so only unitary covers must drop by at most one
            if (lat.flavor == Flavor::Orthogonal) {
                ++r.multi_drops;
                continue;
            }
            ++r.monotonicity_failures;
            r.details.push_back("t jumps from " + std::to_string(te) + " to " + std::to_string(tf) + " on cover " +
                                std::to_string(c.upper) + " > " + std::to_string(c.lower));
        }
    }
    for (std::size_t e = 0; e < lat.faces.size(); ++e) {
        std::map<int, std::vector<TorusMap>> via;
        for (const Cover* c1 : down[e])
            for (const Cover* c2 : down[c1->lower]) via[c2->lower].push_back(c2->map.compose(c1->map));
        for (const auto& [g, maps] : via) {
            ++r.intervals;
            TorusMap direct = torus_map(lat.faces[e].pattern, lat.faces[g].pattern);
            bool ok = std::all_of(maps.begin(), maps.end(), [&](const TorusMap& m) { return m == direct; });
            if (!ok) {
                ++r.mismatches;
                r.details.push_back("interval " + std::to_string(e) + " > " + std::to_string(g) + " has " +
                                    std::to_string(maps.size()) + " disagreeing chains");
            }
        }
    }
    return r;
}

std::vector<SkeletonEntry> x0_skeleton(const FaceLattice& lat) {
    std::vector<SkeletonEntry> out(lat.faces.size());
    if (lat.faces.empty()) return out;
    std::vector<std::vector<const Cover*>> down(lat.faces.size());
    for (const auto& c : lat.covers) down[c.upper].push_back(&c);
    std::vector<char> seen(lat.faces.size(), 0);
    std::queue<int> q;
    out[0] = {0, lat.faces[0].t, TorusMap::identity(lat.faces[0].t), true, true};
    seen[0] = 1;
    q.push(0);
    while (!q.empty()) {
        int e = q.front();
        q.pop();
        for (const Cover* c : down[e]) {
            if (seen[c->lower]) continue;
            seen[c->lower] = 1;
            out[c->lower].face = c->lower;
            out[c->lower].t = lat.faces[c->lower].t;
            out[c->lower].from_top = c->map.compose(out[e].from_top);
            q.push(c->lower);
        }
    }
    for (auto& s : out) {
        s.matches_direct = s.from_top == torus_map(lat.faces[0].pattern, lat.faces[s.face].pattern);
        s.rank_ok = s.from_top.rank() == s.t;
    }
    return out;
}

std::string hasse_dot(const FaceLattice& lat) {
    std::ostringstream o;
    o << "digraph faces {\n  rankdir=BT;\n";
    for (const auto& f : lat.faces)
        o << "  f" << f.id << " [label=\"" << f.id << "\\ndim " << f.dim << ", t " << f.t << "\"];\n";
    for (const auto& c : lat.covers) o << "  f" << c.lower << " -> f" << c.upper << ";\n";
    o << "}\n";
    return o.str();
}

std::optional<Staircase> realize(const Pattern& p) {
    Flavor f = p.flavor();
    int top = p.top();
    if (f == Flavor::Orthogonal && top < 2) return std::nullopt;
    if (top < 1) return std::nullopt;
    // top row: one value per segment, decreasing; white segments are zero
    std::vector<Rational> pos;
    auto segs = p.row_segments(top);
    int len = positive_len(f, top);
    int value = static_cast<int>(segs.size()) + 1;
    for (const auto& s : segs) {
        --value;
        for (int j = s.first; j < s.first + s.width; ++j) {
            if (j > len) break;
            pos.push_back(s.color == Color::White ? Rational(0) : Rational(value));
        }
    }
    if (static_cast<int>(pos.size()) != len) return std::nullopt;
    std::vector<std::vector<Rational>> ext(top + 1);
    ext[top] = extend(f, top, pos);
    if (f == Flavor::Orthogonal) ext[1] = {Rational(0)};
    int alpha = p.alpha();
    for (int k = top - 1; k >= alpha; --k) {
        std::vector<Rational> row;
        for (int j = 1; j <= positive_len(f, k); ++j) {
            const Rational& hi = ext[k + 1][j - 1];
            const Rational& lo = ext[k + 1][j];
            bool L = p.edge_l(k, j), R = p.edge_r(k, j);
            if (hi == lo) {
                if (!L || !R) return std::nullopt;
                row.push_back(hi);
            } else if (L && R) {
                return std::nullopt;
            } else {
                row.push_back(L ? hi : R ? lo : (hi + lo) / 2);
            }
        }
        ext[k] = extend(f, k, row);
    }
    std::vector<std::vector<Rational>> rows;
    for (int k = alpha; k <= top; ++k) rows.push_back(staircase_row(f, k, ext[k], p.even_row_sign(k)));
    Staircase s(f, rows);
    if (!validate(s).ok) return std::nullopt;
    if (!(Pattern::from_staircase(s) == p)) return std::nullopt;
    return s;
}

}  // namespace gzfiber
