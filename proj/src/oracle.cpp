#include "gzfiber/oracle.hpp"

#include "gzfiber/groupexpr.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace gzfiber {

namespace {

struct Pole {
    int component;
    int index;
    Rational sigma;
    Shape shape;
    bool white;
};

struct RowPair {
    std::vector<Pole> lower;     // one per row-k segment entering the border
    std::vector<Rational> zeros; // tau values
};

Rational sq(const Rational& x) { return x * x; }

// Poles and zeros of the border function for the row pair (k, k+1).
RowPair row_pair(const Pattern& p, const Staircase& s, int k) {
    RowPair rp;
    const auto& comps = p.components();
    auto lower = s.extended_row(k);
    auto upper = s.extended_row(k + 1);
    bool orth = p.flavor() == Flavor::Orthogonal;
    int nonzero = 0;
    if (orth)
        for (const auto& x : s.row(k)) nonzero += x != 0;
    for (const auto& seg : p.row_segments(k)) {
        const auto& c = comps[seg.component];
        if (!p.counted(c)) continue;
        int wk = c.width(k), wu = c.width(k + 1);
        Shape sh = wk > wu ? Shape::M : wk < wu ? Shape::W : Shape::P;
        Rational mu = lower[seg.first - 1];
        Pole pole{c.id, seg.first - 1, orth ? Rational(-sq(mu)) : mu, sh, c.color == Color::White};
        if (orth) pole.index = pole.white ? 2 * nonzero : 2 * (seg.first - 1);
        if (sh == Shape::W && !pole.white) rp.zeros.push_back(pole.sigma);
        rp.lower.push_back(pole);
    }
    for (const auto& seg : p.row_segments(k + 1)) {
        const auto& c = comps[seg.component];
        if (!p.counted(c) || c.kb != k + 1 || c.color == Color::White) continue;
        Rational v = upper[seg.first - 1];
        rp.zeros.push_back(orth ? Rational(-sq(v)) : v);
    }
    return rp;
}

Rational residue(const RowPair& rp, const Pole& pole, bool orth) {
    if (pole.shape != Shape::M) return 0;
    Rational num = 1, den = 1;
    for (const auto& t : rp.zeros) num *= pole.sigma - t;
    for (const auto& q : rp.lower)
        if (q.shape == Shape::M && q.component != pole.component) den *= pole.sigma - q.sigma;
    if (den == 0) throw std::logic_error("repeated pole in border function");
    return orth ? Rational(num / den) : Rational(-num / den);
}

void check_k(const Staircase& s, int k) {
    if (k < s.alpha() || k > s.n()) throw std::out_of_range("row " + std::to_string(k) + " has no xi");
}

}  // namespace

Rational r_squared(const Pattern& p, const Staircase& s, int k, int component) {
    check_k(s, k);
    auto rp = row_pair(p, s, k);
    for (const auto& pole : rp.lower)
        if (pole.component == component) return residue(rp, pole, p.flavor() == Flavor::Orthogonal);
    throw std::invalid_argument("component " + std::to_string(component) + " not in row " + std::to_string(k));
}

Eigen::MatrixXd canonical_element(Flavor f, int k, const std::vector<Rational>& row) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
    if (f == Flavor::Unitary) {
        for (int i = 0; i < k; ++i) a(i, i) = to_double(row[i]);
        return a;
    }
    int b = 0;
    for (const auto& x : row) {
        if (x == 0) continue;
        double v = to_double(x);
        a(b, b + 1) = -v;
        a(b + 1, b) = v;
        b += 2;
    }
    return a;
}

Eigen::MatrixXd XiMatrix::canonical_lower() const { return canonical_element(flavor, k, lower); }

Eigen::MatrixXd XiMatrix::numeric() const {
    int n = size();
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
    x.topLeftCorner(k, k) = canonical_lower();
    for (const auto& b : border) {
        double r = std::sqrt(to_double(b.r2)) * b.sign;
        if (flavor == Flavor::Unitary) {
            x(b.index, k) = r;
            x(k, b.index) = r;
        } else {
            x(b.index, k) = r;
            x(k, b.index) = -r;
        }
    }
    if (flavor == Flavor::Unitary) x(k, k) = to_double(c);
    return x;
}

double pfaffian(Eigen::MatrixXd a) {
    int n = static_cast<int>(a.rows());
    if (n % 2) return 0;
    double pf = 1;
    for (int k = 0; k + 1 < n; k += 2) {
        Eigen::Index kp;
        a.row(k).tail(n - k - 1).cwiseAbs().maxCoeff(&kp);
        kp += k + 1;
        if (kp != k + 1) {
            a.row(k + 1).swap(a.row(kp));
            a.col(k + 1).swap(a.col(kp));
            pf = -pf;
        }
        if (a(k, k + 1) == 0) return 0;
        pf *= a(k, k + 1);
        if (k + 2 < n) {
            int m = n - k - 2;
            Eigen::VectorXd tau = a.row(k).tail(m).transpose() / a(k, k + 1);
            Eigen::VectorXd col = a.col(k + 1).tail(m);
            a.bottomRightCorner(m, m) += tau * col.transpose() - col * tau.transpose();
        }
    }
    return pf;
}

namespace {

double target_pfaffian(const std::vector<Rational>& upper) {
    double t = 1;
    for (const auto& x : upper) t *= -to_double(x);
    return t;
}

}  // namespace

XiMatrix build_xi(const Staircase& s, int k) {
    if (!validate(s).ok) throw std::invalid_argument("build_xi: invalid staircase");
    check_k(s, k);
    Pattern p = Pattern::from_staircase(s);
    XiMatrix xi;
    xi.flavor = s.flavor();
    xi.k = k;
    xi.lower = s.row(k);
    xi.upper = s.row(k + 1);
    bool orth = xi.flavor == Flavor::Orthogonal;
    auto rp = row_pair(p, s, k);
    for (const auto& pole : rp.lower) {
        BorderEntry b{pole.component, pole.index, residue(rp, pole, orth), pole.shape, pole.white, 1};
        if (b.r2 < 0) throw std::logic_error("negative r^2 at row " + std::to_string(k));
        if (b.r2 != 0) xi.border.push_back(b);
    }
    if (!orth) {
        Rational tu = 0, tl = 0;
        for (const auto& x : xi.upper) tu += x;
        for (const auto& x : xi.lower) tl += x;
        xi.c = tu - tl;
    } else {
        int nonzero = 0;
        for (const auto& x : xi.lower) nonzero += x != 0;
        xi.zero_block = k - 2 * nonzero;
        if ((k + 1) % 2 == 0) {
            // the orbit of an even-size element is fixed by its Pfaffian; only
            // the zero-block entry of the border can change its sign
            double want = target_pfaffian(xi.upper);
            if (want != 0 && (pfaffian(xi.numeric()) > 0) != (want > 0))
                for (auto& b : xi.border)
                    if (b.white) b.sign = -b.sign;
        }
    }
    return xi;
}

EigencheckRow eigencheck_xi(const XiMatrix& xi, double tol) {
    EigencheckRow row;
    row.k = xi.k;
    Eigen::MatrixXd x = xi.numeric();
    int n = xi.size();
    row.truncation_error = (x.topLeftCorner(xi.k, xi.k) - xi.canonical_lower()).cwiseAbs().maxCoeff();
    std::vector<double> expect, got;
    if (xi.flavor == Flavor::Unitary) {
        for (const auto& v : xi.upper) expect.push_back(to_double(v));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) {
            row.context = "eigensolver did not converge";
            return row;
        }
        for (int i = 0; i < n; ++i) got.push_back(es.eigenvalues()(i));
    } else {
        for (const auto& v : xi.upper) {
            expect.push_back(to_double(v));
            expect.push_back(-to_double(v));
        }
        if (n % 2) expect.push_back(0);
        Eigen::MatrixXcd h = std::complex<double>(0, 1) * x.cast<std::complex<double>>();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) {
            row.context = "eigensolver did not converge";
            return row;
        }
        for (int i = 0; i < n; ++i) got.push_back(es.eigenvalues()(i));
        if (n % 2 == 0) {
            row.pfaffian_checked = true;
            row.pfaffian_error = std::abs(pfaffian(x) - target_pfaffian(xi.upper));
        }
    }
    std::sort(expect.begin(), expect.end());
    std::sort(got.begin(), got.end());
    for (int i = 0; i < n; ++i) row.deviation = std::max(row.deviation, std::abs(expect[i] - got[i]));
    double scale = 1;
    for (double v : expect) scale = std::max(scale, std::abs(v));
    bool pf_ok = !row.pfaffian_checked || row.pfaffian_error <= tol * std::pow(scale, n / 2);
    row.pass = row.deviation <= tol && row.truncation_error == 0 && pf_ok;
    if (!row.pass && row.context.empty())
        row.context = !pf_ok ? "Pfaffian sign or value mismatch" : "spectrum deviates from the upper row";
    return row;
}

EigencheckReport eigencheck(const Staircase& s, double tol) {
    EigencheckReport r;
    r.tol = tol;
    for (int k = s.alpha(); k <= s.n(); ++k) {
        EigencheckRow row;
        try {
            row = eigencheck_xi(build_xi(s, k), tol);
        } catch (const std::exception& e) {
            row.k = k;
            row.context = e.what();
        }
        r.pass = r.pass && row.pass;
        r.rows.push_back(row);
    }
    return r;
}

namespace {

void finish(Conjugator& c, const Eigen::MatrixXd& ainv, const Eigen::MatrixXd& xi, const Eigen::MatrixXd& target) {
    c.a = ainv.transpose();
    c.det = c.a.determinant();
    int n = static_cast<int>(c.a.rows());
    c.residual = (c.a * xi * c.a.transpose() - target).cwiseAbs().maxCoeff();
    c.orthogonality = (c.a * c.a.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
}

std::optional<Conjugator> unitary_conjugator(const XiMatrix& xi, std::string* diag) {
    int k = xi.k, n = xi.size();
    Eigen::MatrixXd x = xi.numeric();
    // coordinates of each distinct row-k value
    std::vector<std::pair<Rational, std::vector<int>>> groups;
    for (int i = 0; i < k; ++i) {
        if (!groups.empty() && groups.back().first == xi.lower[i])
            groups.back().second.push_back(i);
        else
            groups.push_back({xi.lower[i], {i}});
    }
    auto border_at = [&](int idx) -> const BorderEntry* {
        for (const auto& b : xi.border)
            if (b.index == idx) return &b;
        return nullptr;
    };
    Eigen::MatrixXd ainv(n, 0);
    auto push = [&](const Eigen::VectorXd& v) {
        ainv.conservativeResize(n, ainv.cols() + 1);
        ainv.col(ainv.cols() - 1) = v;
    };
    std::vector<Rational> values;
    for (const auto& v : xi.upper)
        if (values.empty() || values.back() != v) values.push_back(v);
    for (const auto& lam : values) {
        int mult = static_cast<int>(std::count(xi.upper.begin(), xi.upper.end(), lam));
        const std::vector<int>* seg = nullptr;
        for (const auto& g : groups)
            if (g.first == lam) seg = &g.second;
        int boring = seg ? static_cast<int>(seg->size()) : 0;
        // the first coordinate of the segment is an eigenvector when its r vanishes
        bool first_free = seg && !border_at(seg->front());
        int have = boring - (first_free ? 0 : 1);
        if (mult > have) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
            v(k) = 1;
            for (const auto& b : xi.border) {
                Rational d = lam - xi.lower[b.index];
                if (d == 0) continue;
                double dd = to_double(d);
                if (std::abs(dd) < 1e-300) {
                    if (diag) *diag = "near-degenerate denominator";
                    return std::nullopt;
                }
                v(b.index) = std::sqrt(to_double(b.r2)) / dd;
            }
            push(v.normalized());
        }
        if (seg) {
            for (std::size_t i = first_free ? 0 : 1; i < seg->size(); ++i) {
                Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
                d((*seg)[i]) = 1;
                push(d);
            }
        }
    }
    if (ainv.cols() != n) {
        if (diag) *diag = "eigenvector count mismatch";
        return std::nullopt;
    }
    if (ainv.determinant() < 0) ainv.col(n - 1) *= -1;
    Conjugator c;
    finish(c, ainv, x, canonical_element(Flavor::Unitary, n, xi.upper));
    return c;
}

std::optional<Conjugator> orthogonal_conjugator(const XiMatrix& xi, std::string* diag) {
    int n = xi.size();
    Eigen::MatrixXd x = xi.numeric();
    Eigen::MatrixXd x2 = -(x * x);
    x2 = (x2 + x2.transpose()) / 2;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x2);
    if (es.info() != Eigen::Success) {
        if (diag) *diag = "eigensolver did not converge";
        return std::nullopt;
    }
    auto vals = es.eigenvalues();
    auto vecs = es.eigenvectors();
    auto basis_of = [&](double l2, double tol) {
        std::vector<Eigen::VectorXd> b;
        for (int i = 0; i < n; ++i)
            if (std::abs(vals(i) - l2) <= tol) b.push_back(vecs.col(i));
        return b;
    };
    double scale = 1;
    for (const auto& v : xi.upper) scale = std::max(scale, std::abs(to_double(v)));
    double tol = 1e-7 * scale * scale;
    Eigen::MatrixXd ainv(n, n);
    int col = 0;
    std::vector<Rational> seen;
    for (std::size_t j = 0; j < xi.upper.size(); ++j) {
        Rational mu = abs_q(xi.upper[j]);
        if (mu == 0 || std::find(seen.begin(), seen.end(), mu) != seen.end()) continue;
        seen.push_back(mu);
        double m = to_double(mu);
        auto space = basis_of(m * m, tol);
        int mult = 0;
        for (const auto& v : xi.upper) mult += abs_q(v) == mu;
        if (static_cast<int>(space.size()) != 2 * mult) {
            if (diag) *diag = "eigenspace dimension mismatch";
            return std::nullopt;
        }
        std::vector<Eigen::VectorXd> chosen;
        std::size_t next = 0;
        for (int t = 0; t < mult; ++t) {
            Eigen::VectorXd v;
            while (next < space.size()) {
                v = space[next++];
                for (const auto& u : chosen) v -= u.dot(v) * u;
                if (v.norm() > 1e-6) break;
                v.resize(0);
            }
            if (v.size() == 0) {
                if (diag) *diag = "could not complete an eigenspace basis";
                return std::nullopt;
            }
            v.normalize();
            Eigen::VectorXd y = x * v / m;
            chosen.push_back(v);
            chosen.push_back(y);
            // a negative last entry uses the pair (x, -y)
            bool negative = xi.upper[j + t] < 0;
            ainv.col(col++) = v;
            ainv.col(col++) = negative ? Eigen::VectorXd(-y) : y;
        }
    }
    auto kernel = basis_of(0, tol);
    for (auto v : kernel) {
        if (col >= n) break;
        for (int c = 0; c < col; ++c) v -= ainv.col(c).dot(v) * ainv.col(c);
        if (v.norm() < 1e-6) continue;
        ainv.col(col++) = v.normalized();
    }
    if (col != n) {
        if (diag) *diag = "kernel dimension mismatch";
        return std::nullopt;
    }
    if (ainv.determinant() < 0) {
        if (xi.upper.empty() || abs_q(xi.upper.back()) == 0 || n % 2 == 1) {
            ainv.col(n - 1) *= -1;
        } else {
            if (diag) *diag = "Pfaffian orientation mismatch";
            return std::nullopt;
        }
    }
    Conjugator c;
    finish(c, ainv, x, canonical_element(Flavor::Orthogonal, n, xi.upper));
    return c;
}

}  // namespace

std::optional<Conjugator> conjugator_a(const XiMatrix& xi, std::string* diagnostic) {
    return xi.flavor == Flavor::Unitary ? unitary_conjugator(xi, diagnostic) : orthogonal_conjugator(xi, diagnostic);
}

std::vector<TowerRow> sphere_tower(const Pattern& p) {
    std::vector<TowerRow> out;
    for (int k = p.alpha(); k <= p.n(); ++k) {
        TowerRow row{k, {}};
        for (const auto& b : stabilizer_L(p, k).blocks) {
            if (!b.corank_one) continue;
            int d = b.family == Family::SO ? b.size - 1 : 2 * b.size - 1;
            if (d > 0) row.spheres.push_back(d);
        }
        out.push_back(row);
    }
    return out;
}

int tower_dim(const std::vector<TowerRow>& t) {
    int d = 0;
    for (const auto& r : t)
        for (int s : r.spheres) d += s;
    return d;
}

}  // namespace gzfiber
