#pragma once

#include "gzfiber/pattern.hpp"

#include <memory>
#include <string>
#include <vector>

namespace gzfiber {

enum class Family { U, SU, SO };

std::string to_string(Family f);

struct Atom {
    Family family = Family::U;
    int rank = 0;
    bool nonstandard = false;  // o-conjugate block from an even orthogonal row

    bool trivial() const;
    int dim() const;
    std::string text() const;
    bool operator==(const Atom&) const = default;
};

bool trivial_atom(Family f, int rank);
int atom_dim(Family f, int rank);

enum class EmbedKind { Identity, LowerRightBlock };

// Where each atom of a subgroup lands in the adjacent group's atom list.
struct Embedding {
    struct Slot {
        int target = 0;
        EmbedKind kind = EmbedKind::Identity;
        bool operator==(const Slot&) const = default;
    };
    std::vector<Slot> slots;
    bool operator==(const Embedding&) const = default;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// A subgroup embedded diagonally into the listed slots of a biquotient.
struct Diagonal {
    ExprPtr group;
    std::vector<int> slots;
};

struct Expr {
    enum class Kind { Point, Atom, Torus, Sphere, Product, Balanced, Quotient, Biquotient };
    Kind kind = Kind::Point;
    gzfiber::Atom atom;            // Atom
    int n = 0;                     // Torus rank, Sphere dimension
    std::vector<ExprPtr> children; // Product factors; Balanced {left, right}; Quotient {total}; Biquotient G
    ExprPtr sub;                   // Balanced gluing group, Quotient subgroup
    std::vector<Embedding> embed;  // Balanced {into left, into right}; Quotient {into total}
    std::vector<Diagonal> a, b;    // Biquotient A (left) and B (right)
};

ExprPtr point();
ExprPtr atom(Family f, int rank, bool nonstandard = false);
ExprPtr torus(int rank);
ExprPtr sphere(int dim);
ExprPtr product(std::vector<ExprPtr> factors);
ExprPtr balanced(ExprPtr left, ExprPtr glue, ExprPtr right, Embedding into_left = {}, Embedding into_right = {});
ExprPtr quotient(ExprPtr total, ExprPtr sub, Embedding into_total = {});
ExprPtr biquotient(std::vector<Diagonal> a, std::vector<ExprPtr> g, std::vector<Diagonal> b);

int group_dim(const ExprPtr& e);
// Conventional notation, e.g. "U(4) (x)_{U(2)} U(3) / U(2)".
std::string text(const ExprPtr& e);
// Canonical S-expression, e.g. "(quot (bal (U 4) (U 2) (U 3)) (U 2))".
std::string sexpr(const ExprPtr& e);
// Erases o-conjugation flags, drops trivial pieces, flattens products.
ExprPtr normalize(const ExprPtr& e);
bool has_nonstandard(const ExprPtr& e);
bool equal(const ExprPtr& a, const ExprPtr& b);

// ---------------------------------------------------------------------------
// Row stabilizers H_k and L_k.

struct Block {
    Family family = Family::U;
    int size = 0;            // d for U(d) / SO(d)
    bool corank_one = false; // [1] + U(d-1) inside U(d)
    bool nonstandard = false;
    int component = -1;
    bool mirror = false;
    int rank() const { return corank_one ? size - 1 : size; }
    Atom atom() const { return {family, rank(), nonstandard}; }
    std::string text() const;
};

struct BlockGroup {
    std::vector<Block> blocks;
    ExprPtr expr() const;  // product of the nontrivial atoms
    int dim() const;
    std::string text() const;
};

// include_mirror lists the negative-part blocks of an orthogonal row as well.
BlockGroup stabilizer_H(const Pattern& p, int k, bool include_mirror = false);
BlockGroup stabilizer_L(const Pattern& p, int k, bool include_mirror = false);

ExprPtr balanced_product(const Pattern& p);

// ---------------------------------------------------------------------------
// Per-factor chains G_0 (x)_{L_1} G_1 ... G_r / Q.

struct Chain {
    Family family = Family::U;
    std::vector<int> groups;  // ranks of G_i
    std::vector<int> glues;   // ranks of L_i, one fewer than groups
    int quotient = 0;         // rank of Q (trivial when 0, or 1 for SO)

    bool empty() const { return groups.empty(); }
    int dim() const;
    ExprPtr expr() const;
    // Keeps trivial atoms visible, e.g. "SO(1) (x)_{SO(1)} SO(3) ...".
    std::string raw_text() const;
    bool operator==(const Chain&) const = default;
};

Chain telescope(const Chain& raw);
// Independent route: local maxima/minima of the width data.
Chain telescope_by_extrema(const std::vector<int>& widths, int upper_width, Family f);

struct SplitResult {
    ExprPtr expr;                    // direct product
    std::vector<ExprPtr> peeled;     // Stiefel/sphere pieces in peel order
    std::vector<std::string> peels;  // "left U(2)/U(1)", ...
    Chain rest;                      // remaining chain
};

SplitResult split_stiefel(const Chain& telescoped, bool below_top);

struct Factor {
    int component = 0;
    Color color = Color::Black;
    Side side = Side::Positive;
    int kb = 0, kt = 0;
    std::vector<int> widths;  // w(kb) .. w(kt)
    bool reaches_top = false;
    Chain raw;
    Chain telescoped;
    SplitResult split;
    ExprPtr simplified;  // group form of the factor
    ExprPtr biquotient;
    bool circle = false;  // contributes one S^1 to the torus factor
};

struct FiberPresentation {
    Flavor flavor = Flavor::Unitary;
    std::vector<Factor> factors;
    int torus_rank = 0;
    int dim = 0;
    ExprPtr balanced;    // normalized H_alpha (x) ... / L_n
    ExprPtr biquotient;  // global A \ prod H_k / B
};

FiberPresentation factorize(const Pattern& p);

int torus_rank(const Pattern& p);

struct TorusSplit {
    int rank = 0;
    std::vector<ExprPtr> residual;  // per factor, SU form where a circle was removed
};

TorusSplit extract_torus(const FiberPresentation& pres);

// Biquotient of a chain: A \ (G_0 x ... x G_r) / B.
ExprPtr to_biquotient(const Chain& c);
ExprPtr global_biquotient(const Pattern& p);

// "SU(2) x SO(2)": product of the per-factor group forms.
std::string group_form(const FiberPresentation& pres);
// "(S^1)^7 x (S^3)^3 x U(2)\(U(4) x U(3))/U(2)": circles and spheres collected.
std::string sphere_form(const FiberPresentation& pres);

}  // namespace gzfiber
