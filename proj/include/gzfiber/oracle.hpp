#pragma once

#include "gzfiber/pattern.hpp"
#include "gzfiber/staircase.hpp"

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace gzfiber {

// r_i^2 for the row-k segment of component i, exact.  Zero for W and P shapes.
Rational r_squared(const Pattern& p, const Staircase& s, int k, int component);

// One border entry of xi^(k+1): r at coordinate `index` of the last column.
struct BorderEntry {
    int component = 0;
    int index = 0;   // 0-based coordinate in the k x k block
    Rational r2;
    Shape shape = Shape::P;
    bool white = false;
    int sign = 1;    // orthogonal: sign applied to r to fix the Pfaffian
};

/**
 * Exact skeleton of xi^(k+1).  Unitary: [[diag(lambda^(k)), z], [z^T, c]].
 * Orthogonal: [[A, z], [-z^T, 0]] with A = diag of beta(lambda_j) blocks
 * followed by a zero block.
 */
struct XiMatrix {
    Flavor flavor = Flavor::Unitary;
    int k = 0;
    std::vector<Rational> lower;  // lambda^(k) (staircase row for orthogonal)
    std::vector<Rational> upper;  // lambda^(k+1)
    Rational c;                   // unitary trace defect
    int zero_block = 0;           // orthogonal
    std::vector<BorderEntry> border;

    int size() const { return k + 1; }
    Eigen::MatrixXd numeric() const;
    // The k x k block with zero border, i.e. the canonical element for lambda^(k).
    Eigen::MatrixXd canonical_lower() const;
};

XiMatrix build_xi(const Staircase& s, int k);

// Canonical element for one row: diag(lambda) or the beta-block form.
Eigen::MatrixXd canonical_element(Flavor f, int k, const std::vector<Rational>& row);

double pfaffian(Eigen::MatrixXd a);

struct EigencheckRow {
    int k = 0;
    double deviation = 0;         // max |sorted spectrum - expected|
    double truncation_error = 0;  // top-left block against the canonical element
    bool pfaffian_checked = false;
    double pfaffian_error = 0;
    bool pass = false;
    std::string context;
};

struct EigencheckReport {
    double tol = 1e-9;
    std::vector<EigencheckRow> rows;
    bool pass = true;
};

EigencheckReport eigencheck(const Staircase& s, double tol = 1e-9);
EigencheckRow eigencheck_xi(const XiMatrix& xi, double tol);

struct Conjugator {
    Eigen::MatrixXd a;
    double residual = 0;      // |a xi a^T - canonical|
    double orthogonality = 0; // |a a^T - I|
    double det = 0;
};

// Special orthogonal a with a xi a^{-1} equal to the canonical element of
// lambda^(k+1).  Returns nullopt with a diagnostic on near-degenerate data.
std::optional<Conjugator> conjugator_a(const XiMatrix& xi, std::string* diagnostic = nullptr);

struct TowerRow {
    int k = 0;
    std::vector<int> spheres;  // dimensions of the spheres in H_k / L_k
};

std::vector<TowerRow> sphere_tower(const Pattern& p);
int tower_dim(const std::vector<TowerRow>& t);

}  // namespace gzfiber
