#pragma once

#include "gzfiber/groupexpr.hpp"
#include "gzfiber/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gzfiber {

struct HomotopyProfile {
    int pi1_free_rank = 0;
    int pi1_two_torsion_rank = 0;  // s
    int pi2_rank = 0;              // f
    int pi3_rank = 0;
    std::vector<std::string> notes;
    bool same_ranks(const HomotopyProfile& o) const {
        return pi1_free_rank == o.pi1_free_rank && pi1_two_torsion_rank == o.pi1_two_torsion_rank &&
               pi2_rank == o.pi2_rank && pi3_rank == o.pi3_rank;
    }
};

HomotopyProfile homotopy_unitary(const Pattern& p);
HomotopyProfile homotopy_orthogonal(const Pattern& p);
HomotopyProfile homotopy(const Pattern& p);

// Independent route: exact sequence of G -> G/H applied to each raw factor
// chain, with explicit pi_1 and pi_3 maps of the block inclusions.
HomotopyProfile homotopy_by_exact_sequence(const Pattern& p);
HomotopyProfile chain_homotopy(const Chain& c);

struct Generator {
    int degree = 0;
    std::string name;    // "z3", "q7", "u2", "chi3", "v4"
    std::string source;  // shape id, e.g. "M2@k5#3"
};

struct ExteriorModel {
    std::vector<Generator> generators;
    std::vector<int> degrees() const;  // sorted
    int degree_sum() const;
};

// Coefficient of q^i at index i; arbitrary precision since wide tori overflow 64 bits.
using Polynomial = std::vector<Integer>;

Polynomial poly_one();
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial exterior_poly(const std::vector<int>& degrees);
std::string poly_text(const Polynomial& p);

struct StiefelCohomology {
    int M = 0, m = 0;  // SO(M)/SO(m), m already raised to at least 1
    std::vector<int> mod2_degrees;        // simple system v_m .. v_{M-1}
    std::vector<std::string> relations;   // squares and Sq^1
    std::vector<Generator> free;          // q_{4j-1}, u_m, chi_{2l-1}
    Polynomial torsion;                   // (Z/2)-rank of H^i(;Z) by degree i
    std::vector<std::string> notes;

    std::string name() const;
    Polynomial poincare_f2() const;
    Polynomial poincare_free() const;
    int dim() const;
};

StiefelCohomology stiefel_cohomology(int M, int m);

// (Z/2)-ranks of H^i(;Z), assuming all torsion has order 2.
Polynomial torsion_from_polys(const Polynomial& f2, const Polynomial& free);

struct Hexagon {
    int M = 0, m = 0;
    StiefelCohomology cohomology;
};

struct WhiteFactorModel {
    int component = 0, kb = 0, kt = 0;
    std::string group_form;
    std::vector<int> mod2_degrees;      // from white M-shapes
    ExteriorModel free;                 // z_s and q_{4s'-1}
    std::vector<int> mm_widths;         // odd widths 2s'+1 of MM-shapes
    std::vector<Hexagon> hexagons;
    std::vector<std::string> additive_model; // "S^6", "V2(R^7)"
    Polynomial poincare_f2() const;     // from the shapes
    Polynomial hexagon_f2() const;      // product over hexagons
    Polynomial hexagon_free() const;
};

struct OrthogonalCohomologyModel {
    ExteriorModel fu;
    std::vector<WhiteFactorModel> fso;
    ExteriorModel fso_free() const;
    std::vector<int> fso_mod2_degrees() const;
    std::vector<std::string> additive_model() const;
};

ExteriorModel cohomology_unitary(const Pattern& p);
OrthogonalCohomologyModel cohomology_orthogonal(const Pattern& p);

enum class Coefficients { F2, Q, ZFree };
Coefficients parse_coefficients(const std::string& s);

Polynomial poincare_polynomial(const ExteriorModel& m, Coefficients c = Coefficients::Q);
Polynomial poincare_polynomial(const OrthogonalCohomologyModel& m, Coefficients c);
// Z/2-ranks of H^i(;Z) for the orthogonal additive model.
Polynomial integral_torsion(const OrthogonalCohomologyModel& m);

}  // namespace gzfiber
