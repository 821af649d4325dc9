#pragma once

#include "gzfiber/degeneration.hpp"
#include "gzfiber/groupexpr.hpp"
#include "gzfiber/invariants.hpp"
#include "gzfiber/oracle.hpp"

#include "json.hpp"

#include <string>

namespace gzfiber {

using nlohmann::json;

inline constexpr const char* kToolName = "gzfiber";
inline constexpr const char* kToolVersion = "0.1.0";

json staircase_json(const Staircase& s);
json validation_json(const ValidationReport& r);
json pattern_json(const Pattern& p);
json expr_json(const ExprPtr& e);
json chain_json(const Chain& c);
// Coefficients that do not fit in 64 bits become decimal strings.
json poly_json(const Polynomial& p);
Polynomial poly_from_json(const json& j);

// Unitary fibers print with circles and spheres collected, orthogonal ones
// as a product of group forms.
std::string fiber_text(const FiberPresentation& pres);
json fiber_json(const FiberPresentation& pres);

json homotopy_json(const HomotopyProfile& h);
// {"pi": ..., "cohomology": {"generators", "torsion", "poincare": {"F2", "Q"}}}
json invariants_json(const Pattern& p);
json eigencheck_json(const Staircase& s, const EigencheckReport& r);
json lattice_json(const FaceLattice& l, const CoherenceReport& c);

// Combined payload for one valid staircase; deterministic.
json report_json(const Staircase& s, double tol = 1e-9);

/**
 * Input documents: a staircase, or a pattern given by equalities,
 *   {"flavor", "top_row": [multiplicities], "merges": [[k, j, k', j'], ...]}
 * in extended-triangle coordinates.  Orthogonal merges are mirrored and
 * self-mirror components turn white.  Without "signs" every even row
 * with a nonzero last entry takes the sign +1.  Throws StructureError.
 */
struct InputDoc {
    bool from_pattern = false;
    Staircase staircase{Flavor::Unitary, {{Rational(0)}}};
    std::optional<Pattern> pattern;  // set for pattern input
    bool realizable = true;
};

InputDoc parse_input(const json& doc);
Pattern pattern_from_merges(const json& doc);

}  // namespace gzfiber
