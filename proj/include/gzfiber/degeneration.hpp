#pragma once

#include "gzfiber/pattern.hpp"
#include "gzfiber/staircase.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gzfiber {

// A circle coordinate of T^{t(p)}: a counted below-top black component or a
// white width-2 diamond, located by an anchor vertex.
struct TorusCoordinate {
    int component = 0;
    bool white = false;
    int kb = 0, kt = 0;  // rows covered (the piece for white coordinates)
    Vertex anchor;
};

std::vector<TorusCoordinate> torus_coordinates(const Pattern& p);

struct Face {
    int id = 0;
    Pattern pattern;
    int dim = 0;
    int t = 0;
    Staircase witness;
    std::vector<std::uint64_t> tight;  // bit per interlacing inequality
};

// Integer matrix of T^{t(E)} -> T^{t(F)} on circle coordinates.
struct TorusMap {
    int rows = 0, cols = 0;
    std::vector<std::vector<int>> m;
    bool operator==(const TorusMap&) const = default;
    TorusMap compose(const TorusMap& first) const;  // this * first
    int rank() const;
    static TorusMap identity(int n);
};

struct Cover {
    int upper = 0;  // E
    int lower = 0;  // F, one dimension less
    std::string merge;
    TorusMap map;
};

struct FaceLattice {
    Flavor flavor = Flavor::Unitary;
    int n = 0;
    std::vector<Rational> top;
    std::vector<Face> faces;  // faces[0] is the interior
    std::vector<Cover> covers;
    std::vector<int> f_vector() const;
    bool leq(int f, int e) const;  // face f lies in the closure of face e
};

struct FaceOptions {
    int n_bound = 4;
    int threads = 1;
};

// Faces of the polytope with fixed top row, one per realizable pattern.
// Orthogonal witnesses take the nonnegative sign on even rows.
// top is the staircase row n+1.
FaceLattice enumerate_faces(Flavor flavor, int n, const std::vector<Rational>& top, const FaceOptions& opt = {});

// Direct anchor map for any pair F <= E.
TorusMap torus_map(const Pattern& e, const Pattern& f);
TorusMap torus_map(const FaceLattice& lattice, int e, int f);
std::string merge_descriptor(const Pattern& e, const Pattern& f);

struct CoherenceReport {
    int intervals = 0;   // length-2 intervals examined
    int mismatches = 0;
    int monotonicity_failures = 0;  // unitary covers with t(F) outside {t(E)-1, t(E)}
    int multi_drops = 0;            // orthogonal covers where several circles vanish at once
    std::vector<std::string> details;
    bool ok() const { return mismatches == 0 && monotonicity_failures == 0; }
};

CoherenceReport check_coherence(const FaceLattice& lattice);

struct SkeletonEntry {
    int face = 0;
    int t = 0;
    TorusMap from_top;  // composite along a chain of covers
    bool matches_direct = false;
    bool rank_ok = false;
};

std::vector<SkeletonEntry> x0_skeleton(const FaceLattice& lattice);

std::string hasse_dot(const FaceLattice& lattice);

// A staircase whose pattern is p, built top-down; nullopt if p is not realizable.
std::optional<Staircase> realize(const Pattern& p);

}  // namespace gzfiber
