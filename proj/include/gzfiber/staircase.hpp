#pragma once

#include "gzfiber/rational.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace gzfiber {

enum class Flavor { Unitary, Orthogonal };

std::string to_string(Flavor f);
Flavor parse_flavor(const std::string& s);

// Malformed input: wrong row lengths, bad literals, missing fields.
struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * A point of a Gelfand-Zeitlin polytope: eigenvalue rows k = alpha .. n+1,
 * stored bottom-up.  Unitary row k holds k values; orthogonal row k holds
 * floor(k/2) values, and the last value of an even row may be negative.
 */
class Staircase {
public:
    Staircase(Flavor flavor, std::vector<std::vector<Rational>> rows);

    Flavor flavor() const { return flavor_; }
    int alpha() const { return flavor_ == Flavor::Unitary ? 1 : 2; }
    // Index of the top row, n + 1.
    int top() const { return alpha() + static_cast<int>(rows_.size()) - 1; }
    int n() const { return top() - 1; }
    const std::vector<Rational>& row(int k) const { return rows_.at(k - alpha()); }
    const std::vector<std::vector<Rational>>& rows() const { return rows_; }

    // Row k of the symmetric extended triangle (length k); for unitary
    // staircases this is the row itself.
    std::vector<Rational> extended_row(int k) const;

    static int row_length(Flavor flavor, int k) { return flavor == Flavor::Unitary ? k : k / 2; }

    bool operator==(const Staircase& o) const { return flavor_ == o.flavor_ && rows_ == o.rows_; }

private:
    Flavor flavor_;
    std::vector<std::vector<Rational>> rows_;
};

struct Violation {
    int k = 0;          // row of the lower entry (row k+1 is the upper one)
    int j = 0;          // position in row k
    std::string kind;   // "upper", "lower", "order" or "sign"
    std::string detail; // exact witness, e.g. "7/2 > 3"
    bool operator==(const Violation&) const = default;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
    bool operator==(const ValidationReport&) const = default;
};

ValidationReport validate(const Staircase& s);

// Parses {"flavor": ..., "rows": [[...], ...]}.  Throws StructureError.
Staircase parse_staircase(const std::string& json_text);
std::string staircase_to_json(const Staircase& s);

}  // namespace gzfiber
