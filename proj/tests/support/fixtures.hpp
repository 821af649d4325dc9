#pragma once

#include "gzfiber/pattern.hpp"
#include "gzfiber/staircase.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fixtures {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline gzfiber::Staircase load(const std::string& name) {
    return gzfiber::parse_staircase(read_file(std::string(GZ_TEST_DATA) + "/" + name));
}

// Orthogonal staircase with integer entries, rows 2..top.
inline gzfiber::Staircase ortho(const std::vector<std::vector<int>>& rows) {
    std::vector<std::vector<gzfiber::Rational>> r;
    for (const auto& row : rows) {
        std::vector<gzfiber::Rational> x;
        for (int v : row) x.emplace_back(v);
        r.push_back(x);
    }
    return gzfiber::Staircase(gzfiber::Flavor::Orthogonal, r);
}

inline gzfiber::Staircase unitary(const std::vector<std::vector<int>>& rows) {
    std::vector<std::vector<gzfiber::Rational>> r;
    for (const auto& row : rows) {
        std::vector<gzfiber::Rational> x;
        for (int v : row) x.emplace_back(v);
        r.push_back(x);
    }
    return gzfiber::Staircase(gzfiber::Flavor::Unitary, r);
}

inline gzfiber::Pattern pat(const gzfiber::Staircase& s) { return gzfiber::Pattern::from_staircase(s); }

}  // namespace fixtures
