#include "gzfiber/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace gzfiber {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
    Integer p{std::string(num)}, q{std::string(den)};
    if (q == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    Rational r(p, q);
    return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& q) {
    return q.str();
}

double to_double(const Rational& q) {
    return q.convert_to<double>();
}

}  // namespace gzfiber
