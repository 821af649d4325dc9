#include "gzfiber/staircase.hpp"

#include "json.hpp"

#include <sstream>

namespace gzfiber {

using nlohmann::json;

std::string to_string(Flavor f) { return f == Flavor::Unitary ? "unitary" : "orthogonal"; }

Flavor parse_flavor(const std::string& s) {
    if (s == "unitary") return Flavor::Unitary;
    if (s == "orthogonal") return Flavor::Orthogonal;
    throw StructureError("unknown flavor '" + s + "'");
}

Staircase::Staircase(Flavor flavor, std::vector<std::vector<Rational>> rows)
    : flavor_(flavor), rows_(std::move(rows)) {
    if (rows_.empty()) throw StructureError("staircase needs at least one row");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        int k = alpha() + static_cast<int>(i);
        int want = row_length(flavor_, k);
        if (static_cast<int>(rows_[i].size()) != want) {
            std::ostringstream os;
            os << "row " << k << " has " << rows_[i].size() << " entries, expected " << want;
            throw StructureError(os.str());
        }
    }
}

std::vector<Rational> Staircase::extended_row(int k) const {
    if (flavor_ == Flavor::Unitary) return row(k);
    std::vector<Rational> out;
    if (k == 1) return {Rational(0)};
    const auto& r = row(k);
    for (const auto& x : r) out.push_back(abs_q(x));
    if (k % 2 == 1) out.push_back(Rational(0));
    for (auto it = r.rbegin(); it != r.rend(); ++it) out.push_back(-abs_q(*it));
    return out;
}

namespace {

std::string cmp_text(const Rational& a, const char* op, const Rational& b) {
    return to_string(a) + " " + op + " " + to_string(b);
}

// Violations of the within-row ordering of row k.
void check_row_order(Flavor flavor, int k, const std::vector<Rational>& r, std::vector<Violation>& out) {
    int m = static_cast<int>(r.size());
    for (int j = 1; j < m; ++j) {
        bool last = j + 1 == m;
        Rational next = (flavor == Flavor::Orthogonal && last) ? abs_q(r[j]) : r[j];
        if (r[j - 1] < next) out.push_back({k, j, "order", cmp_text(r[j - 1], "<", next)});
    }
    if (flavor == Flavor::Orthogonal && k % 2 == 1 && m > 0 && r[m - 1] < 0)
        out.push_back({k, m, "sign", cmp_text(r[m - 1], "<", Rational(0))});
}

}  // namespace

ValidationReport validate(const Staircase& s) {
    ValidationReport rep;
    auto& v = rep.violations;
    for (int k = s.alpha(); k <= s.top(); ++k) check_row_order(s.flavor(), k, s.row(k), v);
    for (int k = s.alpha(); k < s.top(); ++k) {
        const auto& lo = s.row(k);
        const auto& up = s.row(k + 1);
        if (s.flavor() == Flavor::Unitary) {
            for (int j = 1; j <= k; ++j) {
                if (up[j - 1] < lo[j - 1]) v.push_back({k, j, "upper", cmp_text(lo[j - 1], ">", up[j - 1])});
                if (lo[j - 1] < up[j]) v.push_back({k, j, "lower", cmp_text(lo[j - 1], "<", up[j])});
            }
            continue;
        }
        int m = static_cast<int>(lo.size());
        int mu = static_cast<int>(up.size());
        if (k % 2 == 1) {
            // up has m + 1 entries, the last one enters through its absolute value
            for (int j = 1; j <= m; ++j) {
                if (up[j - 1] < lo[j - 1]) v.push_back({k, j, "upper", cmp_text(lo[j - 1], ">", up[j - 1])});
                Rational below = j == mu - 1 ? abs_q(up[j]) : up[j];
                if (lo[j - 1] < below) v.push_back({k, j, "lower", cmp_text(lo[j - 1], "<", below)});
            }
        } else {
            // same length; the last lower entry enters through its absolute value
            for (int j = 1; j <= m; ++j) {
                Rational x = j == m ? abs_q(lo[j - 1]) : lo[j - 1];
                if (up[j - 1] < x) v.push_back({k, j, "upper", cmp_text(x, ">", up[j - 1])});
                if (j < mu && x < up[j]) v.push_back({k, j, "lower", cmp_text(x, "<", up[j])});
            }
        }
    }
    rep.ok = v.empty();
    return rep;
}

Staircase parse_staircase(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw StructureError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("flavor") || !doc.contains("rows"))
        throw StructureError("staircase needs 'flavor' and 'rows'");
    if (!doc["flavor"].is_string()) throw StructureError("'flavor' must be a string");
    Flavor flavor = parse_flavor(doc["flavor"].get<std::string>());
    if (!doc["rows"].is_array()) throw StructureError("'rows' must be an array");
    std::vector<std::vector<Rational>> rows;
    int k = flavor == Flavor::Unitary ? 1 : 2;
    for (const auto& jr : doc["rows"]) {
        if (!jr.is_array()) throw StructureError("each row must be an array");
        std::vector<Rational> row;
        for (const auto& x : jr) {
            if (!x.is_string()) throw StructureError("rational entries must be strings");
            try {
                row.push_back(parse_rational(x.get<std::string>()));
            } catch (const std::invalid_argument& e) {
                throw StructureError(e.what());
            }
        }
        std::vector<Violation> order;
        check_row_order(flavor, k, row, order);
        if (!order.empty())
            throw StructureError("row " + std::to_string(k) + " is not weakly decreasing (" + order.front().detail + ")");
        rows.push_back(std::move(row));
        ++k;
    }
    return Staircase(flavor, std::move(rows));
}

std::string staircase_to_json(const Staircase& s) {
    json rows = json::array();
    for (const auto& r : s.rows()) {
        json jr = json::array();
        for (const auto& x : r) jr.push_back(to_string(x));
        rows.push_back(jr);
    }
    return json{{"flavor", to_string(s.flavor())}, {"rows", rows}}.dump();
}

}  // namespace gzfiber
