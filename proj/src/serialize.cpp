#include "gzfiber/serialize.hpp"

#include <limits>
#include <map>
#include <set>

namespace gzfiber {

namespace {

json rationals(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

const char* kind_name(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Point: return "point";
        case Expr::Kind::Atom: return "atom";
        case Expr::Kind::Torus: return "torus";
        case Expr::Kind::Sphere: return "sphere";
        case Expr::Kind::Product: return "product";
        case Expr::Kind::Balanced: return "balanced";
        case Expr::Kind::Quotient: return "quotient";
        case Expr::Kind::Biquotient: return "biquotient";
    }
    return "point";
}

json embedding_json(const Embedding& e) {
    json a = json::array();
    for (const auto& s : e.slots)
        a.push_back({{"target", s.target}, {"kind", s.kind == EmbedKind::Identity ? "identity" : "lower_right"}});
    return a;
}

json diagonals_json(const std::vector<Diagonal>& d) {
    json a = json::array();
    for (const auto& x : d) a.push_back({{"group", expr_json(x.group)}, {"slots", x.slots}});
    return a;
}

json tree_json(const ExprPtr& e) {
    json j{{"kind", kind_name(e->kind)}};
    switch (e->kind) {
        case Expr::Kind::Point: break;
        case Expr::Kind::Atom:
            j["family"] = to_string(e->atom.family);
            j["rank"] = e->atom.rank;
            if (e->atom.nonstandard) j["nonstandard"] = true;
            break;
        case Expr::Kind::Torus: j["rank"] = e->n; break;
        case Expr::Kind::Sphere: j["dim"] = e->n; break;
        case Expr::Kind::Product: {
            json c = json::array();
            for (const auto& x : e->children) c.push_back(tree_json(x));
            j["factors"] = c;
            break;
        }
        case Expr::Kind::Balanced:
            j["left"] = tree_json(e->children.at(0));
            j["glue"] = tree_json(e->sub);
            j["right"] = tree_json(e->children.at(1));
            if (e->embed.size() == 2) j["embed"] = {embedding_json(e->embed[0]), embedding_json(e->embed[1])};
            break;
        case Expr::Kind::Quotient:
            j["total"] = tree_json(e->children.at(0));
            j["sub"] = tree_json(e->sub);
            if (!e->embed.empty()) j["embed"] = embedding_json(e->embed[0]);
            break;
        case Expr::Kind::Biquotient: {
            json g = json::array();
            for (const auto& x : e->children) g.push_back(tree_json(x));
            j["A"] = diagonals_json(e->a);
            j["G"] = g;
            j["B"] = diagonals_json(e->b);
            break;
        }
    }
    return j;
}

}  // namespace

json staircase_json(const Staircase& s) {
    json rows = json::array();
    for (const auto& r : s.rows()) rows.push_back(rationals(r));
    return {{"flavor", to_string(s.flavor())}, {"rows", rows}};
}

json validation_json(const ValidationReport& r) {
    json v = json::array();
    for (const auto& x : r.violations) v.push_back({{"k", x.k}, {"j", x.j}, {"kind", x.kind}, {"detail", x.detail}});
    return {{"ok", r.ok}, {"violations", v}};
}

json pattern_json(const Pattern& p) {
    json vertices = json::array(), edges = json::array();
    for (int k = 1; k <= p.top(); ++k)
        for (int j = 1; j <= k; ++j) {
            vertices.push_back({{"k", k}, {"j", j}, {"color", to_string(p.white(k, j) ? Color::White : Color::Black)},
                                {"component", p.component_of(k, j)}});
            if (j < k && p.edge_h(k, j)) edges.push_back({k, j, k, j + 1});
            if (k < p.top() && p.edge_l(k, j)) edges.push_back({k, j, k + 1, j});
            if (k < p.top() && p.edge_r(k, j)) edges.push_back({k, j, k + 1, j + 1});
        }
    json comps = json::array();
    for (const auto& c : p.components())
        comps.push_back({{"id", c.id},
                         {"color", to_string(c.color)},
                         {"side", to_string(c.side)},
                         {"mirror", c.mirror},
                         {"kb", c.kb},
                         {"kt", c.kt},
                         {"widths", c.widths},
                         {"size", c.vertices.size()}});
    json shapes = json::array();
    for (const auto& s : p.shapes())
        shapes.push_back({{"component", s.component},
                          {"k", s.k},
                          {"shape", to_string(s.shape)},
                          {"w_lower", s.w_lower},
                          {"w_upper", s.w_upper}});
    json signs = json::object();
    if (p.flavor() == Flavor::Orthogonal)
        for (int k = 2; k <= p.top(); k += 2) signs[std::to_string(k)] = p.even_row_sign(k);
    json j{{"flavor", to_string(p.flavor())},
           {"top", p.top()},
           {"vertices", vertices},
           {"edges", edges},
           {"components", comps},
           {"shapes", shapes},
           {"torus_rank", torus_rank(p)}};
    if (p.flavor() == Flavor::Orthogonal) j["signs"] = signs;
    return j;
}

json expr_json(const ExprPtr& e) {
    return {{"text", text(e)}, {"sexpr", sexpr(e)}, {"dim", group_dim(e)}, {"tree", tree_json(e)}};
}

json poly_json(const Polynomial& p) {
    json a = json::array();
    for (const auto& x : p) {
        if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
            a.push_back(x.convert_to<std::int64_t>());
        else
            a.push_back(x.str());
    }
    return a;
}

Polynomial poly_from_json(const json& j) {
    Polynomial p;
    for (const auto& x : j) p.push_back(x.is_string() ? Integer(x.get<std::string>()) : Integer(x.get<std::int64_t>()));
    return p;
}

json chain_json(const Chain& c) {
    return {{"family", to_string(c.family)},
            {"groups", c.groups},
            {"glues", c.glues},
            {"quotient", c.quotient},
            {"text", c.raw_text()},
            {"dim", c.dim()}};
}

std::string fiber_text(const FiberPresentation& pres) {
    return pres.flavor == Flavor::Unitary ? sphere_form(pres) : group_form(pres);
}

json fiber_json(const FiberPresentation& pres) {
    json factors = json::array();
    for (const auto& f : pres.factors) {
        json peeled = json::array();
        for (const auto& x : f.split.peeled) peeled.push_back(text(x));
        factors.push_back({{"component", f.component},
                           {"color", to_string(f.color)},
                           {"side", to_string(f.side)},
                           {"kb", f.kb},
                           {"kt", f.kt},
                           {"widths", f.widths},
                           {"reaches_top", f.reaches_top},
                           {"circle", f.circle},
                           {"raw", chain_json(f.raw)},
                           {"telescoped", chain_json(f.telescoped)},
                           {"split", {{"peels", f.split.peels}, {"peeled", peeled}, {"rest", chain_json(f.split.rest)}}},
                           {"simplified", expr_json(f.simplified)},
                           {"biquotient", expr_json(f.biquotient)}});
    }
    auto ts = extract_torus(pres);
    json residual = json::array();
    for (const auto& r : ts.residual) residual.push_back(text(r));
    return {{"flavor", to_string(pres.flavor)},
            {"dim", pres.dim},
            {"text", fiber_text(pres)},
            {"group_form", group_form(pres)},
            {"sphere_form", sphere_form(pres)},
            {"balanced", expr_json(pres.balanced)},
            {"biquotient", expr_json(pres.biquotient)},
            {"torus", {{"rank", ts.rank}, {"residual", residual}}},
            {"factors", factors}};
}

json homotopy_json(const HomotopyProfile& h) {
    return {{"pi1", {{"free_rank", h.pi1_free_rank}, {"two_torsion_rank", h.pi1_two_torsion_rank}}},
            {"pi2_rank", h.pi2_rank},
            {"pi3_rank", h.pi3_rank},
            {"notes", h.notes}};
}

namespace {

json generators_json(const std::vector<Generator>& gens) {
    json a = json::array();
    for (const auto& g : gens) a.push_back({{"degree", g.degree}, {"name", g.name}, {"source", g.source}});
    return a;
}

json stiefel_json(const StiefelCohomology& c) {
    return {{"name", c.name()},
            {"M", c.M},
            {"m", c.m},
            {"dim", c.dim()},
            {"mod2_degrees", c.mod2_degrees},
            {"relations", c.relations},
            {"free", generators_json(c.free)},
            {"torsion", poly_json(c.torsion)},
            {"notes", c.notes}};
}

}  // namespace

json invariants_json(const Pattern& p) {
    json pi = homotopy_json(homotopy(p));
    json coh;
    if (p.flavor() == Flavor::Unitary) {
        auto m = cohomology_unitary(p);
        auto q = poincare_polynomial(m, Coefficients::Q);
        coh = {{"generators", generators_json(m.generators)},
               {"degrees", m.degrees()},
               {"torsion", json::array()},
               {"poincare", {{"F2", poly_json(q)}, {"Q", poly_json(q)}}}};
    } else {
        auto m = cohomology_orthogonal(p);
        std::vector<Generator> all = m.fu.generators;
        auto fso = m.fso_free().generators;
        all.insert(all.end(), fso.begin(), fso.end());
        json factors = json::array();
        for (const auto& f : m.fso) {
            json hex = json::array();
            for (const auto& h : f.hexagons) hex.push_back(stiefel_json(h.cohomology));
            factors.push_back({{"component", f.component},
                               {"kb", f.kb},
                               {"kt", f.kt},
                               {"group_form", f.group_form},
                               {"mod2_degrees", f.mod2_degrees},
                               {"free", generators_json(f.free.generators)},
                               {"mm_widths", f.mm_widths},
                               {"hexagons", hex},
                               {"additive_model", f.additive_model},
                               {"poincare_f2", poly_json(f.poincare_f2())}});
        }
        coh = {{"generators", generators_json(all)},
               {"torsion", poly_json(integral_torsion(m))},
               {"poincare",
                {{"F2", poly_json(poincare_polynomial(m, Coefficients::F2))}, {"Q", poly_json(poincare_polynomial(m, Coefficients::Q))}}},
               {"fu", generators_json(m.fu.generators)},
               {"fso", {{"mod2_degrees", m.fso_mod2_degrees()}, {"additive_model", m.additive_model()}, {"factors", factors}}}};
    }
    return {{"pi", pi}, {"cohomology", coh}};
}

json eigencheck_json(const Staircase& s, const EigencheckReport& r) {
    json rows = json::array();
    for (const auto& x : r.rows) {
        json row{{"k", x.k},
                 {"deviation", x.deviation},
                 {"truncation_error", x.truncation_error},
                 {"pfaffian_checked", x.pfaffian_checked},
                 {"pfaffian_error", x.pfaffian_error},
                 {"pass", x.pass}};
        if (!x.context.empty()) row["context"] = x.context;
        try {
            std::string diag;
            auto c = conjugator_a(build_xi(s, x.k), &diag);
            if (c)
                row["conjugator"] = {{"residual", c->residual}, {"orthogonality", c->orthogonality}, {"det", c->det}};
            else
                row["conjugator"] = {{"diagnostic", diag}};
        } catch (const std::exception& e) {
            row["conjugator"] = {{"diagnostic", e.what()}};
        }
        rows.push_back(row);
    }
    return {{"tol", r.tol}, {"pass", r.pass}, {"rows", rows}};
}

json lattice_json(const FaceLattice& l, const CoherenceReport& c) {
    json faces = json::array();
    for (const auto& f : l.faces) {
        json edges = json::array();
        const auto& p = f.pattern;
        for (int k = 1; k <= p.top(); ++k)
            for (int j = 1; j <= k; ++j) {
                if (j < k && p.edge_h(k, j)) edges.push_back({k, j, k, j + 1});
                if (k < p.top() && p.edge_l(k, j)) edges.push_back({k, j, k + 1, j});
                if (k < p.top() && p.edge_r(k, j)) edges.push_back({k, j, k + 1, j + 1});
            }
        faces.push_back({{"id", f.id}, {"dim", f.dim}, {"t", f.t}, {"witness", staircase_json(f.witness)}, {"edges", edges}});
    }
    json covers = json::array();
    for (const auto& cv : l.covers)
        covers.push_back({{"upper", cv.upper}, {"lower", cv.lower}, {"merge", cv.merge}, {"map", cv.map.m}});
    return {{"flavor", to_string(l.flavor)},
            {"n", l.n},
            {"top", rationals(l.top)},
            {"f_vector", l.f_vector()},
            {"faces", faces},
            {"covers", covers},
            {"coherence",
             {{"intervals", c.intervals},
              {"mismatches", c.mismatches},
              {"monotonicity_failures", c.monotonicity_failures},
              {"multi_drops", c.multi_drops},
              {"ok", c.ok()},
              {"details", c.details}}}};
}

json report_json(const Staircase& s, double tol) {
    auto p = Pattern::from_staircase(s);
    auto pres = factorize(p);
    json tower = json::array();
    auto t = sphere_tower(p);
    for (const auto& r : t) tower.push_back({{"k", r.k}, {"spheres", r.spheres}});
    json inv = invariants_json(p);
    return {{"staircase", staircase_json(s)},
            {"validation", validation_json(validate(s))},
            {"pattern", pattern_json(p)},
            {"fiber", fiber_json(pres)},
            {"homotopy", inv["pi"]},
            {"cohomology", inv["cohomology"]},
            {"sphere_tower", {{"rows", tower}, {"dim", tower_dim(t)}}},
            {"oracle", eigencheck_json(s, eigencheck(s, tol))}};
}

// ---------------------------------------------------------------------------

Pattern pattern_from_merges(const json& doc) {
    if (!doc.contains("flavor") || !doc["flavor"].is_string()) throw StructureError("pattern needs a 'flavor' string");
    Flavor f = parse_flavor(doc["flavor"].get<std::string>());
    if (!doc.contains("top_row") || !doc["top_row"].is_array()) throw StructureError("pattern needs 'top_row'");
    std::vector<std::pair<Vertex, Vertex>> eq;
    int top = 0;
    for (const auto& m : doc["top_row"]) {
        if (!m.is_number_integer() || m.get<int>() < 1) throw StructureError("top_row multiplicities must be positive integers");
        int w = m.get<int>();
        for (int i = 1; i < w; ++i) eq.push_back({{0, top + i}, {0, top + i + 1}});
        top += w;
    }
    if (top < 1 || (f == Flavor::Orthogonal && top < 2)) throw StructureError("top_row is too short");
    for (auto& e : eq) e.first.k = e.second.k = top;
    if (doc.contains("merges")) {
        if (!doc["merges"].is_array()) throw StructureError("'merges' must be an array");
        for (const auto& m : doc["merges"]) {
            if (!m.is_array() || m.size() != 4) throw StructureError("each merge is [k, j, k', j']");
            for (const auto& x : m)
                if (!x.is_number_integer()) throw StructureError("merge coordinates must be integers");
            Vertex a{m[0].get<int>(), m[1].get<int>()}, b{m[2].get<int>(), m[3].get<int>()};
            if (a.k < 1 || a.k > top || b.k < 1 || b.k > top || a.j < 1 || a.j > a.k || b.j < 1 || b.j > b.k)
                throw StructureError("merge vertex out of range");
            eq.push_back({a, b});
        }
    }
    std::vector<int> signs;
    if (doc.contains("signs")) {
        if (!doc["signs"].is_array()) throw StructureError("'signs' must be an array indexed by row");
        signs = doc["signs"].get<std::vector<int>>();
    }
    if (f == Flavor::Unitary) return Pattern::from_equalities(f, top, eq, {}, signs);
    auto mirror = [](Vertex v) { return Vertex{v.k, v.k + 1 - v.j}; };
    std::size_t base = eq.size();
    for (std::size_t i = 0; i < base; ++i) eq.push_back({mirror(eq[i].first), mirror(eq[i].second)});
    auto p = Pattern::from_equalities(f, top, eq, {}, signs);
    // a component meeting its own mirror image carries the value zero
    std::vector<Vertex> white;
    for (const auto& c : p.components()) {
        std::set<Vertex> vs(c.vertices.begin(), c.vertices.end());
        bool self = false;
        for (const auto& v : c.vertices) self = self || vs.count(mirror(v));
        if (self) white.insert(white.end(), c.vertices.begin(), c.vertices.end());
    }
    if (doc.contains("signs")) return Pattern::from_equalities(f, top, eq, white, signs);
    // default: the nonnegative chamber, sign +1 wherever the last entry is nonzero
    auto q = Pattern::from_equalities(f, top, eq, white, {});
    signs.assign(top + 1, 0);
    for (int k = 2; k <= top; k += 2)
        signs[k] = q.components()[q.component_of(k, k / 2)].color == Color::White ? 0 : 1;
    return Pattern::from_equalities(f, top, eq, white, signs);
}

InputDoc parse_input(const json& doc) {
    if (!doc.is_object()) throw StructureError("input must be a JSON object");
    InputDoc in;
    if (doc.contains("rows")) {
        in.staircase = parse_staircase(doc.dump());
        return in;
    }
    if (!doc.contains("top_row")) throw StructureError("input needs 'rows' (staircase) or 'top_row' (pattern)");
    in.from_pattern = true;
    in.pattern = pattern_from_merges(doc);
    auto s = realize(*in.pattern);
    in.realizable = s.has_value();
    if (s) in.staircase = *s;
    return in;
}

}  // namespace gzfiber
