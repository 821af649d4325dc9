// Command-line front end: gzfiber <subcommand> [input] [flags].
#include "gzfiber/serialize.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

using namespace gzfiber;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2 };

struct Options {
    std::string command;
    std::string input = "-";
    std::string flavor;
    std::string format = "json";
    double tol = 1e-9;
    int n_bound = 4;
    std::string batch;
    int threads = 1;
};

struct Outcome {
    int code = kOk;
    json doc;          // machine-readable result
    std::string text;  // set for non-JSON formats
    std::string error;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int env_threads() {
    int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* v = std::getenv("GZ_FIBER_THREADS")) {
        try {
            int n = std::stoi(v);
            if (n >= 1) return std::min(n, hw);
        } catch (const std::exception&) {
        }
    }
    return hw;
}

std::string read_all(const std::string& path) {
    std::ostringstream os;
    if (path == "-") {
        os << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open '" + path + "'");
        os << in.rdbuf();
    }
    return os.str();
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw StructureError(std::string("invalid JSON: ") + e.what());
    }
}

void check_format(const Options& o, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (o.format == a) return;
    throw UsageError("format '" + o.format + "' is not available for '" + o.command + "'");
}

std::string text_table(const json& rows, const std::vector<std::string>& keys) {
    std::ostringstream os;
    for (const auto& k : keys) os << std::setw(18) << k;
    os << '\n';
    for (const auto& r : rows) {
        for (const auto& k : keys) {
            os << std::setw(18);
            if (!r.contains(k)) os << "-";
            else if (r[k].is_number_float()) os << std::scientific << std::setprecision(3) << r[k].get<double>() << std::defaultfloat;
            else os << r[k].dump();
        }
        os << '\n';
    }
    return os.str();
}

std::string violations_text(const ValidationReport& r) {
    std::ostringstream os;
    if (r.ok) os << "ok\n";
    for (const auto& v : r.violations) os << "violation k=" << v.k << " j=" << v.j << " " << v.kind << ": " << v.detail << '\n';
    return os.str();
}

std::string invariants_text(const json& inv, bool pi, bool coh) {
    std::ostringstream os;
    if (pi) {
        const auto& p = inv["pi"];
        os << "pi1: Z^" << p["pi1"]["free_rank"].get<int>();
        if (p["pi1"]["two_torsion_rank"].get<int>() > 0) os << " x (Z/2)^" << p["pi1"]["two_torsion_rank"].get<int>();
        os << "\npi2: Z^" << p["pi2_rank"].get<int>() << "\npi3: Z^" << p["pi3_rank"].get<int>() << " (rank)\n";
    }
    if (coh) {
        const auto& c = inv["cohomology"];
        os << "generator degrees:";
        for (const auto& g : c["generators"]) os << ' ' << g["degree"].get<int>();
        os << "\nPoincare Q: " << poly_text(poly_from_json(c["poincare"]["Q"]));
        os << "\nPoincare F2: " << poly_text(poly_from_json(c["poincare"]["F2"])) << '\n';
        if (c.contains("fso")) {
            os << "F_SO mod-2 degrees:";
            for (int d : c["fso"]["mod2_degrees"]) os << ' ' << d;
            os << "\nF_SO additive model:";
            for (const auto& s : c["fso"]["additive_model"]) os << ' ' << s.get<std::string>();
            os << '\n';
        }
    }
    return os.str();
}

Outcome run_one(const Options& o, const json& raw) {
    Outcome out;
    json doc = raw;
    if (!o.flavor.empty()) {
        if (!doc.is_object()) throw StructureError("input must be a JSON object");
        if (!doc.contains("flavor")) doc["flavor"] = o.flavor;
        else if (doc["flavor"] != o.flavor) throw StructureError("input flavor disagrees with --flavor");
    }
    InputDoc in = parse_input(doc);
    const bool text = o.format != "json";

    if (in.from_pattern && !in.realizable) {
        out.code = kFail;
        out.error = "pattern is not realizable";
        out.doc = {{"realizable", false}};
        if (o.command == "pattern") {
            out.doc["pattern"] = pattern_json(*in.pattern);
            if (text) out.text = in.pattern->render(o.format == "text" ? "ascii" : o.format);
        }
        return out;
    }
    const Staircase& s = in.staircase;
    ValidationReport vr = validate(s);

    if (o.command == "validate") {
        check_format(o, {"json", "text"});
        out.doc = {{"staircase", staircase_json(s)}, {"validation", validation_json(vr)}};
        out.text = violations_text(vr);
        out.code = vr.ok ? kOk : kFail;
        return out;
    }
    if (!vr.ok) {
        out.code = kFail;
        out.error = "staircase violates the interlacing inequalities";
        out.doc = {{"validation", validation_json(vr)}};
        out.text = violations_text(vr);
        return out;
    }
    Pattern p = in.pattern ? *in.pattern : Pattern::from_staircase(s);

    if (o.command == "pattern") {
        check_format(o, {"json", "text", "dot", "tikz"});
        out.doc = pattern_json(p);
        if (in.from_pattern) out.doc["witness"] = staircase_json(s);
        if (text) out.text = p.render(o.format == "text" ? "ascii" : o.format);
    } else if (o.command == "fiber") {
        check_format(o, {"json", "text"});
        auto pres = factorize(p);
        out.doc = fiber_json(pres);
        out.text = fiber_text(pres) + "\n";
    } else if (o.command == "cohomology" || o.command == "homotopy") {
        check_format(o, {"json", "text"});
        json inv = invariants_json(p);
        bool pi = o.command == "homotopy";
        out.doc = pi ? json{{"pi", inv["pi"]}} : json{{"cohomology", inv["cohomology"]}};
        out.text = invariants_text(inv, pi, !pi);
    } else if (o.command == "oracle") {
        check_format(o, {"json", "text"});
        auto rep = eigencheck(s, o.tol);
        out.doc = eigencheck_json(s, rep);
        json rows = json::array();
        for (const auto& r : out.doc["rows"]) {
            json flat = r;
            flat.erase("context");
            flat.erase("conjugator");
            flat.erase("pfaffian_checked");
            if (r["conjugator"].contains("orthogonality")) flat["orthogonality"] = r["conjugator"]["orthogonality"];
            rows.push_back(flat);
        }
        out.text = text_table(rows, {"k", "deviation", "truncation_error", "pfaffian_error", "orthogonality", "pass"}) +
                   (rep.pass ? "pass\n" : "FAIL\n");
        out.code = rep.pass ? kOk : kFail;
    } else if (o.command == "faces") {
        check_format(o, {"json", "dot"});
        FaceOptions fo;
        fo.n_bound = o.n_bound;
        fo.threads = o.threads;
        FaceLattice lat;
        try {
            lat = enumerate_faces(s.flavor(), s.n(), s.row(s.top()), fo);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        auto coh = check_coherence(lat);
        out.doc = lattice_json(lat, coh);
        if (text) out.text = hasse_dot(lat);
        out.code = coh.ok() ? kOk : kFail;
    } else if (o.command == "report") {
        check_format(o, {"json"});
        out.doc = {{"header", {{"tool", kToolName}, {"version", kToolVersion}}}, {"payload", report_json(s, o.tol)}};
        if (!out.doc["payload"]["oracle"]["pass"].get<bool>()) out.code = kFail;
    }
    return out;
}

Outcome run_guarded(const Options& o, const json& doc) {
    try {
        return run_one(o, doc);
    } catch (const StructureError& e) {
        return {kUsage, {{"error", e.what()}}, "", e.what()};
    } catch (const UsageError& e) {
        return {kUsage, {{"error", e.what()}}, "", e.what()};
    } catch (const std::exception& e) {
        return {kFail, {{"error", e.what()}}, "", e.what()};
    }
}

void emit(const Options& o, const Outcome& r) {
    if (o.format == "json") std::cout << r.doc.dump(2) << '\n';
    else std::cout << r.text;
}

int run_batch(const Options& o) {
    json entries;
    std::string text = read_all(o.batch);
    try {
        entries = json::parse(text);
    } catch (const json::parse_error&) {
        // JSON Lines
        entries = json::array();
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            entries.push_back(parse_json(line));
        }
    }
    if (!entries.is_array()) throw StructureError("batch input must be a JSON array or JSON Lines");
    std::vector<Outcome> results(entries.size());
    std::atomic<std::size_t> next{0};
    Options inner = o;
    inner.threads = 1;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < entries.size();) results[i] = run_guarded(inner, entries[i]);
    };
    int nt = std::max(1, std::min<int>(o.threads, static_cast<int>(entries.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int code = kOk;
    json arr = json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        code = std::max(code, r.code);
        if (o.format == "json") {
            json e{{"index", i}, {"exit", r.code}, {"result", r.doc}};
            if (!r.error.empty()) e["error"] = r.error;
            arr.push_back(e);
        } else {
            std::cout << "# " << i << '\n' << r.text;
            if (!r.error.empty()) std::cout << "error: " << r.error << '\n';
        }
    }
    if (o.format == "json") std::cout << arr.dump(2) << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Topology of Gelfand-Zeitlin fibers"};
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    const std::vector<std::pair<std::string, std::string>> commands{
        {"validate", "check the interlacing inequalities"},
        {"pattern", "render the GZ pattern (json, text, dot, tikz)"},
        {"fiber", "balanced product, telescoped chains, biquotient and torus split"},
        {"cohomology", "exterior generators, torsion and Poincare polynomials"},
        {"homotopy", "ranks of pi1, pi2, pi3"},
        {"oracle", "numeric eigenvalue check of the xi matrices"},
        {"faces", "face lattice of the polytope with the input's top row"},
        {"report", "combined deterministic JSON"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("input", o.input, "staircase or pattern JSON ('-' for stdin)");
        sub->add_option("--flavor", o.flavor, "unitary or orthogonal, for input without a flavor")
            ->check(CLI::IsMember({"unitary", "orthogonal"}));
        sub->add_option("--format", o.format, "json, text, dot or tikz")
            ->check(CLI::IsMember({"json", "text", "dot", "tikz"}));
        sub->add_option("--tol", o.tol, "oracle tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--n-bound", o.n_bound, "largest n for face enumeration")->check(CLI::PositiveNumber);
        sub->add_option("--batch", o.batch, "file of staircases (JSON array or JSON Lines), processed in parallel");
        sub->callback([&o, name = name] { o.command = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    o.threads = env_threads();
    try {
        if (!o.batch.empty()) return run_batch(o);
        Outcome r = run_guarded(o, parse_json(read_all(o.input)));
        if (r.code == kUsage) {
            std::cerr << "gzfiber: " << r.error << '\n';
            return kUsage;
        }
        emit(o, r);
        if (!r.error.empty()) std::cerr << "gzfiber: " << r.error << '\n';
        return r.code;
    } catch (const StructureError& e) {
        std::cerr << "gzfiber: " << e.what() << '\n';
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "gzfiber: " << e.what() << '\n';
        return kUsage;
    }
}
