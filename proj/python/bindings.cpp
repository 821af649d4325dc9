// JSON-in, JSON-out bindings; the Python package decodes the strings.
#include "gzfiber/serialize.hpp"

#include <pybind11/pybind11.h>

namespace py = pybind11;
using namespace gzfiber;

namespace {

InputDoc load(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw StructureError(std::string("invalid JSON: ") + e.what());
    }
    auto in = parse_input(doc);
    if (!in.realizable) throw std::invalid_argument("pattern is not realizable");
    return in;
}

Pattern pattern_of(const InputDoc& in) {
    if (!validate(in.staircase).ok) throw std::invalid_argument("staircase violates the interlacing inequalities");
    return in.pattern ? *in.pattern : Pattern::from_staircase(in.staircase);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Topology of Gelfand-Zeitlin fibers";
    m.attr("__version__") = kToolVersion;
    py::register_exception<StructureError>(m, "StructureError", PyExc_ValueError);

    m.def("validate", [](const std::string& s) { return validation_json(validate(load(s).staircase)).dump(); });
    m.def("pattern", [](const std::string& s) { return pattern_json(pattern_of(load(s))).dump(); });
    m.def("render", [](const std::string& s, const std::string& format) { return pattern_of(load(s)).render(format); },
          py::arg("doc"), py::arg("format") = "ascii");
    m.def("fiber", [](const std::string& s) { return fiber_json(factorize(pattern_of(load(s)))).dump(); });
    m.def("fiber_text", [](const std::string& s) { return fiber_text(factorize(pattern_of(load(s)))); });
    m.def("invariants", [](const std::string& s) { return invariants_json(pattern_of(load(s))).dump(); });
    m.def("eigencheck", [](const std::string& s, double tol) {
        auto in = load(s);
        pattern_of(in);
        py::gil_scoped_release release;
        return eigencheck_json(in.staircase, eigencheck(in.staircase, tol)).dump();
    }, py::arg("doc"), py::arg("tol") = 1e-9);
    m.def("faces", [](const std::string& s, int n_bound) {
        auto in = load(s);
        const auto& st = in.staircase;
        py::gil_scoped_release release;
        FaceOptions fo;
        fo.n_bound = n_bound;
        auto lat = enumerate_faces(st.flavor(), st.n(), st.row(st.top()), fo);
        return lattice_json(lat, check_coherence(lat)).dump();
    }, py::arg("doc"), py::arg("n_bound") = 4);
    m.def("report", [](const std::string& s, double tol) {
        auto in = load(s);
        pattern_of(in);
        return json{{"header", {{"tool", kToolName}, {"version", kToolVersion}}}, {"payload", report_json(in.staircase, tol)}}
            .dump();
    }, py::arg("doc"), py::arg("tol") = 1e-9);
}
