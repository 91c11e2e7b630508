// Python module: thin wrappers that hand back the same JSON the CLI prints.

#include "shephard/complex.hpp"
#include "shephard/dihedral.hpp"
#include "shephard/errors.hpp"
#include "shephard/graph.hpp"
#include "shephard/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace shephard;

namespace {

std::string payload(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Shephard group computations";
    m.attr("schema_version") = kSchemaVersion;

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
    py::register_exception<Inapplicable>(m, "Inapplicable", PyExc_ValueError);

    m.def("classify_json", [](int p, int q, int r) { return payload(to_json(classify(p, q, r))); });
    m.def("normalize_json", [](int p, int q, int r, const std::string& w) {
        DihedralSession s(p, q, r);
        return payload(to_json(s.normalize(SyllableWord::parse(w))));
    });
    m.def("order_json", [](int p, int q, int r, const std::string& w, long long cutoff) {
        DihedralSession s(p, q, r);
        return payload(to_json(s.element_order(SyllableWord::parse(w), cutoff)));
    }, py::arg("p"), py::arg("q"), py::arg("r"), py::arg("word"), py::arg("cutoff") = 1000);
    m.def("is_trivial", [](int p, int q, int r, const std::string& w) {
        DihedralSession s(p, q, r);
        return s.is_trivial(SyllableWord::parse(w));
    });
    m.def("are_equal", [](int p, int q, int r, const std::string& u, const std::string& v) {
        DihedralSession s(p, q, r);
        return s.are_equal(SyllableWord::parse(u), SyllableWord::parse(v));
    });
    m.def("brute_force_equal", [](int p, int q, int r, const std::string& u, const std::string& v) {
        return brute_force_equal(p, q, r, SyllableWord::parse(u), SyllableWord::parse(v));
    });
    m.def("girth_json", [](int p, int q, int r, int max_syllables) {
        py::gil_scoped_release nogil;
        return payload(to_json(certify_girth(p, q, r, max_syllables)));
    }, py::arg("p"), py::arg("q"), py::arg("r"), py::arg("max_syllables") = 0);
    m.def("theta_hat_json", [](int p, int q, int r, int radius) {
        py::gil_scoped_release nogil;
        return payload(to_json(build_theta_hat_ball(p, q, r, radius)));
    });
    m.def("report_json", [](const std::string& graph_text, int vertex_limit) {
        py::gil_scoped_release nogil;
        return payload(to_json(build_verdict_report(parse_graph(graph_text), vertex_limit)));
    }, py::arg("graph_text"), py::arg("vertex_limit") = 14);
}
