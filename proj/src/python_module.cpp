// Python bindings: mobius_ec._core

#include <mutex>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ecmobius/errors.hpp"
#include "ecmobius/io.hpp"
#include "ecmobius/verify.hpp"

namespace py = pybind11;
using namespace ecmobius;

namespace {

py::dict curve_dict(const CurveSpec& c) {
    py::dict d;
    d["label"] = c.label;
    d["a"] = c.a;
    d["b"] = c.b;
    d["conductor"] = c.conductor;
    d["discriminant"] = c.discriminant;
    if (c.root_number) d["root_number"] = *c.root_number;
    else d["root_number"] = py::none();
    d["ap_overrides"] = c.ap_overrides;
    d["warnings"] = c.warnings;
    return d;
}

class PySession {
public:
    PySession(const std::string& curve_text, i64 n_max, double panel_tolerance)
        : session_(parse_curve_text(curve_text), n_max, contour(panel_tolerance)) {}

    static ContourSpec contour(double tol) {
        if (!(tol > 0.0)) fail(ErrorKind::config, "panel_tolerance must be positive");
        ContourSpec c;
        c.panel_tolerance = tol;
        return c;
    }

    // Lazy construction guarded so that calls made without the GIL cannot race.
    const LContext& lfunc() {
        std::call_once(lfunc_once_, [this] { session_.lfunc(); });
        return session_.lfunc();
    }
    const Evaluator& ev() {
        std::call_once(ev_once_, [this] { session_.evaluator(); });
        return session_.evaluator();
    }

    Session session_;

private:
    std::once_flag lfunc_once_, ev_once_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Moebius function of an elliptic curve and the contour function m(z)";
    m.attr("__version__") = tool_version;

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            switch (e.kind()) {
            case ErrorKind::numerical: PyErr_SetString(PyExc_ArithmeticError, e.what()); break;
            case ErrorKind::io: PyErr_SetString(PyExc_OSError, e.what()); break;
            default: PyErr_SetString(PyExc_ValueError, e.what()); break;
            }
        }
    });

    m.def("parse_curve", [](const std::string& text) { return curve_dict(parse_curve_text(text)); }, py::arg("text"),
          "Parse a curve file's text into a dict.");

    m.def(
        "coefficients",
        [](const std::string& text, i64 n_max) {
            const CoefficientTable t = build_table(parse_curve_text(text), n_max);
            std::vector<std::tuple<i64, i64, i64, i64>> rows;
            rows.reserve(static_cast<std::size_t>(n_max));
            for (i64 n = 1; n <= n_max; ++n) {
                const auto& mu = t.mu[static_cast<std::size_t>(n)];
                rows.emplace_back(n, t.a[static_cast<std::size_t>(n)], mu.numer, mu.sqfree);
            }
            return rows;
        },
        py::arg("curve_text"), py::arg("n_max"), "Rows (n, a_n, mu_numer, mu_sqfree), mu_E(n) = mu_numer / sqrt(mu_sqfree).");

    m.def("mellin_j1_check", &mellin_j1_check, py::arg("X"), py::arg("K") = 60);
    m.def("mellin_y1_check", &mellin_y1_check, py::arg("X"), py::arg("K") = 60);
    m.def("bessel_j1", &bessel_j1, py::arg("w"));
    m.def("bessel_y1", &bessel_y1, py::arg("w"));
    m.def("hankel2_1_regularized", &hankel2_1_regularized, py::arg("w"));

    py::class_<PySession>(m, "Session")
        .def(py::init<const std::string&, i64, double>(), py::arg("curve_text"), py::arg("n_max") = 5000,
             py::arg("panel_tolerance") = 1e-10)
        .def_property_readonly("curve", [](PySession& s) { return curve_dict(s.session_.curve()); })
        .def_property_readonly("root_number", [](PySession& s) { return s.lfunc().root_number(); })
        .def("l_value", [](PySession& s, cd z) { return s.lfunc().l_anywhere(z); }, py::arg("s"))
        .def("lambda_value", [](PySession& s, cd z) { return s.lfunc().lambda_completed(z); }, py::arg("s"))
        .def("mu", [](PySession& s, i64 n) {
            if (n < 1 || n > s.session_.table().limit) fail(ErrorKind::domain, "n outside the coefficient table");
            return s.session_.table().mu_value(n);
        }, py::arg("n"))
        .def("zeros", [](PySession& s) {
            py::list out;
            for (const auto& zr : s.ev().zeros()) {
                py::dict d;
                d["beta"] = zr.beta;
                d["order"] = zr.order;
                d["taylor"] = zr.taylor;
                out.append(d);
            }
            return out;
        })
        .def("m_direct", [](PySession& s, cd z) { return s.ev().m_direct(z); }, py::arg("z"),
             py::call_guard<py::gil_scoped_release>())
        .def("m_formula", [](PySession& s, cd z) { return s.ev().formula8_rhs(z); }, py::arg("z"),
             py::call_guard<py::gil_scoped_release>())
        .def("formula_parts", [](PySession& s, cd z) {
            const Formula8Parts p = s.ev().formula8_parts(z);
            py::dict d;
            d["hankel"] = p.hankel;
            d["residues"] = p.residues;
            d["h_part"] = p.h_part;
            d["m0_part"] = p.m0_part;
            d["m1_part"] = p.m1_part;
            d["corner"] = p.corner;
            d["total"] = p.total();
            return d;
        }, py::arg("z"))
        .def("fe_rhs", [](PySession& s, cd z) { return s.ev().fe_rhs(z); }, py::arg("z"))
        .def("residue_at_log_n", [](PySession& s, i64 n) { return s.ev().residue_at_log_n(n); },
             py::arg("n"), py::call_guard<py::gil_scoped_release>())
        .def("verify", [](PySession& s, const std::string& suite) {
            if (suite != "convolution" && suite != "bessel") s.ev();  // build lazily held objects under the once guards
            return run_verification(s.session_, suite).to_json();
        },
             py::arg("suite") = "all", py::call_guard<py::gil_scoped_release>(), "Run a suite and return the JSON report.");
}
