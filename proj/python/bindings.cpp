#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "subtrace/cli.hpp"
#include "subtrace/oracle.hpp"

namespace py = pybind11;
using namespace subtrace;

namespace {

// Counts are exact; hand them to python as arbitrary-precision ints.
py::int_ to_pyint(const bigint& v) {
    PyObject* p = PyLong_FromString(v.str().c_str(), nullptr, 10);
    if (!p)
        throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(p);
}

py::dict table_to_dict(const CountTable& t) {
    py::dict d;
    for (elem tt = 0; tt < t.field.q(); ++tt)
        for (elem s = 0; s < t.field.q(); ++s)
            d[py::make_tuple(tt, s)] = to_pyint(t.at(tt, s));
    return d;
}

Budget make_budget(std::uint64_t max_points, std::uint64_t max_poly) {
    Budget b;
    b.max_points = max_points;
    b.max_poly = max_poly;
    return b;
}

Budget points_budget(std::uint64_t max_points) {
    Budget b;
    b.max_points = max_points;
    return b;
}

Budget poly_budget(std::uint64_t max_poly) {
    Budget b;
    b.max_poly = max_poly;
    return b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Exact counts of monic irreducible polynomials over GF(2^k) by trace "
        "and subtrace, with brute-force oracles for verification.";

    // Specific translations first registered last: the budget exception below
    // is tried before this catch-all over the library error hierarchy.
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const DivisionByZero& e) {
            PyErr_SetString(PyExc_ZeroDivisionError, e.what());
        } catch (const InexactDivision& e) {
            PyErr_SetString(PyExc_ArithmeticError, e.what());
        } catch (const NegativeCount& e) {
            PyErr_SetString(PyExc_ArithmeticError, e.what());
        } catch (const Error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded");

    py::class_<Field>(m, "Field",
                      "GF(2^k) with elements as integer bit-vector indices.")
        .def(py::init<unsigned>(), py::arg("k"))
        .def(py::init<unsigned, std::uint32_t>(), py::arg("k"),
             py::arg("modulus"))
        .def_property_readonly("k", &Field::k)
        .def_property_readonly("q", &Field::q)
        .def_property_readonly("modulus", &Field::modulus)
        .def("add", &Field::add, py::arg("a"), py::arg("b"))
        .def("mul", &Field::mul, py::arg("a"), py::arg("b"))
        .def("inv", &Field::inv, py::arg("a"))
        .def("pow", &Field::pow, py::arg("a"), py::arg("e"))
        .def("sqrt", &Field::sqrt, py::arg("a"))
        .def("trace_to_gf2", &Field::trace_to_gf2, py::arg("a"))
        .def("canonical_character", &Field::canonical_character, py::arg("a"))
        .def("elements", &Field::elements)
        .def("pretty",
             [](const Field& f, elem a) { return elem_pretty(f, a); },
             py::arg("a"))
        .def("__eq__", &Field::operator==)
        .def("__repr__", [](const Field& f) {
            return "Field(k=" + std::to_string(f.k()) +
                   ", modulus=" + std::to_string(f.modulus()) + ")";
        });

    m.def(
        "F",
        [](const Field& f, unsigned n, elem t, elem s) {
            return to_pyint(F_dispatch(f, n, t, s));
        },
        py::arg("field"), py::arg("n"), py::arg("t"), py::arg("s"),
        "Elements of GF(q^n) with trace t and subtrace s, by the closed forms.");
    m.def(
        "Fstar",
        [](const Field& f, unsigned n, elem t, elem s) {
            return to_pyint(Fstar_closed(f, n, t, s));
        },
        py::arg("field"), py::arg("n"), py::arg("t"), py::arg("s"),
        "n-tuples over GF(q) with coordinate sum t and pairwise product sum s.");
    m.def(
        "Fstar_recursive",
        [](const Field& f, unsigned n, elem t, elem s) {
            return to_pyint(Fstar_recursive(f, n, t, s));
        },
        py::arg("field"), py::arg("n"), py::arg("t"), py::arg("s"),
        "Same tuple count through the extension recursion.");
    m.def(
        "P",
        [](const Field& f, unsigned n, elem t, elem s) {
            return to_pyint(P_count(f, n, t, s));
        },
        py::arg("field"), py::arg("n"), py::arg("t"), py::arg("s"),
        "Monic irreducibles of degree n with trace t and subtrace s.");
    m.def(
        "classical_count",
        [](const Field& f, unsigned n) { return to_pyint(classical_count(f, n)); },
        py::arg("field"), py::arg("n"),
        "Total number of monic irreducibles of degree n.");
    m.def(
        "classical_count_trace_nonzero",
        [](const Field& f, unsigned n) {
            return to_pyint(classical_count_trace_nonzero(f, n));
        },
        py::arg("field"), py::arg("n"),
        "Number of monic irreducibles of degree n with one fixed nonzero trace.");
    m.def(
        "lyndon_count",
        [](unsigned n, unsigned k) { return to_pyint(lyndon_count(n, k)); },
        py::arg("n"), py::arg("ones"),
        "Binary Lyndon words of length n with the given number of ones.");
    m.def(
        "lyndon_residue_count",
        [](unsigned n, unsigned t, unsigned s) {
            return to_pyint(lyndon_residue_count(n, t, s));
        },
        py::arg("n"), py::arg("t"), py::arg("s"),
        "GF(2) irreducible count by trace and subtrace bit via Lyndon words.");
    m.def(
        "table",
        [](const Field& f, unsigned n, const std::string& kind) {
            auto k = kind_parse(kind);
            if (!k)
                throw PreconditionViolated("kind must be F, Fstar, or P");
            return table_to_dict(make_table(f, n, *k));
        },
        py::arg("field"), py::arg("n"), py::arg("kind"),
        "Full (t, s) grid of one kind as a dict keyed by (t, s).");

    m.def(
        "oracle_F",
        [](const Field& f, unsigned n, std::uint64_t max_points,
           unsigned threads) {
            return table_to_dict(oracle_F(f, n, points_budget(max_points),
                                          threads));
        },
        py::arg("field"), py::arg("n"),
        py::arg("max_points") = std::uint64_t{1} << 20, py::arg("threads") = 1,
        "Exhaustive element sweep of GF(q^n) tallied by (trace, subtrace).");
    m.def(
        "oracle_Fstar",
        [](const Field& f, unsigned n, std::uint64_t max_points) {
            return table_to_dict(oracle_Fstar(f, n, points_budget(max_points)));
        },
        py::arg("field"), py::arg("n"),
        py::arg("max_points") = std::uint64_t{1} << 20,
        "Exhaustive tuple sweep tallied by coordinate and pair sums.");
    m.def(
        "oracle_P",
        [](const Field& f, unsigned n, std::uint64_t max_poly, unsigned threads) {
            return table_to_dict(oracle_P(f, n, poly_budget(max_poly),
                                          threads));
        },
        py::arg("field"), py::arg("n"),
        py::arg("max_poly") = std::uint64_t{1} << 22, py::arg("threads") = 1,
        "Enumerated monic irreducibles tallied by (trace, subtrace).");
    m.def(
        "enumerate_irreducibles",
        [](const Field& f, unsigned n, std::optional<elem> t,
           std::optional<elem> s, std::uint64_t max_poly, unsigned threads) {
            if (t.has_value() != s.has_value())
                throw PreconditionViolated(
                    "give both trace and subtrace or neither");
            std::optional<std::pair<elem, elem>> filter;
            if (t)
                filter = std::pair{*t, *s};
            std::vector<std::string> out;
            for (const Poly& p : enumerate_monic_irreducibles(
                     f, n, filter, poly_budget(max_poly), threads))
                out.push_back(poly_to_string(p));
            return out;
        },
        py::arg("field"), py::arg("n"), py::arg("t") = std::nullopt,
        py::arg("s") = std::nullopt,
        py::arg("max_poly") = std::uint64_t{1} << 22, py::arg("threads") = 1,
        "Monic irreducibles of degree n in ascending index order, rendered as "
        "strings; optionally filtered by trace and subtrace.");
    m.def(
        "element_trace_subtrace",
        [](const Field& f, unsigned n, std::uint64_t index) {
            ExtField E(f, n);
            ExtElem a = E.from_index(bigint(index));
            return py::make_tuple(E.trace(a), E.subtrace(a));
        },
        py::arg("field"), py::arg("n"), py::arg("index"),
        "Trace and subtrace of the GF(q^n) element with the given index.");

    m.def(
        "verify_json",
        [](unsigned max_k, std::uint64_t max_points, std::uint64_t max_poly,
           unsigned threads) {
            return verify_grid(max_k, make_budget(max_points, max_poly), threads)
                .to_json()
                .dump();
        },
        py::arg("max_k") = 4, py::arg("max_points") = std::uint64_t{1} << 20,
        py::arg("max_poly") = std::uint64_t{1} << 22, py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>(),
        "Cross-check report over the budgeted (q, n) grid as a JSON string.");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"),
        "Run the command line front end; returns (exit_code, stdout, stderr).");
}
