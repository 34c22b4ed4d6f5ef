#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twistor/cli.hpp"
#include "twistor/floer.hpp"

namespace py = pybind11;
using namespace twistor;

namespace {

PDAlgebra load_base(const std::string& spec) {
    for (auto n : {"B0", "B1", "Bodd", "B4"})
        if (spec == n) return sample_model(spec);
    return load_model(spec);
}

py::list tensor_terms(const PDAlgebra& A, const TensorElement& T) {
    py::list out;
    for (auto& [idx, c] : T.terms) {
        py::list f;
        for (auto i : idx) f.append(A.labels[i]);
        out.append(py::make_tuple(c.str(), f));
    }
    return out;
}

py::dict element_dict(const PDAlgebra& A, const AlgebraElement& a) {
    py::dict d;
    for (std::size_t i = 0; i < A.dim(); ++i)
        if (!a.c[i].is_zero()) d[py::str(A.labels[i])] = a.c[i].str();
    return d;
}

const PDAlgebra& space_alg(const std::string& space, std::unique_ptr<TwistorRing>& Z, std::unique_ptr<LinesRing>& L,
                           const PDAlgebra& base) {
    if (space == "Z") {
        Z = std::make_unique<TwistorRing>(build_twistor_ring(base, 3));
        return Z->alg();
    }
    if (space == "L") {
        L = std::make_unique<LinesRing>(build_lines_ring(base, 3));
        return L->alg();
    }
    if (space == "base") return base;
    throw std::invalid_argument("space must be Z, L or base");
}

}  // namespace

PYBIND11_MODULE(_twistor, m) {
    m.doc() = "Exact cohomology and quantum cohomology of twistor spaces";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationFailure>(m, "ValidationFailure", PyExc_ValueError);
    py::register_exception<NonConvergence>(m, "NonConvergence", PyExc_ArithmeticError);
    py::register_exception<MathError>(m, "MathError", PyExc_ArithmeticError);

    m.def("simplify", [](const std::string& p) { return parse_poly(p).str(); }, py::arg("poly"),
          "Canonical form of a polynomial expression.");
    m.def("bundles", &builtin_bundle_names);
    m.def(
        "fibre_integral", [](const std::string& bundle, const std::string& cls) {
            return iota_push(parse_poly(cls), builtin_bundle(bundle)).str();
        },
        py::arg("bundle"), py::arg("cls"));
    m.def(
        "fibre_integral_table",
        [](const std::string& bundle, int max_degree) {
            std::vector<std::pair<std::string, std::string>> out;
            for (auto& r : fibre_integral_table(builtin_bundle(bundle), max_degree))
                out.emplace_back(r.monomial.str(), r.value.str());
            return out;
        },
        py::arg("bundle"), py::arg("max_degree"));

    m.def("model_json", [](const std::string& base) { return model_to_json(load_base(base)); }, py::arg("base"));
    m.def(
        "ring_json",
        [](const std::string& space, const std::string& base) {
            PDAlgebra B = load_base(base);
            std::unique_ptr<TwistorRing> Z;
            std::unique_ptr<LinesRing> L;
            return model_to_json(space_alg(space, Z, L, B));
        },
        py::arg("space"), py::arg("base") = "B0");
    m.def(
        "validate",
        [](const std::string& json_text) {
            ValidationReport r = validate_report(parse_model(json_text));
            py::dict d;
            d["ok"] = r.ok;
            d["failures"] = r.failures;
            d["betti"] = r.betti;
            d["euler_characteristic"] = r.euler_characteristic;
            return d;
        },
        py::arg("json_text"));

    m.def(
        "diagonal",
        [](const std::string& space, int k, const std::string& base) {
            PDAlgebra B = load_base(base);
            std::unique_ptr<TwistorRing> Z;
            std::unique_ptr<LinesRing> L;
            const PDAlgebra& A = space_alg(space, Z, L, B);
            return tensor_terms(A, poincare_amplitudes(A, k));
        },
        py::arg("space"), py::arg("k"), py::arg("base") = "B0");

    m.def(
        "gw_class",
        [](int n, int k, const std::string& base) {
            PDAlgebra B = load_base(base);
            TwistorRing Z = build_twistor_ring(B, n);
            GWClass g = n == 3 ? gw_class_n3(Z, build_lines_ring(B, 3), k) : gw_class_n2(Z, k);
            py::dict d;
            d["terms"] = tensor_terms(Z.alg(), g.value);
            d["degree"] = tensor_degree(Z.alg(), g.value);
            d["expected_degree"] = g.expected_degree();
            return d;
        },
        py::arg("n"), py::arg("k"), py::arg("base") = "B0");

    m.def("contributing_degrees", [](int k) { return contributing_degrees(k); }, py::arg("k"));

    py::class_<QuantumRing>(m, "QuantumRing")
        .def(py::init([](const std::string& base) { return new QuantumRing(load_base(base)); }),
             py::arg("base") = "B0")
        .def("labels", [](const QuantumRing& Q) { return Q.alg().labels; })
        .def(
            "mul",
            [](const QuantumRing& Q, const std::string& a, const std::string& b) {
                ClassContext ctx = twistor_context(Q.Z());
                NovikovElement r = Q.mul(NovikovElement::from_flat(parse_class_expr(a, ctx)),
                                         NovikovElement::from_flat(parse_class_expr(b, ctx)));
                py::dict d;
                for (auto& [p, v] : r.terms) d[py::int_(p)] = element_dict(Q.alg(), v);
                return d;
            },
            py::arg("a"), py::arg("b"))
        .def("char_poly", [](const QuantumRing& Q) { return char_poly(Q.c1_matrix()).str(); })
        .def("block_reading_char_poly", [](const QuantumRing& Q) { return Q.block_reading_char_poly().str(); })
        .def("cayley_hamilton", [](const QuantumRing& Q) {
            PolyMatrix m = Q.c1_matrix();
            return is_zero_matrix(eval_matrix_poly(char_poly(m), m));
        });

    m.def("displayed_char_poly", [](int D) { return displayed_char_poly(D, Poly::var("chi")).str(); }, py::arg("D"));
    m.def(
        "numeric_spectrum",
        [](double q, double chi, int D) {
            py::list out;
            for (auto& r : numeric_spectrum(q, chi, D).roots) {
                py::dict d;
                d["value"] = r.value;
                d["multiplicity"] = r.multiplicity;
                d["residual"] = r.residual;
                d["factor"] = r.factor;
                out.append(d);
            }
            return out;
        },
        py::arg("q"), py::arg("chi"), py::arg("D"));

    m.def("m0", [] {
        M0Result r = m0_coefficient();
        py::dict d;
        d["coefficient"] = r.coefficient.str();
        d["both_signs"] = r.both_signs;
        d["squared"] = r.squared.str();
        return d;
    });
    m.def(
        "e1_page",
        [](int b) {
            E1Page e = e1_page(b);
            py::dict d;
            d["betti"] = e.betti;
            d["ranks"] = e.ranks;
            d["rank_over_t"] = e.rank_over_t;
            d["rank_over_q"] = e.rank_over_q;
            return d;
        },
        py::arg("b1"));

    m.def("golden", [] {
        py::list out;
        for (auto& c : run_golden_suite()) {
            py::dict d;
            d["group"] = c.group;
            d["anchor"] = c.anchor;
            d["name"] = c.name;
            d["pass"] = c.pass;
            out.append(d);
        }
        return out;
    });
}
