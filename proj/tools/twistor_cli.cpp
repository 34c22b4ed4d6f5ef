// twistor-cli: command-line front end to the twistor library.
#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <random>
#include <sstream>

#include "twistor/cli.hpp"
#include "twistor/floer.hpp"

using namespace twistor;
using nlohmann::json;

namespace {

struct Options {
    std::string base = "B0";
    std::string format = "text";
    unsigned seed = 20240601;
};

PDAlgebra load_base(const std::string& spec) {
    for (auto n : {"B0", "B1", "Bodd", "B4"})
        if (spec == n) return sample_model(spec);
    return load_model(spec);
}

bool structured(const Options& o) { return o.format == "structured"; }

json tensor_json(const PDAlgebra& A, const TensorElement& T) {
    json terms = json::array();
    for (auto& [idx, c] : T.terms) {
        json f = json::array();
        for (auto i : idx) f.push_back(A.labels[i]);
        terms.push_back({{"coefficient", c.str()}, {"factors", f}});
    }
    return terms;
}

json element_json(const PDAlgebra& A, const AlgebraElement& a) {
    json j = json::object();
    for (std::size_t i = 0; i < A.dim(); ++i)
        if (!a.c[i].is_zero()) j[A.labels[i]] = a.c[i].str();
    return j;
}

json matrix_json(const PolyMatrix& m) {
    json rows = json::array();
    for (auto& r : m) {
        json row = json::array();
        for (auto& x : r) row.push_back(x.str());
        rows.push_back(row);
    }
    return rows;
}

int cmd_fibre_integral(const Options& o, const std::string& bundle, const std::string& cls, int table) {
    BundleDescriptor bd = builtin_bundle(bundle);
    if (table >= 0) {
        auto rows = fibre_integral_table(bd, table);
        if (structured(o)) {
            json j = json::array();
            for (auto& r : rows) j.push_back({{"class", r.monomial.str()}, {"value", r.value.str()}});
            std::cout << json{{"bundle", bundle}, {"table", j}}.dump(2) << "\n";
        } else {
            for (auto& r : rows) std::cout << r.monomial.str() << " -> " << r.value.str() << "\n";
            std::cout << "via: Borel-Hirzebruch pushforward, Weyl antisymmetrization with Todd correction\n";
        }
        return 0;
    }
    Poly x = parse_poly(cls);
    Poly v = iota_push(x, bd);
    if (structured(o))
        std::cout << json{{"bundle", bundle}, {"class", x.str()}, {"value", v.str()}}.dump(2) << "\n";
    else
        std::cout << v.str() << "\n"
                  << "via: Borel-Hirzebruch pushforward, Weyl antisymmetrization with Todd correction\n";
    return 0;
}

int cmd_ring(const Options& o, const std::string& space, int n) {
    PDAlgebra base = load_base(o.base);
    validate(base);
    const PDAlgebra* A = nullptr;
    std::vector<std::pair<std::string, std::string>> gens, rels;
    std::unique_ptr<TwistorRing> Z;
    std::unique_ptr<LinesRing> L;
    if (space == "Z") {
        Z = std::make_unique<TwistorRing>(build_twistor_ring(base, n));
        A = &Z->alg();
        gens.push_back({"h", "c1(H)"});
        rels.push_back({"h^" + std::to_string(n + 1), A->str(A->pow(Z->h, n + 1))});
        rels.push_back({"c2", A->str(Z->c2)});
        if (n == 3) rels.push_back({"c3", A->str(Z->c3)});
    } else if (space == "L") {
        L = std::make_unique<LinesRing>(build_lines_ring(base, n));
        A = &L->alg();
        gens.push_back({"e", "Euler class of the SO(4) bundle"});
        gens.push_back({"t", "c1 of the U(1) bundle"});
        rels.push_back({"e^2 - t^4", A->str(A->mul(L->e, L->e) - A->pow(L->t, 4))});
        rels.push_back({"e*t", A->str(A->mul(L->e, L->t))});
    } else {
        throw std::invalid_argument("--space must be Z or L");
    }
    PolyMatrix g = A->pairing();
    if (structured(o)) {
        json j = json::parse(model_to_json(*A));
        json jg = json::object(), jr = json::object();
        for (auto& [k, v] : gens) jg[k] = v;
        for (auto& [k, v] : rels) jr[k] = v;
        j["generators"] = jg;
        j["relations"] = jr;
        j["pairing"] = matrix_json(g);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << A->name << " (" << A->dim() << " classes, top degree " << A->top_degree << ")\n";
    std::cout << "basis:";
    for (std::size_t i = 0; i < A->dim(); ++i) std::cout << " " << A->labels[i] << "[" << A->degrees[i] << "]";
    std::cout << "\ngenerators:\n";
    for (auto& [k, v] : gens) std::cout << "  " << k << " = " << v << "\n";
    std::cout << "relations (solved from fibre integrals):\n";
    for (auto& [k, v] : rels) std::cout << "  " << k << " = " << v << "\n";
    std::cout << "pairing:\n" << matrix_str(g);
    return 0;
}

int cmd_diagonal(const Options& o, const std::string& space, int k) {
    PDAlgebra base = load_base(o.base);
    validate(base);
    std::unique_ptr<TwistorRing> Z;
    std::unique_ptr<LinesRing> L;
    const PDAlgebra* A = &base;
    TensorElement expected;
    bool have_expected = false;
    if (space == "Z") {
        Z = std::make_unique<TwistorRing>(build_twistor_ring(base, 3));
        A = &Z->alg();
        if (k == 2 || k == 3) expected = expected_diagonal_Z(*Z, k), have_expected = true;
    } else if (space == "L") {
        L = std::make_unique<LinesRing>(build_lines_ring(base, 3));
        A = &L->alg();
        if (k == 2 || k == 3) expected = expected_diagonal_L(*L, k), have_expected = true;
    } else if (space != "base") {
        throw std::invalid_argument("--space must be Z, L or base");
    }
    TensorElement d = poincare_amplitudes(*A, k);
    if (structured(o)) {
        json j{{"space", space}, {"k", k}, {"terms", tensor_json(*A, d)}};
        if (have_expected) {
            j["matches_closed_form"] = d == expected;
            if (d != expected) j["computed_minus_closed_form"] = tensor_json(*A, d - expected);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << tensor_str(*A, d) << "\n";
    if (have_expected) {
        std::cout << "closed form: " << (d == expected ? "agrees" : "DIFFERS") << "\n";
        if (d != expected) std::cout << "computed minus closed form:\n" << tensor_str(*A, d - expected) << "\n";
    }
    std::cout << "via: diagonal recursion Delta^{k+1} = (id^{k-1} (x) Delta^2) Delta^k\n";
    return 0;
}

int cmd_gw(const Options& o, int n, int k) {
    std::string bspec = o.base;
    if (n == 2 && bspec == "B0") bspec = "B4";
    PDAlgebra base = load_base(bspec);
    validate(base);
    std::unique_ptr<TwistorRing> Z = std::make_unique<TwistorRing>(build_twistor_ring(base, n));
    GWClass g;
    TensorElement expected;
    if (n == 3) {
        LinesRing L = build_lines_ring(base, 3);
        g = gw_class_n3(*Z, L, k);
        expected = expected_gw_n3(*Z, k);
    } else {
        g = gw_class_n2(*Z, k);
        expected = expected_gw_n2(*Z, k);
    }
    const PDAlgebra& A = Z->alg();
    int deg = tensor_degree(A, g.value);
    if (structured(o)) {
        std::cout << json{{"n", n},
                          {"k", k},
                          {"m", 1},
                          {"degree", deg},
                          {"expected_degree", g.expected_degree()},
                          {"terms", tensor_json(A, g.value)},
                          {"matches_closed_form", g.value == expected}}
                         .dump(2)
                  << "\n";
        return 0;
    }
    std::cout << tensor_str(A, g.value) << "\n";
    std::cout << "degree " << deg << " (expected " << g.expected_degree() << ")\n";
    std::cout << "closed form: " << (g.value == expected ? "agrees" : "DIFFERS") << "\n";
    std::cout << "via: obstruction-bundle algorithm over the moduli of twistor lines\n";
    return 0;
}

int cmd_quantum(const Options& o, const std::string& a, const std::string& b) {
    PDAlgebra base = load_base(o.base);
    validate(base);
    QuantumRing Q(base);
    ClassContext ctx = twistor_context(Q.Z());
    ctx.alg = &Q.alg();
    AlgebraElement x = parse_class_expr(a, ctx), y = parse_class_expr(b, ctx);
    NovikovElement r = Q.mul(NovikovElement::from_flat(x), NovikovElement::from_flat(y));
    if (structured(o)) {
        json j = json::object();
        for (auto& [p, v] : r.terms) j["q^" + std::to_string(p)] = element_json(Q.alg(), v);
        std::cout << json{{"a", a}, {"b", b}, {"product", j}}.dump(2) << "\n";
        return 0;
    }
    if (r.terms.empty()) std::cout << "0\n";
    for (auto& [p, v] : r.terms) std::cout << "q^" << p << ": " << Q.alg().str(v) << "\n";
    std::cout << "via: small quantum product with the degree-1 three-point class\n";
    return 0;
}

int cmd_spectrum(const Options& o, const std::string& qs, const std::string& chis, bool symbolic) {
    PDAlgebra base = load_base(o.base);
    validate(base);
    int D = static_cast<int>(base.dim());
    if (symbolic || (qs.empty() && chis.empty())) {
        QuantumRing Q(base);
        PolyMatrix m = Q.c1_matrix();
        Poly cp = char_poly(m);
        Poly disp = displayed_char_poly(D, base.chi);
        Poly block = Q.block_reading_char_poly();
        bool ch = is_zero_matrix(eval_matrix_poly(cp, m));
        if (structured(o)) {
            std::cout << json{{"D", D},
                              {"c1_matrix_quantum_basis", matrix_json(Q.c1_matrix_alpha())},
                              {"char_poly", cp.str()},
                              {"displayed", disp.str()},
                              {"agrees_with_display", cp == disp},
                              {"block_reading", block.str()},
                              {"cayley_hamilton", ch}}
                             .dump(2)
                      << "\n";
            return 0;
        }
        std::cout << "c1 matrix (basis alpha^i * tau*y):\n" << matrix_str(Q.c1_matrix_alpha());
        std::cout << "characteristic polynomial: " << cp.str() << "\n";
        std::cout << "displayed product:         " << disp.str() << "\n";
        std::cout << "agreement: " << (cp == disp ? "yes" : "no") << "\n";
        std::cout << "block reading:             " << block.str() << "\n";
        std::cout << "Cayley-Hamilton: " << (ch ? "holds" : "FAILS") << "\n";
        return 0;
    }
    auto to_double = [](const std::string& s) {
        Poly p = parse_poly(s);
        if (!p.is_constant()) throw ParseError("expected a rational number", 0);
        return p.constant_term().get_d();
    };
    Spectrum sp = numeric_spectrum(to_double(qs.empty() ? "1" : qs), to_double(chis.empty() ? "0" : chis), D);
    if (structured(o)) {
        json roots = json::array();
        for (auto& r : sp.roots)
            roots.push_back({{"re", r.value.real()},
                             {"im", r.value.imag()},
                             {"multiplicity", r.multiplicity},
                             {"residual", r.residual},
                             {"factor", r.factor}});
        std::cout << json{{"D", D}, {"roots", roots}}.dump(2) << "\n";
        return 0;
    }
    std::cout.precision(15);
    for (auto& r : sp.roots)
        std::cout << r.factor << " factor: " << r.value.real() << (r.value.imag() < 0 ? " - " : " + ")
                  << std::abs(r.value.imag()) << "i  x" << r.multiplicity << "  residual " << r.residual << "\n";
    return 0;
}

int cmd_floer_m0(const Options& o) {
    M0Result m = m0_coefficient();
    if (structured(o)) {
        std::cout << json{{"m0", m.coefficient.str()},
                          {"sign", "+-"},
                          {"fibre_integral", m.fibre_integral.str()},
                          {"squared", m.squared.str()}}
                         .dump(2)
                  << "\n";
        return 0;
    }
    std::cout << "m0 = +-" << m.coefficient.str() << " [L]  (sign fixed by the spin structure)\n";
    std::cout << "fibre integral of the SO(2) Euler class along SO(3)/SO(2): " << m.fibre_integral.str() << "\n";
    std::cout << "(2t)^2 with t^2 -> q: " << m.squared.str() << "\n";
    return 0;
}

int cmd_floer_e1(const Options& o, int b) {
    HFReport h = hf_report(b);
    const E1Page& e = h.page;
    if (structured(o)) {
        json rows = json::array();
        for (std::size_t r = 0; r < e.ranks.size(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < 4; ++c) row.push_back(e.cell(r, c));
            rows.push_back(row);
        }
        std::cout << json{{"b1", b},
                          {"betti", e.betti},
                          {"rows", rows},
                          {"rank_over_t", e.rank_over_t},
                          {"rank_over_q", e.rank_over_q},
                          {"claim", h.claim},
                          {"status", h.status}}
                         .dump(2)
                  << "\n";
        return 0;
    }
    std::cout << "Betti numbers of L:";
    for (int x : e.betti) std::cout << " " << x;
    std::cout << "\nE1 page (columns t^3, t^2, t, 1):\n";
    for (std::size_t r = 0; r < e.ranks.size(); ++r) {
        for (std::size_t c = 0; c < 4; ++c) std::cout << (c ? "\t" : "") << e.cell(r, c);
        std::cout << "\n";
    }
    std::cout << "rank over C[t]: " << e.rank_over_t << ", over C[q]: " << e.rank_over_q << "\n";
    std::cout << h.claim << "  [" << h.status << "]\n";
    return 0;
}

int random_properties(unsigned seed, int cases) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(-5, 5), ex(0, 3), nterms(1, 6);
    auto rand_poly = [&] {
        Poly p;
        for (int i = nterms(rng); i > 0; --i) {
            Poly m(coef(rng));
            for (int v = 1; v <= 3; ++v) m *= Poly::root(v).pow(ex(rng));
            p += m;
        }
        return p;
    };
    int fails = 0;
    for (int i = 0; i < cases; ++i) {
        Poly a = rand_poly(), b = rand_poly(), c = rand_poly();
        if ((a * b) * c != a * (b * c) || a * (b + c) != a * b + a * c) ++fails;
        if (!b.is_zero() && exact_divide(a * b, b) != a) ++fails;
    }
    return fails;
}

int cmd_golden(const Options& o, int property_cases) {
    auto checks = run_golden_suite();
    int failed = 0;
    for (auto& c : checks) failed += !c.pass;
    int prop_fail = property_cases > 0 ? random_properties(o.seed, property_cases) : 0;
    if (structured(o)) {
        json j = json::array();
        for (auto& c : checks)
            j.push_back({{"group", c.group}, {"anchor", c.anchor}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        std::cout << json{{"checks", j},
                          {"failed", failed},
                          {"property_cases", property_cases},
                          {"property_failures", prop_fail},
                          {"seed", o.seed}}
                         .dump(2)
                  << "\n";
    } else {
        for (auto& c : checks) {
            std::cout << (c.pass ? "PASS " : "FAIL ") << "[" << c.group << "] " << c.name << "  (" << c.anchor << ")\n";
            if (!c.pass && !c.detail.empty()) {
                std::istringstream is(c.detail);
                for (std::string line; std::getline(is, line);) std::cout << "      " << line << "\n";
            }
        }
        std::cout << checks.size() - failed << "/" << checks.size() << " golden checks pass";
        if (property_cases > 0) std::cout << "; " << property_cases << " random cases (seed " << o.seed << "), " << prop_fail << " failures";
        std::cout << "\n";
    }
    return failed || prop_fail ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact cohomology and quantum cohomology of twistor spaces of hyperbolic manifolds"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--base", o.base, "base model file, or one of B0, B1, Bodd, B4")->capture_default_str();
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "structured"}))->capture_default_str();
    app.add_option("--seed", o.seed, "seed for randomized checks")->capture_default_str();

    std::string bundle = "so6_u3", cls, space = "Z", qa, qb, qv, chiv;
    int table = -1, n = 3, k = 2, b1 = 1, props = 0;
    bool symbolic = false;

    auto* fi = app.add_subcommand("fibre-integral", "push a class forward along a homogeneous bundle");
    fi->add_option("--bundle", bundle)->check(CLI::IsMember(builtin_bundle_names()))->capture_default_str();
    fi->add_option("--class", cls, "polynomial in the bundle's generators");
    fi->add_option("--table", table, "list every generator monomial up to this degree");

    auto* ring = app.add_subcommand("ring", "cohomology ring of Z or of the line moduli space");
    ring->add_option("--space", space)->check(CLI::IsMember({"Z", "L"}))->capture_default_str();
    ring->add_option("--n", n)->check(CLI::IsMember({2, 3}))->capture_default_str();

    auto* diag = app.add_subcommand("diagonal", "Poincare amplitudes of the k-fold diagonal");
    diag->add_option("--space", space)->check(CLI::IsMember({"Z", "L", "base"}))->capture_default_str();
    diag->add_option("--k", k)->check(CLI::Range(1, 4))->capture_default_str();

    auto* gw = app.add_subcommand("gw", "degree-1 Gromov-Witten class");
    gw->add_option("--n", n)->check(CLI::IsMember({2, 3}))->capture_default_str();
    gw->add_option("--k", k)->check(CLI::Range(1, 3))->capture_default_str();

    auto* qu = app.add_subcommand("quantum", "quantum product of two classes on Z (n = 3)");
    qu->add_option("--a", qa)->required();
    qu->add_option("--b", qb)->required();

    auto* spec = app.add_subcommand("spectrum", "characteristic polynomial and eigenvalues of c1");
    spec->add_option("--q", qv);
    spec->add_option("--chi", chiv);
    spec->add_flag("--symbolic", symbolic);

    auto* m0 = app.add_subcommand("floer-m0", "obstruction term of a Reznikov Lagrangian");
    auto* e1 = app.add_subcommand("floer-e1", "E1 page of the pearl spectral sequence");
    e1->add_option("--b1", b1)->check(CLI::NonNegativeNumber)->capture_default_str();

    auto* golden = app.add_subcommand("golden", "run the catalogue of exact checks");
    golden->add_option("--properties", props, "number of randomized ring-axiom cases")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*fi) {
            if (cls.empty() && table < 0) throw std::invalid_argument("give --class or --table");
            return cmd_fibre_integral(o, bundle, cls, table);
        }
        if (*ring) return cmd_ring(o, space, n);
        if (*diag) return cmd_diagonal(o, space, k);
        if (*gw) return cmd_gw(o, n, k);
        if (*qu) return cmd_quantum(o, qa, qb);
        if (*spec) return cmd_spectrum(o, qv, chiv, symbolic);
        if (*m0) return cmd_floer_m0(o);
        if (*e1) return cmd_floer_e1(o, b1);
        if (*golden) return cmd_golden(o, props);
    } catch (const ValidationFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const MathError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
