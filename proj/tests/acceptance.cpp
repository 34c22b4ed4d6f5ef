// Acceptance run: one PASS/FAIL line per criterion.
// Exit status is 0 when every failure is a documented discrepancy.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "twistor/cli.hpp"
#include "twistor/floer.hpp"

using namespace twistor;

namespace {

struct Verdict {
    bool pass = true;
    bool documented = false;  // failure explained in the decisions ledger
    std::string note;
    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            note += (note.empty() ? "" : "; ") + what;
        }
    }
};

Verdict fibre_table() {
    Verdict v;
    auto bd = builtin_bundle("so6_u3");
    std::vector<std::pair<std::string, std::string>> t{
        {"c1^3", "8"},     {"c2*c1", "4"},      {"c1^4", "0"},      {"c2*c1^2", "0"},
        {"c1^5", "16*p1"}, {"c2*c1^3", "4*p1"}, {"c1^6", "64*chi"}, {"c2*c1^4", "32*chi"}};
    for (auto& [x, val] : t) v.check(iota_push(parse_poly(x), bd) == parse_poly(val), x);
    return v;
}

Verdict lines_integrals() {
    Verdict v;
    auto bd = builtin_bundle("so6_so4xso2");
    for (auto& [x, val] : std::vector<std::pair<std::string, std::string>>{
             {"t^4", "2"}, {"e^2", "2"}, {"t^6", "2*p1"}, {"e*t^5", "2*chi"}, {"e^3*t", "2*chi"}})
        v.check(iota_push(parse_poly(x), bd) == parse_poly(val), x);
    return v;
}

Verdict ev_table() {
    Verdict v;
    TwistorRing Z = build_twistor_ring(sample_model("B0"), 3);
    ClassContext ctx = twistor_context(Z);
    std::vector<std::tuple<std::string, std::string, std::string>> t{
        {"cB1^2", "1", "1"},           {"cB1^3", "c1", "h"},           {"cB1^4", "c1^2 - c2", "h^2/2"},
        {"cA2", "1", "1"},             {"cA2*cB1", "0", "0"},          {"cA2*cB1^2", "0", "0"},
        {"cA2*cB1^3", "c3", "tau*chi"}, {"cA2*cB1^4", "c1*c3", "h*tau*chi"}, {"cA2^2", "c2", "h^2/2"}};
    for (auto& [x, uni, onz] : t) {
        v.check(ev_push_universal(parse_poly(x)) == parse_poly(uni), x + " universal");
        v.check(ev_push(Z, parse_poly(x)) == parse_class_expr(onz, ctx), x + " on Z");
    }
    v.check(Z.alg().mul(Z.h, Z.h) - Z.c2 == Z.c2, "c1^2 - c2 = c2");
    return v;
}

Verdict ring_presentations() {
    Verdict v;
    for (auto name : {"B0", "B1", "Bodd"}) {
        std::string tag = std::string(" over ") + name;
        TwistorRing Z = build_twistor_ring(sample_model(name), 3);
        const PDAlgebra& A = Z.alg();
        v.check(A.pow(Z.h, 4) == Poly(8) * A.mul(Z.h, Z.tau_chi), "h^4" + tag);
        v.check(Z.c2 == Poly(Rational(1, 2)) * A.mul(Z.h, Z.h), "c2" + tag);
        v.check(Z.c3 == Z.tau_chi, "c3" + tag);
        LinesRing L = build_lines_ring(sample_model(name), 3);
        const PDAlgebra& LA = L.alg();
        v.check(LA.mul(L.e, L.e) == LA.pow(L.t, 4), "e^2" + tag);
        v.check(LA.mul(L.e, L.t) == L.lambda_chi, "et" + tag);
    }
    return v;
}

bool diagonal_property(const PDAlgebra& A, int k) {
    TensorElement d = poincare_amplitudes(A, k);
    std::vector<std::size_t> idx(k, 0);
    for (;;) {
        std::vector<AlgebraElement> f;
        AlgebraElement prod = A.one();
        for (auto i : idx) {
            f.push_back(A.basis(i));
            prod = A.mul(prod, A.basis(i));
        }
        if (tensor_integrate(A, d, f) != A.integrate(prod)) return false;
        int p = 0;
        while (p < k && ++idx[p] == A.dim()) idx[p++] = 0;
        if (p == k) return true;
    }
}

Verdict diagonals() {
    Verdict v;
    PDAlgebra B0 = sample_model("B0");
    TwistorRing Z = build_twistor_ring(B0, 3);
    LinesRing L = build_lines_ring(B0, 3);
    for (int k : {2, 3}) v.check(poincare_amplitudes(Z.alg(), k) == expected_diagonal_Z(Z, k), "Z k=" + std::to_string(k));
    v.check(poincare_amplitudes(L.alg(), 2) == expected_diagonal_L(L, 2), "L k=2");
    TensorElement diff = poincare_amplitudes(L.alg(), 3) - expected_diagonal_L(L, 3);
    if (!diff.is_zero()) {
        v.check(false, "L k=3: computed minus displayed is (chi-1)/4 on " + std::to_string(diff.terms.size()) +
                           " e (x) t^i (x) t^(3-i) (x) vol terms");
        v.documented = true;
    }
    bool prop = true;
    for (auto name : {"B0", "B1", "Bodd", "B4"})
        for (int k : {2, 3}) prop = prop && diagonal_property(sample_model(name), k);
    for (int k : {2, 3}) prop = prop && diagonal_property(Z.alg(), k) && diagonal_property(L.alg(), k);
    if (!prop) v.documented = false;
    v.check(prop, "defining property");
    return v;
}

Verdict gw_classes() {
    Verdict v;
    TwistorRing Z2 = build_twistor_ring(sample_model("B4"), 2);
    for (int k = 1; k <= 3; ++k) v.check(gw_class_n2(Z2, k).value == expected_gw_n2(Z2, k), "n=2 k=" + std::to_string(k));
    for (auto name : {"B0", "B1"}) {
        TwistorRing Z = build_twistor_ring(sample_model(name), 3);
        LinesRing L = build_lines_ring(sample_model(name), 3);
        for (int k = 1; k <= 3; ++k)
            v.check(gw_class_n3(Z, L, k).value == expected_gw_n3(Z, k),
                    std::string("n=3 k=") + std::to_string(k) + " over " + name);
    }
    return v;
}

Verdict quantum_ring() {
    Verdict v;
    bool sign_only = true;
    for (auto name : {"B0", "B1"}) {
        QuantumRing Q(sample_model(name));
        const PDAlgebra& A = Q.alg();
        Poly q = quantum_q();
        AlgebraElement al = Q.alpha(), h = Q.Z().h, one = A.one();
        std::string tag = std::string(" over ") + name;
        bool i1 = Q.mul(al, al) - Poly(4) * q * one == A.mul(h, h);
        v.check(i1, "identity 1" + tag);
        sign_only = sign_only && i1;
        AlgebraElement rhs4 = Poly(8) * A.mul(al, Q.Z().tau_chi) + Poly(8) * q * Q.pow(al, 2) - Poly(16) * q * q * one;
        bool i2 = Q.pow(al, 3) - Poly(4) * q * al == A.pow(h, 3);
        bool i3 = Q.pow(al, 4) == rhs4;
        v.check(i2, "identity 2" + tag);
        v.check(i3, "identity 3" + tag);
        // the same identities with alpha = +c1(H)
        AlgebraElement ap = h;
        sign_only = sign_only && Q.mul(ap, ap) - Poly(4) * q * one == A.mul(h, h) &&
                    Q.pow(ap, 3) - Poly(4) * q * ap == A.pow(h, 3) &&
                    Q.pow(ap, 4) == Poly(8) * A.mul(ap, Q.Z().tau_chi) + Poly(8) * q * Q.pow(ap, 2) - Poly(16) * q * q * one;
        bool assoc = true;
        for (std::size_t i = 0; i < A.dim() && assoc; ++i)
            for (std::size_t j = 0; j < A.dim() && assoc; ++j) {
                AlgebraElement ij = Q.mul(A.basis(i), A.basis(j));
                for (std::size_t k = 0; k < A.dim(); ++k)
                    if (Q.mul(ij, A.basis(k)) != Q.mul(A.basis(i), Q.mul(A.basis(j), A.basis(k)))) assoc = false;
            }
        if (!assoc) sign_only = false;
        v.check(assoc, "associativity" + tag);
    }
    if (!v.pass && sign_only) {
        v.documented = true;
        v.note += " (all three hold with alpha = +c1(H); alpha = -c1(H) flips the odd-degree terms)";
    }
    return v;
}

Verdict spectrum() {
    Verdict v;
    std::ostringstream art;
    for (auto name : {"B0", "B1"}) {
        PDAlgebra B = sample_model(name);
        QuantumRing Q(B);
        PolyMatrix m = Q.c1_matrix();
        Poly cp = char_poly(m);
        Poly disp = displayed_char_poly(static_cast<int>(B.dim()), B.chi);
        v.check(is_zero_matrix(eval_matrix_poly(cp, m)), std::string("Cayley-Hamilton over ") + name);
        if (cp != disp) {
            Poly l = lambda_var(), q = quantum_q();
            bool pure = cp == (l * l - Poly(4) * q).pow(2 * static_cast<int>(B.dim()));
            art << (art.str().empty() ? "" : "; ") << "D=" << B.dim() << ": exact polynomial "
                << (pure ? "(lambda^2-4q)^" + std::to_string(2 * B.dim()) : cp.str()) << " differs from the display";
        }
    }
    for (int D : {2, 4}) {
        try {
            Spectrum s0 = numeric_spectrum(1, 0, D);
            int total = 0;
            bool ok = true;
            for (auto& r : s0.roots) {
                ok = ok && std::abs(std::abs(r.value) - 2) < 1e-9 && r.residual < 1e-9;
                total += r.multiplicity;
            }
            v.check(ok && total == 4 * D, "q=1 chi=0 D=" + std::to_string(D));
            Spectrum s2 = numeric_spectrum(1, -2, D);
            int second = 0, exotic = 0;
            ok = true;
            for (auto& r : s2.roots) {
                ok = ok && r.residual < 1e-9;
                if (r.factor == "second") {
                    ok = ok && std::abs(std::abs(r.value) - 2) < 1e-9 && r.multiplicity == 2 * (D - 1);
                    second += r.multiplicity;
                } else {
                    exotic += r.multiplicity;
                }
            }
            v.check(ok && second == 4 * (D - 1) && exotic == 4, "q=1 chi=-2 D=" + std::to_string(D));
        } catch (const NonConvergence&) {
            v.check(false, "non-convergence at D=" + std::to_string(D));
        }
    }
    if (v.pass && !art.str().empty()) v.note = "reported artifact: " + art.str();
    return v;
}

Verdict floer() {
    Verdict v;
    M0Result m = m0_coefficient();
    v.check(m.coefficient == parse_poly("2*t") && m.both_signs, "m0 = +-2t");
    v.check(m.squared == parse_poly("4*q"), "(2t)^2 -> 4q");
    Spectrum s = numeric_spectrum(1, 0, 2);
    for (auto& r : s.roots) v.check(std::abs(r.value.real() * r.value.real() - 4) < 1e-9, "eigenvalue +-2 sqrt q");
    static const char* drawn[10][4] = {{"0", "0", "0", "1"}, {"0", "0", "1", "b"}, {"0", "1", "b", "b"},
                                       {"1", "b", "b", "2"}, {"b", "b", "2", "b"}, {"b", "2", "b", "b"},
                                       {"2", "b", "b", "1"}, {"b", "b", "1", "0"}, {"b", "1", "0", "0"},
                                       {"1", "0", "0", "0"}};
    for (int b = 0; b <= 2; ++b) {
        E1Page e = e1_page(b);
        bool ok = e.ranks.size() == 10;
        for (std::size_t r = 0; ok && r < 10; ++r)
            for (std::size_t c = 0; c < 4; ++c) {
                std::string d = drawn[r][c];
                ok = ok && e.ranks[r][c] == (d == "b" ? b : std::stoi(d));
            }
        v.check(ok, "E1 pattern b=" + std::to_string(b));
    }
    return v;
}

Verdict properties(unsigned seed, int& cases) {
    Verdict v;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(-5, 5), ex(0, 3), nt(1, 5);
    auto rpoly = [&](int vars) {
        Poly p;
        for (int i = nt(rng); i > 0; --i) {
            Poly m(coef(rng));
            for (int x = 1; x <= vars; ++x) m *= Poly::root(x).pow(ex(rng));
            p += m;
        }
        return p;
    };
    cases = 0;
    // ring axioms
    for (int c = 0; c < 300; ++c, ++cases) {
        Poly a = rpoly(3), b = rpoly(3), d = rpoly(3);
        v.check((a * b) * d == a * (b * d) && a * (b + d) == a * b + a * d && a * b == b * a, "ring axioms");
    }
    // exact division round trip
    for (int c = 0; c < 200; ++c, ++cases) {
        Poly a = rpoly(3), b = rpoly(3);
        if (b.is_zero()) b = Poly(1);
        v.check(exact_divide(a * b, b) == a, "exact division");
    }
    // Weyl-sum divisibility
    for (int c = 0; c < 150; ++c, ++cases) {
        RootSystem rs = RootSystem::make(c % 3 == 0 ? Family::A : c % 3 == 1 ? Family::B : Family::D, 3);
        try {
            v.check(is_weyl_invariant(kappa_push(rpoly(3), rs), rs), "Weyl sum invariance");
        } catch (const NotDivisible&) {
            v.check(false, "Weyl sum divisibility");
        }
    }
    // projection formula
    auto bz = builtin_bundle("so6_u3");
    std::map<VarId, Poly> restrict{{var_id("p1"), parse_poly("c1^2 - 2*c2")}, {var_id("chi"), parse_poly("c3")}};
    std::vector<std::string> classes{"c1^3", "c2*c1", "c1^4", "c2*c1^2", "c1^5", "c3*c1^2"};
    for (int c = 0; c < 100; ++c, ++cases) {
        Poly a = Poly(coef(rng)) * Poly::var("p1").pow(ex(rng) % 3) * Poly::var("chi").pow(ex(rng) % 2);
        Poly x = parse_poly(classes[static_cast<std::size_t>(c) % classes.size()]);
        v.check(iota_push(x * a.substitute(restrict), bz) == a * iota_push(x, bz), "projection formula");
    }
    // two-stage vs one-stage
    auto xr = [](int i) { return Poly::root(i); };
    BundleDescriptor one{"so6_u2xu1", RootSystem::make(Family::D, 3), {xr(1) - xr(2)},
                         {{"cA1", xr(1) + xr(2)}, {"cA2", xr(1) * xr(2)}, {"cB1", xr(3)}}};
    BundleDescriptor leg{"so4_u2", RootSystem::make(Family::D, 2), {xr(1) - xr(2)}, one.generators};
    BundleDescriptor lam{"so6_so4xso2", RootSystem::make(Family::D, 3), {xr(1) - xr(2), xr(1) + xr(2)}, {}};
    for (int c = 0; c < 100;) {
        int ea = ex(rng) % 3, eb = ex(rng), ec = ex(rng) * 2 + ex(rng) % 2;
        int deg = 2 * ea + 4 * eb + 2 * ec;
        if (deg < 10 || deg > 16) continue;
        Poly cls = Poly::var("cA1").pow(ea) * Poly::var("cA2").pow(eb) * Poly::var("cB1").pow(ec);
        Poly direct = iota_push(cls, one);
        v.check(iota_push(ev_push_universal(cls), bz) == direct, "tau after ev");
        v.check(iota_push(iota_push_roots(cls, leg), lam) == direct, "lambda after ft");
        ++c;
        ++cases;
    }
    // Koszul signs on Bodd
    PDAlgebra odd = sample_model("Bodd");
    std::uniform_int_distribution<std::size_t> pick(0, odd.dim() - 1);
    for (int c = 0; c < 200; ++c, ++cases) {
        std::size_t a = pick(rng), b = pick(rng), x = pick(rng), y = pick(rng);
        AlgebraElement A1 = odd.basis(a), B1 = odd.basis(b), X1 = odd.basis(x), Y1 = odd.basis(y);
        v.check(odd.mul(A1, B1) == Poly(koszul(odd.degrees[a], odd.degrees[b])) * odd.mul(B1, A1), "graded commutativity");
        v.check(tensor_mul(odd, tensor_of(odd, {A1, B1}), tensor_of(odd, {X1, Y1})) ==
                    Poly(koszul(odd.degrees[b], odd.degrees[x])) * tensor_of(odd, {odd.mul(A1, X1), odd.mul(B1, Y1)}),
                "tensor Koszul sign");
    }
    // Cayley-Hamilton at random specializations
    QuantumRing Q(sample_model("B0"));
    PolyMatrix m = Q.c1_matrix();
    Poly cp = char_poly(m);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    for (int c = 0; c < 50; ++c, ++cases) {
        std::map<VarId, Poly> s{{var_id("q"), Poly(Rational(num(rng), den(rng)))},
                                {var_id("chi"), Poly(Rational(num(rng), den(rng)))}};
        PolyMatrix ms = m;
        for (auto& row : ms)
            for (auto& e : row) e = e.substitute(s);
        Poly cs = char_poly(ms);
        v.check(cs == cp.substitute(s) && is_zero_matrix(eval_matrix_poly(cs, ms)), "Cayley-Hamilton");
    }
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    unsigned seed = argc > 1 ? static_cast<unsigned>(std::stoul(argv[1])) : 20240601u;
    int cases = 0;
    std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"fibre-integral table", fibre_table},
        {"line-moduli integrals", lines_integrals},
        {"evaluation pushforward table", ev_table},
        {"ring presentations", ring_presentations},
        {"diagonal decompositions", diagonals},
        {"GW classes", gw_classes},
        {"quantum ring", quantum_ring},
        {"c1 spectrum", spectrum},
        {"Floer obstruction and E1 page", floer},
        {"property suites", [&] { return properties(seed, cases); }},
    };
    int undocumented = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.pass = false;
            v.note = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (v.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first;
        if (i + 1 == criteria.size()) std::cout << " (" << cases << " randomized cases, seed " << seed << ")";
        std::cout << " [" << std::fixed;
        std::cout.precision(2);
        std::cout << secs << "s]";
        if (!v.pass && v.documented) std::cout << " [documented discrepancy]";
        if (!v.note.empty()) std::cout << ": " << v.note;
        std::cout << "\n";
        if (!v.pass && !v.documented) ++undocumented;
    }
    if (cases < 1000) ++undocumented;
    return undocumented ? 1 : 0;
}
