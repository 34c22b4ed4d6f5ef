#include "twistor/cli.hpp"

#include <cmath>
#include <sstream>

#include "twistor/expr.hpp"
#include "twistor/floer.hpp"

namespace twistor {

namespace {

// Either a scalar polynomial or a class; scalars are promoted on contact.
struct ClassValue {
    const PDAlgebra* A = nullptr;
    bool scalar = true;
    Poly s;
    AlgebraElement v;

    ClassValue() = default;
    ClassValue(const Rational& r) : s(r) {}
    static ClassValue of(const PDAlgebra* A, AlgebraElement v) {
        ClassValue c;
        c.A = A;
        c.scalar = false;
        c.v = std::move(v);
        return c;
    }
    static ClassValue param(const Poly& p) {
        ClassValue c;
        c.s = p;
        return c;
    }
    AlgebraElement elem(const PDAlgebra* alg) const { return scalar ? s * alg->one() : v; }

    friend ClassValue operator+(const ClassValue& a, const ClassValue& b) {
        if (a.scalar && b.scalar) return param(a.s + b.s);
        const PDAlgebra* A = a.scalar ? b.A : a.A;
        return of(A, a.elem(A) + b.elem(A));
    }
    friend ClassValue operator-(const ClassValue& a, const ClassValue& b) {
        if (a.scalar && b.scalar) return param(a.s - b.s);
        const PDAlgebra* A = a.scalar ? b.A : a.A;
        return of(A, a.elem(A) - b.elem(A));
    }
    friend ClassValue operator*(const ClassValue& a, const ClassValue& b) {
        if (a.scalar && b.scalar) return param(a.s * b.s);
        if (a.scalar) return of(b.A, a.s * b.v);
        if (b.scalar) return of(a.A, b.s * a.v);
        return of(a.A, a.A->mul(a.v, b.v));
    }
    friend ClassValue operator*(const ClassValue& a, const Rational& r) { return a * ClassValue(r); }
};

std::set<std::string> model_parameters(const PDAlgebra& A) {
    std::set<std::string> out{"q", "chi", "lambda"};
    auto add = [&](const Poly& p) {
        for (auto v : p.variables()) out.insert(var_info(v).name);
    };
    for (auto& p : A.structure) add(p);
    for (auto& p : A.integral) add(p);
    add(A.chi);
    return out;
}

ClassContext ring_context(const LerayHirschRing& R) {
    ClassContext ctx;
    ctx.alg = &R.alg;
    ctx.parameters = model_parameters(R.base);
    for (std::size_t b = 0; b < R.base.dim(); ++b)
        ctx.pulled[R.pull_prefix + "*" + R.base.labels[b]] = R.pull(R.base.basis(b));
    return ctx;
}

}  // namespace

ClassContext base_context(const PDAlgebra& M) {
    ClassContext ctx;
    ctx.alg = &M;
    ctx.parameters = model_parameters(M);
    for (std::size_t b = 0; b < M.dim(); ++b) ctx.generators[M.labels[b]] = M.basis(b);
    return ctx;
}

ClassContext twistor_context(const TwistorRing& Z) {
    ClassContext ctx = ring_context(Z.ring);
    ctx.generators["h"] = Z.h;
    ctx.generators["c1"] = Z.h;
    ctx.generators["c2"] = Z.c2;
    if (Z.n == 3) {
        ctx.generators["c3"] = Z.c3;
        ctx.generators["alpha"] = Poly(-1) * Z.h;
    }
    ctx.pulled["tau*chi"] = Z.tau_chi;
    return ctx;
}

ClassContext lines_context(const LinesRing& L) {
    ClassContext ctx = ring_context(L.ring);
    ctx.generators["e"] = L.e;
    ctx.generators["t"] = L.t;
    ctx.pulled["lambda*chi"] = L.lambda_chi;
    return ctx;
}

AlgebraElement parse_class_expr(const std::string& text, const ClassContext& ctx) {
    auto e = parse_expr(text, true);
    auto leaf = [&](const std::string& name, std::size_t pos) -> ClassValue {
        if (auto it = ctx.generators.find(name); it != ctx.generators.end())
            return ClassValue::of(ctx.alg, it->second);
        if (auto it = ctx.pulled.find(name); it != ctx.pulled.end()) return ClassValue::of(ctx.alg, it->second);
        if (ctx.parameters.count(name)) return ClassValue::param(Poly::var(name));
        throw UnknownGenerator("unknown generator '" + name + "'", pos);
    };
    return eval_expr<ClassValue>(*e, leaf).elem(ctx.alg);
}

std::string matrix_str(const PolyMatrix& m) {
    std::ostringstream os;
    for (auto& row : m) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "\t" : "") << row[j].str();
        os << "\n";
    }
    return os.str();
}

namespace {

struct Suite {
    std::vector<GoldenCheck> checks;
    void add(const std::string& group, const std::string& anchor, const std::string& name, bool ok,
             const std::string& detail = "") {
        checks.push_back({group, anchor, name, ok, detail});
    }
    void eq(const std::string& group, const std::string& anchor, const std::string& name, const Poly& got,
            const Poly& want) {
        add(group, anchor, name, got == want, "got " + got.str() + ", expected " + want.str());
    }
};

}  // namespace

std::vector<GoldenCheck> run_golden_suite() {
    Suite s;
    const std::string fi = "twistor-space fibre integrals";
    auto bz = builtin_bundle("so6_u3");
    std::vector<std::pair<std::string, std::string>> table{
        {"c1^3", "8"},        {"c2*c1", "4"},         {"c1^4", "0"},       {"c2*c1^2", "0"},
        {"c1^5", "16*p1"},    {"c2*c1^3", "4*p1"},    {"c1^6", "64*chi"},  {"c2*c1^4", "32*chi"}};
    for (auto& [x, v] : table) s.eq("fibre-integral", fi, "(Bi)_! " + x, iota_push(parse_poly(x), bz), parse_poly(v));
    for (auto l : {"1", "c1", "c1^2"}) {
        Poly ell = parse_poly(l);
        s.eq("fibre-integral", fi, "(Bi)_!(c3*" + std::string(l) + ")", iota_push(Poly::var("c3") * ell, bz),
             Poly::var("chi") * iota_push(ell, bz));
    }

    const std::string li = "line-moduli fibre integrals";
    auto bl = builtin_bundle("so6_so4xso2");
    for (auto& [x, v] : std::vector<std::pair<std::string, std::string>>{
             {"t^4", "2"}, {"e^2", "2"}, {"t^6", "2*p1"}, {"e*t^5", "2*chi"}, {"e^3*t", "2*chi"}})
        s.eq("lines", li, "lambda_! " + x, iota_push(parse_poly(x), bl), parse_poly(v));

    const std::string ev = "evaluation-map pushforwards";
    PDAlgebra B0 = sample_model("B0");
    TwistorRing Z0 = build_twistor_ring(B0, 3);
    ClassContext zc = twistor_context(Z0);
    std::vector<std::tuple<std::string, std::string, std::string>> evt{
        {"cB1^2", "1", "1"},           {"cB1^3", "c1", "h"},           {"cB1^4", "c1^2 - c2", "h^2/2"},
        {"cA2", "1", "1"},             {"cA2*cB1", "0", "0"},          {"cA2*cB1^2", "0", "0"},
        {"cA2*cB1^3", "c3", "tau*chi"}, {"cA2*cB1^4", "c1*c3", "h*tau*chi"}, {"cA2^2", "c2", "h^2/2"}};
    for (auto& [x, uni, onz] : evt) {
        Poly u = ev_push_universal(parse_poly(x));
        s.eq("ev", ev, "ev_! " + x + " (universal)", u, parse_poly(uni));
        AlgebraElement got = ev_push(Z0, parse_poly(x));
        AlgebraElement want = parse_class_expr(onz, zc);
        s.add("ev", ev, "ev_! " + x + " on Z", got == want, "got " + Z0.alg().str(got));
    }

    const std::string rz = "twistor-space ring presentation";
    const std::string rl = "line-moduli ring presentation";
    for (auto name : {"B0", "B1", "Bodd"}) {
        PDAlgebra B = sample_model(name);
        TwistorRing Z = build_twistor_ring(B, 3);
        const PDAlgebra& A = Z.alg();
        std::string tag = std::string(" over ") + name;
        s.add("ring", rz, "h^4 = 8 h tau*chi" + tag, A.pow(Z.h, 4) == Poly(8) * A.mul(Z.h, Z.tau_chi));
        s.add("ring", rz, "c2 = h^2/2" + tag, Z.c2 == Poly(Rational(1, 2)) * A.mul(Z.h, Z.h), A.str(Z.c2));
        s.add("ring", rz, "c3 = tau*chi" + tag, Z.c3 == Z.tau_chi, A.str(Z.c3));
        s.add("ring", rz, "dim = 4 dim(base)" + tag, A.dim() == 4 * B.dim());
        s.add("ring", rz, "validate" + tag, validate_report(A).ok);
        LinesRing L = build_lines_ring(B, 3);
        const PDAlgebra& LA = L.alg();
        s.add("ring", rl, "e^2 = t^4" + tag, LA.mul(L.e, L.e) == LA.pow(L.t, 4));
        s.add("ring", rl, "e t = chi lambda*vol" + tag, LA.mul(L.e, L.t) == L.lambda_chi);
        s.add("ring", rl, "validate" + tag, validate_report(LA).ok);
    }
    {
        // pairing of Z over B0
        PolyMatrix g = Z0.alg().pairing(), gm = B0.pairing();
        bool ok = true;
        const auto& R = Z0.ring;
        Poly chi = B0.chi;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t a = 0; a < B0.dim(); ++a)
                for (std::size_t j = 0; j < 4; ++j)
                    for (std::size_t b = 0; b < B0.dim(); ++b) {
                        Poly want = (i + j == 3 ? Poly(8) * gm[a][b] : Poly());
                        if (i + j == 6 && a == B0.unit && b == B0.unit) want += Poly(64) * chi;
                        ok = ok && g[R.index(i, a)][R.index(j, b)] == want;
                    }
        s.add("ring", rz, "pairing 8 g_M delta_{i+j,3} + 64 chi delta_{i+j,6}", ok);
    }

    const std::string dz = "twistor-space diagonal decompositions";
    const std::string dl = "line-moduli diagonal decompositions";
    LinesRing L0 = build_lines_ring(B0, 3);
    for (int k : {2, 3}) {
        TensorElement d = poincare_amplitudes(Z0.alg(), k), e = expected_diagonal_Z(Z0, k);
        s.add("diagonal", dz, "Delta^" + std::to_string(k) + " on Z over B0", d == e,
              d == e ? "" : tensor_str(Z0.alg(), d - e));
        TensorElement dL = poincare_amplitudes(L0.alg(), k), eL = expected_diagonal_L(L0, k);
        s.add("diagonal", dl, "Delta^" + std::to_string(k) + " on L over B0", dL == eL,
              dL == eL ? "" : "computed minus displayed:\n" + tensor_str(L0.alg(), dL - eL));
    }

    const std::string gz = "GW classes of twistor lines";
    for (auto name : {"B0", "B1"}) {
        PDAlgebra B = sample_model(name);
        TwistorRing Z = build_twistor_ring(B, 3);
        LinesRing L = build_lines_ring(B, 3);
        for (int k = 1; k <= 3; ++k) {
            GWClass g = gw_class_n3(Z, L, k);
            TensorElement e = expected_gw_n3(Z, k);
            s.add("gw", gz, "n=3 k=" + std::to_string(k) + " over " + name, g.value == e,
                  g.value == e ? "" : tensor_str(Z.alg(), g.value - e));
        }
    }
    {
        PDAlgebra M4 = sample_model("B4");
        TwistorRing Z2 = build_twistor_ring(M4, 2);
        for (int k = 1; k <= 3; ++k) {
            GWClass g = gw_class_n2(Z2, k);
            s.add("gw", gz, "n=2 k=" + std::to_string(k) + " chi A^k", g.value == expected_gw_n2(Z2, k),
                  tensor_str(Z2.alg(), g.value));
        }
    }

    const std::string qz = "small quantum cohomology";
    for (auto name : {"B0", "B1"}) {
        QuantumRing Q(sample_model(name));
        const PDAlgebra& A = Q.alg();
        AlgebraElement al = Q.alpha(), h = Q.Z().h, one = A.one();
        Poly q = quantum_q();
        std::string tag = std::string(" over ") + name;
        AlgebraElement lhs2 = Q.mul(al, al) - q * Poly(4) * one;
        s.add("quantum", qz, "c1(H)^2 = alpha*alpha - 4q" + tag, lhs2 == A.mul(h, h), "alpha*alpha - 4q = " + A.str(lhs2));
        AlgebraElement lhs3 = Q.pow(al, 3) - Poly(4) * q * al;
        s.add("quantum", qz, "c1(H)^3 = alpha^3 - 4 alpha q" + tag, lhs3 == A.pow(h, 3),
              "alpha^3 - 4 alpha q = " + A.str(lhs3) + ", c1(H)^3 = " + A.str(A.pow(h, 3)));
        AlgebraElement rhs = Poly(8) * A.mul(al, Q.Z().tau_chi) + Poly(8) * q * Q.pow(al, 2) - Poly(16) * q * q * one;
        AlgebraElement a4 = Q.pow(al, 4);
        s.add("quantum", qz, "alpha^4 = 8 alpha tau*chi + 8q alpha^2 - 16q^2" + tag, a4 == rhs,
              "alpha^4 - rhs = " + A.str(a4 - rhs));
    }

    const std::string sp = "c1 spectrum";
    for (auto name : {"B0", "B1"}) {
        PDAlgebra B = sample_model(name);
        QuantumRing Q(B);
        Poly cp = char_poly(Q.c1_matrix());
        Poly disp = displayed_char_poly(static_cast<int>(B.dim()), B.chi);
        s.add("spectrum", sp, std::string("full-matrix characteristic polynomial over ") + name + " vs display",
              cp == disp, "computed " + cp.str());
        Poly block = Q.block_reading_char_poly();
        s.add("spectrum", sp, std::string("block reading over ") + name + " vs display", block == disp,
              "block reading " + block.str());
    }
    {
        Spectrum sp2 = numeric_spectrum(4, 0, 2);
        bool ok = false;
        for (auto& r : sp2.roots)
            if (r.factor == "second" && std::abs(r.value - std::complex<double>(4, 0)) < 1e-9) ok = true;
        s.add("spectrum", sp, "q=4 second-factor roots +-4", ok);
    }

    const std::string fl = "obstruction term and E1 page";
    M0Result m0 = m0_coefficient();
    s.eq("floer", fl, "m0 = +-2t", m0.coefficient, parse_poly("2*t"));
    s.eq("floer", fl, "(2t)^2 -> 4q", m0.squared, parse_poly("4*q"));
    E1Page e1 = e1_page(1);
    s.add("floer", fl, "E1 b=1 betti (1,1,1,2,1,1,1)", e1.betti == std::vector<int>{1, 1, 1, 2, 1, 1, 1});
    return s.checks;
}

}  // namespace twistor
