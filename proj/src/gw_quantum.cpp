#include "twistor/gw_quantum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>

namespace twistor {

namespace {

constexpr int kDimZ3 = 12;  // real dimension of Z for n = 3
constexpr int kC1A = 2;     // c1(Z)[A]

int virtual_dim(int m, int k) { return kDimZ3 + 2 * kC1A * m + 2 * (k - 3); }

AlgebraElement base_vol(const PDAlgebra& base) {
    int v = base.top_index();
    return AlgebraElement::basis(base.dim(), v, Poly(Rational(1) / base.integral[v].constant_term()));
}

std::vector<std::size_t> basis_support(const AlgebraElement& a) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a.c[i].is_zero()) s.push_back(i);
    return s;
}

}  // namespace

const std::vector<VanishingRule>& vanishing_rules_n3() {
    static const std::vector<VanishingRule> rules{
        {"dimension bound", "the evaluation image must fit in Z^k: 4m <= 10k - 6",
         [](int m, int k) { return virtual_dim(m, k) > kDimZ3 * k; }},
        {"fewer points than degree", "GW_{mA,k} = 0 if k < m", [](int m, int k) { return k < m; }},
        {"obstruction section", "GW_{mA,m} = 0 for m >= 3 and GW_{2A,3} = 0",
         [](int m, int k) { return (m == k && m >= 3) || (m == 2 && k == 3); }},
        {"divisor equation", "GW_{2A,2} = 0", [](int m, int k) { return m == 2 && k == 2; }},
    };
    return rules;
}

std::vector<DegreeVerdict> degree_verdicts(int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    std::vector<DegreeVerdict> out;
    for (int m = 1;; ++m) {
        DegreeVerdict v{m, true, ""};
        for (auto& r : vanishing_rules_n3())
            if (r.kills(m, k)) {
                v.contributes = false;
                v.killed_by = r.name;
                break;
            }
        out.push_back(v);
        if (vanishing_rules_n3()[0].kills(m, k)) break;
    }
    return out;
}

std::set<int> contributing_degrees(int k, int n) {
    if (n != 3) throw std::invalid_argument("vanishing rules are encoded for n = 3");
    std::set<int> s;
    for (auto& v : degree_verdicts(k))
        if (v.contributes) s.insert(v.m);
    return s;
}

int GWClass::expected_degree() const {
    if (n == 3) return kDimZ3 * k - virtual_dim(m, k);
    // n = 2: dim Z = 6, c1(Z)[A] = 0
    return 6 * k - (6 + 2 * (k - 3));
}

int tensor_degree(const PDAlgebra& A, const TensorElement& T) {
    int d = -1;
    for (auto& [idx, c] : T.terms) {
        int s = 0;
        for (auto i : idx) s += A.degrees[i];
        if (d >= 0 && s != d) return -1;
        d = s;
    }
    return d;
}

AlgebraElement ev_ft(const TwistorRing& Z, const LinesRing& L, const AlgebraElement& x) {
    const auto& LR = L.ring;
    std::map<VarId, Poly> to_L1{{var_id("t"), Poly::var("cB1")}, {var_id("e"), Poly::var("cA2")}};
    AlgebraElement out = Z.alg().zero();
    for (std::size_t i = 0; i < LR.F(); ++i) {
        AlgebraElement fib;
        bool have = false;
        for (std::size_t b = 0; b < LR.base.dim(); ++b) {
            const Poly& c = x.c[LR.index(i, b)];
            if (c.is_zero()) continue;
            if (!have) {
                fib = ev_push(Z, LR.fibre_basis[i].substitute(to_L1));
                have = true;
            }
            out += c * Z.alg().mul(fib, Z.ring.pull(LR.base.basis(b)));
        }
    }
    return out;
}

GWClass gw_class_n3(const TwistorRing& Z, const LinesRing& L, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const PDAlgebra& LA = L.alg();
    const PDAlgebra& ZA = Z.alg();
    TensorElement delta = poincare_amplitudes(LA, k);
    std::map<std::size_t, AlgebraElement> first, rest;
    TensorElement out(k);
    for (auto& [idx, c] : delta.terms) {
        std::vector<AlgebraElement> f;
        for (std::size_t j = 0; j < idx.size(); ++j) {
            auto& cache = j == 0 ? first : rest;
            auto it = cache.find(idx[j]);
            if (it == cache.end()) {
                AlgebraElement x = LA.basis(idx[j]);
                if (j == 0) x = LA.mul(L.e, x);
                it = cache.emplace(idx[j], ev_ft(Z, L, x)).first;
            }
            f.push_back(it->second);
        }
        if (std::any_of(f.begin(), f.end(), [](auto& a) { return a.is_zero(); })) continue;
        out += c * tensor_of(ZA, f);
    }
    return {3, 1, k, out};
}

GWClass gw_class_n2(const TwistorRing& Z, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    const PDAlgebra& M = Z.ring.base;
    AlgebraElement obs = M.chi * base_vol(M);  // Euler class of TM
    return {2, 1, k, Z.ring.pull(diagonal_class(M, k, obs))};
}

GWClass gw_class(int n, int k, const PDAlgebra& base) {
    if (n == 3) {
        TwistorRing Z = build_twistor_ring(base, 3);
        LinesRing L = build_lines_ring(base, 3);
        return gw_class_n3(Z, L, k);
    }
    if (n == 2) return gw_class_n2(build_twistor_ring(base, 2), k);
    throw std::invalid_argument("GW classes are implemented for n = 2, 3");
}

TensorElement expected_gw_n3(const TwistorRing& Z, int k) {
    const PDAlgebra& A = Z.alg();
    const PDAlgebra& M = Z.ring.base;
    AlgebraElement one = A.one(), h = Z.h, h2 = A.mul(Z.h, Z.h);
    switch (k) {
        case 1:
            return tensor_of(A, {one});
        case 2:
            return Poly(Rational(1, 4)) * tensor_mul(A, symmetrize(A, {one, h2}), Z.ring.pull(diagonal_class(M, 2, M.one())));
        case 3: {
            TensorElement r = Poly(Rational(1, 16)) *
                              tensor_mul(A, symmetrize(A, {one, h2, h2}), Z.ring.pull(diagonal_class(M, 3, M.one())));
            r += M.chi * Poly(Rational(1, 2)) *
                 tensor_mul(A, symmetrize(A, {h, one, one}), Z.ring.pull(diagonal_class(M, 3, base_vol(M))));
            return r;
        }
    }
    throw std::invalid_argument("closed form is displayed for k = 1, 2, 3");
}

TensorElement expected_gw_n2(const TwistorRing& Z, int k) {
    AlgebraElement a = Z.ring.pull(base_vol(Z.ring.base));
    return Z.ring.base.chi * tensor_of(Z.alg(), std::vector<AlgebraElement>(k, a));
}

Poly quantum_q() { return Poly::var("q"); }
Poly lambda_var() { return Poly::var("lambda"); }

NovikovElement NovikovElement::from_flat(const AlgebraElement& a) {
    NovikovElement r;
    VarId q = var_id("q");
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto cs = a.c[i].coefficients_in(q);
        for (std::size_t p = 0; p < cs.size(); ++p) {
            if (cs[p].is_zero()) continue;
            auto it = r.terms.try_emplace(p, AlgebraElement(a.size())).first;
            it->second.c[i] += cs[p];
        }
    }
    return r;
}

AlgebraElement NovikovElement::flat() const {
    AlgebraElement r;
    for (auto& [p, a] : terms) {
        if (r.size() == 0) r = AlgebraElement(a.size());
        r += quantum_q().pow(p) * a;
    }
    return r;
}

QuantumRing::QuantumRing(const PDAlgebra& base)
    : Z_(std::make_unique<TwistorRing>(build_twistor_ring(base, 3))),
      L_(std::make_unique<LinesRing>(build_lines_ring(base, 3))) {
    if (contributing_degrees(3) != std::set<int>{1})
        throw MathError("unexpected contributing degrees for the 3-point invariant");
    gw3_ = gw_class_n3(*Z_, *L_, 3);
    const PDAlgebra& A = alg();
    ginv_ = pairing_inverse(A);
    std::size_t n = A.dim();
    // all 3-point numbers on basis triples, from the tensor terms directly
    PolyMatrix g = A.pairing();
    std::vector<Poly> gw(n * n * n);
    for (auto& [idx, coef] : gw3_.value.terms) {
        int d1 = A.degrees[idx[1]], d2 = A.degrees[idx[2]];
        for (std::size_t a = 0; a < n; ++a) {
            if (g[idx[0]][a].is_zero()) continue;
            for (std::size_t b = 0; b < n; ++b) {
                if (g[idx[1]][b].is_zero()) continue;
                Poly ab = coef * g[idx[0]][a] * g[idx[1]][b];
                for (std::size_t c = 0; c < n; ++c) {
                    if (g[idx[2]][c].is_zero()) continue;
                    int da = A.degrees[a], db = A.degrees[b];
                    int sign = koszul(da, d1) * koszul(da, d2) * koszul(db, d2);
                    gw[(a * n + b) * n + c] += Poly(sign) * ab * g[idx[2]][c];
                }
            }
        }
    }
    table_.assign(n * n, A.zero());
    Poly q = quantum_q();
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            AlgebraElement r = A.mul(A.basis(j), A.basis(k));
            for (std::size_t i = 0; i < n; ++i) {
                const Poly& gv = gw[(j * n + k) * n + i];
                if (gv.is_zero()) continue;
                for (std::size_t l = 0; l < n; ++l)
                    if (!ginv_[i][l].is_zero()) r.c[l] += q * gv * ginv_[i][l];
            }
            table_[j * n + k] = r;
        }
}

AlgebraElement QuantumRing::alpha() const { return Poly(-1) * Z_->h; }

Poly QuantumRing::gw_number(const AlgebraElement& a, const AlgebraElement& b, const AlgebraElement& c) const {
    return tensor_integrate(alg(), gw3_.value, {a, b, c});
}

AlgebraElement QuantumRing::mul(const AlgebraElement& a, const AlgebraElement& b) const {
    std::size_t n = alg().dim();
    AlgebraElement r = alg().zero();
    for (auto j : basis_support(a))
        for (auto k : basis_support(b)) r += (a.c[j] * b.c[k]) * table_[j * n + k];
    return r;
}

NovikovElement QuantumRing::mul(const NovikovElement& a, const NovikovElement& b) const {
    return NovikovElement::from_flat(mul(a.flat(), b.flat()));
}

AlgebraElement QuantumRing::pow(const AlgebraElement& a, unsigned k) const {
    AlgebraElement r = alg().one();
    for (unsigned i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

PolyMatrix QuantumRing::c1_matrix() const {
    std::size_t n = alg().dim();
    PolyMatrix m(n, std::vector<Poly>(n));
    AlgebraElement al = alpha();
    for (std::size_t c = 0; c < n; ++c) {
        AlgebraElement col = mul(al, alg().basis(c));
        for (std::size_t r = 0; r < n; ++r) m[r][c] = col.c[r];
    }
    return m;
}

PolyMatrix QuantumRing::c1_matrix_alpha() const {
    const PDAlgebra& A = alg();
    std::size_t n = A.dim(), F = Z_->ring.F();
    // columns of P: alpha^{*i} * tau*y_b in the basis h^i tau*y_b
    PolyMatrix P(n, std::vector<Poly>(n));
    AlgebraElement al = alpha();
    for (std::size_t b = 0; b < Z_->ring.base.dim(); ++b) {
        AlgebraElement v = A.basis(Z_->ring.index(0, b));
        for (std::size_t i = 0; i < F; ++i) {
            std::size_t col = Z_->ring.index(i, b);
            for (std::size_t r = 0; r < n; ++r) P[r][col] = v.c[r];
            v = mul(al, v);
        }
    }
    PolyMatrix Pinv = invert(P), M = c1_matrix();
    auto prod = [n](const PolyMatrix& x, const PolyMatrix& y) {
        PolyMatrix z(n, std::vector<Poly>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                if (x[i][k].is_zero()) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (!y[k][j].is_zero()) z[i][j] += x[i][k] * y[k][j];
            }
        return z;
    };
    return prod(Pinv, prod(M, P));
}

Poly QuantumRing::block_reading_char_poly() const {
    const auto& R = Z_->ring;
    PolyMatrix M = c1_matrix_alpha();
    std::size_t F = R.F(), vol = static_cast<std::size_t>(R.base.top_index());
    Poly coupling = M[R.index(1, vol)][R.index(F - 1, R.base.unit)];
    Poly out(1);
    for (std::size_t b = 0; b < R.base.dim(); ++b) {
        PolyMatrix blk(F, std::vector<Poly>(F));
        for (std::size_t i = 0; i < F; ++i)
            for (std::size_t j = 0; j < F; ++j) blk[i][j] = M[R.index(i, b)][R.index(j, b)];
        if (b == R.base.unit) blk[1][F - 1] += coupling;
        out *= char_poly(blk);
    }
    return out;
}

Poly char_poly(const PolyMatrix& m) {
    std::size_t n = m.size();
    if (n == 0) return Poly(1);
    Poly lam = lambda_var();
    PolyMatrix a(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? lam : Poly()) - m[i][j];
    Poly prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && a[p][k].is_zero()) ++p;
            if (p == n) return Poly();
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = exact_divide(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
        prev = a[k][k];
    }
    return Poly(sign) * a[n - 1][n - 1];
}

Poly char_poly(const PDAlgebra& base) { return char_poly(QuantumRing(base).c1_matrix()); }

PolyMatrix eval_matrix_poly(const Poly& p, const PolyMatrix& m) {
    std::size_t n = m.size();
    auto coeffs = p.coefficients_in(var_id("lambda"));
    PolyMatrix r(n, std::vector<Poly>(n));
    for (std::size_t d = coeffs.size(); d-- > 0;) {
        PolyMatrix t(n, std::vector<Poly>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                if (r[i][k].is_zero()) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (!m[k][j].is_zero()) t[i][j] += r[i][k] * m[k][j];
            }
        for (std::size_t i = 0; i < n; ++i) t[i][i] += coeffs[d];
        r = std::move(t);
    }
    return r;
}

bool is_zero_matrix(const PolyMatrix& m) {
    for (auto& row : m)
        for (auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

Poly displayed_char_poly(int D, const Poly& chi) {
    Poly l = lambda_var(), q = quantum_q();
    Poly second = l.pow(4) - Poly(8) * q * l.pow(2) + Poly(16) * q.pow(2);
    Poly first = second - Poly(8) * chi * l;
    return first * second.pow(D - 1);
}

namespace {

using cd = std::complex<double>;

// Newton on sum c[k] x^k.
cd newton(const std::vector<double>& c, cd z) {
    for (int it = 0; it < 60; ++it) {
        cd p = c.back(), dp = 0;
        for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
            dp = dp * z + p;
            p = p * z + c[k];
        }
        if (std::abs(dp) < 1e-300) break;
        cd step = p / dp;
        z -= step;
        if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    return z;
}

std::vector<double> derivative(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<double>(k));
    return d;
}

std::vector<cd> quartic_roots(const std::array<double, 5>& c) {  // c[0] + c[1] x + ... + x^4
    Eigen::Matrix4d comp = Eigen::Matrix4d::Zero();
    for (int i = 1; i < 4; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < 4; ++i) comp(i, 3) = -c[i];
    Eigen::EigenSolver<Eigen::Matrix4d> es(comp, false);
    std::vector<double> cv(c.begin(), c.end());
    std::vector<cd> r;
    for (int i = 0; i < 4; ++i) r.push_back(newton(cv, es.eigenvalues()[i]));
    return r;
}

double residual(const std::array<double, 5>& c, cd z) {
    cd p = c[4];
    for (int k = 3; k >= 0; --k) p = p * z + c[k];
    return std::abs(p);
}

void collect(Spectrum& s, const std::array<double, 5>& c, int mult, const std::string& factor, double tol) {
    struct Cluster {
        cd value;
        int count;
    };
    std::vector<Cluster> clusters;
    for (auto z : quartic_roots(c)) {
        bool merged = false;
        for (auto& f : clusters)
            if (std::abs(f.value - z) < 1e-5 * std::max(1.0, std::abs(z))) {
                ++f.count;
                merged = true;
                break;
            }
        if (!merged) clusters.push_back({z, 1});
    }
    std::vector<double> res;
    std::vector<double> cv(c.begin(), c.end());
    for (auto& f : clusters) {
        // a root of multiplicity m is a simple root of the (m-1)-th derivative
        std::vector<double> d = cv;
        for (int i = 1; i < f.count; ++i) d = derivative(d);
        cd z = newton(d, f.value);
        if (std::abs(z.imag()) < 1e-7) z = cd(z.real(), 0.0);
        double r = residual(c, z);
        res.push_back(r);
        s.roots.push_back({z, f.count * mult, r, factor});
    }
    if (*std::max_element(res.begin(), res.end()) >= tol)
        throw NonConvergence("quartic root residual above tolerance", res);
}

}  // namespace

Spectrum numeric_spectrum(double q, double chi, int D, double tol) {
    if (!(q > 0)) throw std::invalid_argument("q must be positive");
    if (D < 1) throw std::invalid_argument("D must be >= 1");
    Spectrum s;
    collect(s, {16 * q * q, -8 * chi, -8 * q, 0.0, 1.0}, 1, "first", tol);
    if (D > 1) collect(s, {16 * q * q, 0.0, -8 * q, 0.0, 1.0}, D - 1, "second", tol);
    std::sort(s.roots.begin(), s.roots.end(), [](auto& a, auto& b) {
        if (a.factor != b.factor) return a.factor < b.factor;
        if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
        return a.value.imag() > b.value.imag();
    });
    return s;
}

}  // namespace twistor
