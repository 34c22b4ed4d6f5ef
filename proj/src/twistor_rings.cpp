#include "twistor/twistor_rings.hpp"

#include <algorithm>

namespace twistor {

namespace {

AlgebraElement base_vol(const PDAlgebra& base) {
    int v = base.top_index();
    if (v < 0) throw ValidationFailure({"base model has no top class"});
    return AlgebraElement::basis(base.dim(), v, Poly(Rational(1) / base.integral[v].constant_term()));
}

}  // namespace

AlgebraElement eval_poly(const PDAlgebra& A, const Poly& p,
                         const std::map<VarId, AlgebraElement>& images) {
    AlgebraElement out = A.zero();
    std::map<std::pair<VarId, std::uint32_t>, AlgebraElement> cache;
    for (auto& [m, c] : p.terms()) {
        AlgebraElement term = A.one();
        Monomial rest;
        for (auto& [id, e] : m) {
            auto it = images.find(id);
            if (it == images.end()) {
                rest.emplace_back(id, e);
                continue;
            }
            auto key = std::make_pair(id, e);
            auto ci = cache.find(key);
            if (ci == cache.end()) ci = cache.emplace(key, A.pow(it->second, e)).first;
            term = A.mul(term, ci->second);
        }
        out += Poly::monomial(rest, c) * term;
    }
    return out;
}

LerayHirschRing::LerayHirschRing(const PDAlgebra& b, const BundleDescriptor& bd, std::vector<Poly> fb,
                                 std::vector<std::string> fl, const std::string& name,
                                 const std::string& prefix)
    : base(b), bundle(bd), fibre_basis(std::move(fb)), fibre_labels(std::move(fl)), pull_prefix(prefix) {
    validate(base);
    std::size_t nF = F(), nB = base.dim();
    int fdim = bundle.fibre_dimension();

    // fibre pairing N_{ji} = push(z_i z_j), split into constant and nilpotent parts
    n0inv_.assign(nF, std::vector<Poly>(nF));
    nplus_.assign(nF, std::vector<AlgebraElement>(nF, base.zero()));
    n0_.assign(nF, std::vector<Poly>(nF));
    PolyMatrix& n0 = n0_;
    for (std::size_t j = 0; j < nF; ++j)
        for (std::size_t i = 0; i < nF; ++i) {
            AlgebraElement v = fibre_push(fibre_basis[i] * fibre_basis[j]);
            n0[j][i] = v.c[base.unit];
            v.c[base.unit] = Poly();
            nplus_[j][i] = v;
        }
    try {
        n0inv_ = invert(n0);
    } catch (const Singular&) {
        throw InconsistentSystem("fibre classes of " + bundle.name + " do not pair nondegenerately");
    }

    std::vector<std::string> labels;
    std::vector<int> degs;
    for (std::size_t bi = 0; bi < nB; ++bi)
        for (std::size_t i = 0; i < nF; ++i) {
            std::string zl = fibre_labels[i], yl = base.labels[bi];
            if (bi == base.unit) labels.push_back(zl);
            else if (i == 0) labels.push_back(prefix + "*" + yl);
            else labels.push_back(zl + "*" + prefix + "*" + yl);
            degs.push_back(fibre_basis[i].degree() + base.degrees[bi]);
        }
    alg = PDAlgebra(name, labels, degs, index(0, base.unit));
    alg.top_degree = base.top_degree + fdim;
    alg.chi = base.chi;
    alg.p1_zero = base.p1_zero;

    // products of fibre classes, solved once per pair
    std::vector<std::vector<std::vector<AlgebraElement>>> beta(nF, std::vector<std::vector<AlgebraElement>>(nF));
    for (std::size_t a = 0; a < nF; ++a)
        for (std::size_t c = 0; c < nF; ++c) {
            std::vector<AlgebraElement> rhs;
            for (std::size_t j = 0; j < nF; ++j)
                rhs.push_back(fibre_push(fibre_basis[a] * fibre_basis[c] * fibre_basis[j]));
            beta[a][c] = solve(rhs);
        }
    for (std::size_t a = 0; a < nF; ++a)
        for (std::size_t bb = 0; bb < nB; ++bb)
            for (std::size_t c = 0; c < nF; ++c)
                for (std::size_t d = 0; d < nB; ++d) {
                    AlgebraElement yy = base.mul(base.basis(bb), base.basis(d));
                    if (yy.is_zero()) continue;
                    for (std::size_t m = 0; m < nF; ++m) {
                        if (beta[a][c][m].is_zero()) continue;
                        AlgebraElement coef = base.mul(beta[a][c][m], yy);
                        for (std::size_t r = 0; r < nB; ++r)
                            if (!coef.c[r].is_zero()) alg.C(index(a, bb), index(c, d), index(m, r)) += coef.c[r];
                    }
                }
    for (std::size_t i = 0; i < nF; ++i) {
        AlgebraElement p = fibre_push(fibre_basis[i]);
        for (std::size_t bb = 0; bb < nB; ++bb) alg.integral[index(i, bb)] = base.integrate(base.mul(p, base.basis(bb)));
    }
}

std::vector<AlgebraElement> LerayHirschRing::solve(const std::vector<AlgebraElement>& rhs) const {
    std::size_t nF = F();
    auto apply_n0inv = [&](const std::vector<AlgebraElement>& v) {
        std::vector<AlgebraElement> r(nF, base.zero());
        for (std::size_t i = 0; i < nF; ++i)
            for (std::size_t j = 0; j < nF; ++j)
                if (!n0inv_[i][j].is_zero()) r[i] += n0inv_[i][j] * v[j];
        return r;
    };
    std::vector<AlgebraElement> v = apply_n0inv(rhs), sol = v;
    for (int iter = 0; iter <= base.top_degree + 1; ++iter) {
        std::vector<AlgebraElement> w(nF, base.zero());
        for (std::size_t j = 0; j < nF; ++j)
            for (std::size_t i = 0; i < nF; ++i) w[j] += base.mul(nplus_[j][i], v[i]);
        v = apply_n0inv(w);
        for (auto& x : v) x *= Poly(-1);
        if (std::all_of(v.begin(), v.end(), [](auto& x) { return x.is_zero(); })) break;
        if (iter == base.top_degree + 1) throw InconsistentSystem("Leray-Hirsch series did not terminate");
        for (std::size_t i = 0; i < nF; ++i) sol[i] += v[i];
    }
    for (std::size_t j = 0; j < nF; ++j) {
        AlgebraElement lhs = base.zero();
        for (std::size_t i = 0; i < nF; ++i) lhs += n0_[j][i] * sol[i] + base.mul(nplus_[j][i], sol[i]);
        if (lhs != rhs[j]) throw InconsistentSystem("fibre-integral system has no solution");
    }
    return sol;
}

AlgebraElement LerayHirschRing::characteristic_class(const Poly& inv) const {
    AlgebraElement vol = base_vol(base);
    AlgebraElement euler = base.chi * vol;
    std::map<VarId, AlgebraElement> images;
    for (auto& name : invariant_names(bundle.G)) {
        VarId v = var_id(name);
        if (name == euler_name(bundle.G.rank) && bundle.G.family == Family::D) {
            if (2 * bundle.G.rank != base.top_degree)
                throw InconsistentSystem("Euler class degree does not match the base dimension");
            images.emplace(v, euler);
        } else if (base.p1_zero) {
            images.emplace(v, base.zero());
        } else {
            throw ValidationFailure({"base model with p1_zero=false carries no Pontryagin classes"});
        }
    }
    return eval_poly(base, inv, images);
}

AlgebraElement LerayHirschRing::fibre_push(const Poly& generator_poly) const {
    std::string key = generator_poly.str();
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        auto it = cache_->values.find(key);
        if (it != cache_->values.end()) return it->second;
    }
    AlgebraElement v = characteristic_class(iota_push(generator_poly, bundle));
    std::lock_guard<std::mutex> lock(cache_->mu);
    cache_->values.emplace(key, v);
    return v;
}

AlgebraElement LerayHirschRing::pull(const AlgebraElement& y) const {
    AlgebraElement r = alg.zero();
    for (std::size_t b = 0; b < base.dim(); ++b) r.c[index(0, b)] = y.c[b];
    return r;
}

TensorElement LerayHirschRing::pull(const TensorElement& T) const {
    TensorElement r(T.arity);
    for (auto& [idx, c] : T.terms) {
        std::vector<std::size_t> j;
        for (auto b : idx) j.push_back(index(0, b));
        r.add(j, c);
    }
    return r;
}

AlgebraElement LerayHirschRing::push(const AlgebraElement& a) const {
    AlgebraElement r = base.zero();
    for (std::size_t i = 0; i < F(); ++i) {
        AlgebraElement p = fibre_push(fibre_basis[i]);
        for (std::size_t b = 0; b < base.dim(); ++b)
            if (!a.c[index(i, b)].is_zero()) r += a.c[index(i, b)] * base.mul(p, base.basis(b));
    }
    return r;
}

AlgebraElement LerayHirschRing::express(const Poly& generator_poly) const {
    std::vector<AlgebraElement> rhs;
    for (std::size_t j = 0; j < F(); ++j) rhs.push_back(fibre_push(generator_poly * fibre_basis[j]));
    auto beta = solve(rhs);
    AlgebraElement r = alg.zero();
    for (std::size_t i = 0; i < F(); ++i)
        for (std::size_t b = 0; b < base.dim(); ++b) r.c[index(i, b)] += beta[i].c[b];
    return r;
}

TwistorRing build_twistor_ring(const PDAlgebra& base, int n) {
    if (n == 3) {
        if (base.top_degree != 6) throw ValidationFailure({"n=3 needs a base of top degree 6"});
        Poly c1 = Poly::var("c1");
        LerayHirschRing R(base, builtin_bundle("so6_u3"), {Poly(1), c1, c1.pow(2), c1.pow(3)},
                          {"1", "h", "h^2", "h^3"}, "H*(Z) over " + base.name, "tau");
        AlgebraElement h = R.z(1);
        AlgebraElement c2 = R.express(Poly::var("c2"));
        AlgebraElement c3 = R.express(Poly::var("c3"));
        AlgebraElement tchi = R.pull(base.chi * base_vol(base));
        return {3, std::move(R), h, c2, c3, tchi};
    }
    if (n == 2) {
        if (base.top_degree != 4) throw ValidationFailure({"n=2 needs a base of top degree 4"});
        Poly c1 = Poly::var("c1");
        LerayHirschRing R(base, builtin_bundle("so4_u2"), {Poly(1), c1}, {"1", "h"},
                          "H*(Z) over " + base.name, "tau");
        AlgebraElement h = R.z(1);
        AlgebraElement c2 = R.express(Poly::var("c2"));
        AlgebraElement tchi = R.pull(base.chi * base_vol(base));
        return {2, std::move(R), h, c2, R.alg.zero(), tchi};
    }
    throw std::invalid_argument("twistor ring is implemented for n = 2, 3");
}

LinesRing build_lines_ring(const PDAlgebra& base, int n) {
    if (n == 3) {
        if (base.top_degree != 6) throw ValidationFailure({"n=3 needs a base of top degree 6"});
        Poly t = Poly::var("t"), e = Poly::var("e");
        LerayHirschRing R(base, builtin_bundle("so6_so4xso2"), {Poly(1), t, t.pow(2), t.pow(3), t.pow(4), e},
                          {"1", "t", "t^2", "t^3", "t^4", "e"}, "H*(L) over " + base.name, "lambda");
        AlgebraElement te = R.z(1), ee = R.z(5);
        AlgebraElement lchi = R.pull(base.chi * base_vol(base));
        return {3, std::move(R), ee, te, lchi};
    }
    throw std::invalid_argument("line moduli ring is built for n = 3; for n = 2 the line space is the base");
}

Poly ev_push_universal(const Poly& cls) { return iota_push(cls, builtin_bundle("u3_u2xu1")); }

AlgebraElement ev_push(const TwistorRing& Z, const Poly& cls) {
    if (Z.n != 3) throw std::invalid_argument("ev_push is defined for n = 3");
    std::map<VarId, AlgebraElement> images{
        {var_id("c1"), Z.h}, {var_id("c2"), Z.c2}, {var_id("c3"), Z.c3}};
    return eval_poly(Z.alg(), ev_push_universal(cls), images);
}

TensorElement diagonal_push(const PDAlgebra& A, const AlgebraElement& x) {
    TensorElement d2 = poincare_amplitudes(A, 2);
    return tensor_mul(A, d2, tensor_of(A, {x, A.one()}));
}

TensorElement poincare_amplitudes(const PDAlgebra& A, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (k == 1) return tensor_of(A, {A.one()});
    if (k == 2) {
        PolyMatrix ginv = pairing_inverse(A);
        TensorElement t(2);
        for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t j = 0; j < A.dim(); ++j) t.add({i, j}, ginv[i][j]);
        return t;
    }
    TensorElement prev = poincare_amplitudes(A, k - 1);
    std::vector<TensorElement> pushes(A.dim());
    std::vector<bool> done(A.dim(), false);
    TensorElement out(k);
    for (auto& [idx, c] : prev.terms) {
        std::size_t last = idx.back();
        if (!done[last]) {
            pushes[last] = diagonal_push(A, A.basis(last));
            done[last] = true;
        }
        for (auto& [pidx, pc] : pushes[last].terms) {
            std::vector<std::size_t> j(idx.begin(), idx.end() - 1);
            j.push_back(pidx[0]);
            j.push_back(pidx[1]);
            out.add(j, c * pc);
        }
    }
    return out;
}

TensorElement diagonal_class(const PDAlgebra& A, int k, const AlgebraElement& y) {
    std::vector<AlgebraElement> f{y};
    for (int i = 1; i < k; ++i) f.push_back(A.one());
    return tensor_mul(A, poincare_amplitudes(A, k), tensor_of(A, f));
}

TensorElement expected_diagonal_Z(const TwistorRing& Z, int k) {
    const PDAlgebra& A = Z.alg();
    const PDAlgebra& M = Z.ring.base;
    AlgebraElement vol = base_vol(M);
    auto hp = [&](int i) { return Z.ring.z(i); };
    Poly chi = M.chi;
    if (k == 2) {
        TensorElement fib(2);
        for (int i = 0; i <= 3; ++i) fib += tensor_of(A, {hp(i), hp(3 - i)});
        TensorElement r = Poly(Rational(1, 8)) * tensor_mul(A, fib, Z.ring.pull(diagonal_class(M, 2, M.one())));
        r -= chi * Z.ring.pull(diagonal_class(M, 2, vol));
        return r;
    }
    if (k == 3) {
        TensorElement fib(3);
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; j <= 3; ++j) {
                int l = 6 - i - j;
                if (l >= 0 && l <= 3) fib += tensor_of(A, {hp(i), hp(j), hp(l)});
            }
        TensorElement r = Poly(Rational(1, 64)) * tensor_mul(A, fib, Z.ring.pull(diagonal_class(M, 3, M.one())));
        TensorElement corr = tensor_of(A, {hp(1), hp(1), hp(1)}) - symmetrize(A, {hp(3), hp(0), hp(0)});
        r += chi * Poly(Rational(1, 8)) * tensor_mul(A, corr, Z.ring.pull(diagonal_class(M, 3, vol)));
        return r;
    }
    throw std::invalid_argument("closed form is displayed for k = 2, 3");
}

TensorElement expected_diagonal_L(const LinesRing& L, int k) {
    const PDAlgebra& A = L.alg();
    const PDAlgebra& M = L.ring.base;
    AlgebraElement vol = base_vol(M);
    auto tp = [&](int i) { return L.ring.z(i); };
    AlgebraElement e = L.ring.z(5);
    if (k == 2) {
        TensorElement fib = symmetrize(A, {tp(0), tp(4)}) + symmetrize(A, {tp(1), tp(3)}) +
                            tensor_of(A, {tp(2), tp(2)}) + tensor_of(A, {e, e});
        return Poly(Rational(1, 2)) * tensor_mul(A, fib, L.ring.pull(diagonal_class(M, 2, M.one())));
    }
    if (k == 3) {
        TensorElement fib = symmetrize(A, {tp(4), e, e});
        for (int i = 0; i <= 4; ++i)
            for (int j = 0; j <= 4; ++j) {
                int l = 8 - i - j;
                if (l >= 0 && l <= 4) fib += tensor_of(A, {tp(i), tp(j), tp(l)});
            }
        TensorElement r = Poly(Rational(1, 4)) * tensor_mul(A, fib, L.ring.pull(diagonal_class(M, 3, M.one())));
        TensorElement corr(3);
        for (int i = 0; i <= 3; ++i) {
            int j = 3 - i;
            if (i < j) corr += symmetrize(A, {e, tp(i), tp(j)});
        }
        r += Poly(Rational(1, 4)) * tensor_mul(A, corr, L.ring.pull(diagonal_class(M, 3, vol)));
        return r;
    }
    throw std::invalid_argument("closed form is displayed for k = 2, 3");
}

}  // namespace twistor
