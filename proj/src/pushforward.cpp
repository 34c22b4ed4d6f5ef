#include "twistor/pushforward.hpp"

#include <algorithm>

namespace twistor {

Poly kappa_push(const Poly& y, const RootSystem& G) {
    Poly den = G.root_product();
    int top = den.degree();
    // only components of degree >= deg(prod roots) can survive antisymmetrization
    Poly relevant;
    for (auto& [m, c] : y.terms())
        if (mono_degree(m) >= top) relevant += Poly::monomial(m, c);
    if (relevant.is_zero()) return Poly();
    Poly sum;
    for (auto& w : weyl_elements(G)) {
        Poly t = weyl_act(w, relevant);
        if (w.sign() > 0) sum += t; else sum -= t;
    }
    return exact_divide(sum, den);
}

Poly iota_push_roots(const Poly& x, const BundleDescriptor& bd) {
    Poly y = bd.pullback(x);
    if (y.is_zero()) return Poly();
    int trunc = std::max(0, y.max_degree()) + bd.fibre_dimension();
    if (trunc % 2) ++trunc;
    Poly td(1);
    for (auto& a : bd.H_positive_roots) td = (td * todd_factor(a, trunc)).truncate(trunc);
    return kappa_push(y * td, bd.G);
}

Poly iota_push(const Poly& x, const BundleDescriptor& bd) {
    return invariant_express(iota_push_roots(x, bd), bd.G);
}

namespace {

void monomials_upto(const std::vector<std::string>& gens, std::size_t i, int budget, Poly cur,
                    std::vector<Poly>& out) {
    if (i == gens.size()) {
        out.push_back(cur);
        return;
    }
    Poly g = Poly::var(gens[i]);
    int d = g.degree();
    for (int k = 0; k * d <= budget; ++k) {
        monomials_upto(gens, i + 1, budget - k * d, cur, out);
        cur *= g;
        if (d == 0) break;
    }
}

}  // namespace

std::vector<FibreIntegral> fibre_integral_table(const BundleDescriptor& bd, int max_degree) {
    if (max_degree % 2) throw std::invalid_argument("max_degree must be even");
    std::vector<std::string> gens;
    for (auto& [name, p] : bd.generators) gens.push_back(name);
    std::vector<Poly> monos;
    monomials_upto(gens, 0, max_degree, Poly(1), monos);
    std::sort(monos.begin(), monos.end(), [](const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.str() < b.str();
    });
    std::vector<FibreIntegral> out;
    for (auto& m : monos) out.push_back({m, iota_push(m, bd)});
    return out;
}

}  // namespace twistor
