#include "twistor/root_weyl.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace twistor {

namespace {

Poly x(int i) { return Poly::root(i); }

int perm_sign(const std::vector<int>& p) {
    int s = 1;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) seen[j] = true, ++len;
        if (len % 2 == 0) s = -s;
    }
    return s;
}

WeylElement identity(int n) {
    WeylElement w;
    w.perm.resize(n);
    std::iota(w.perm.begin(), w.perm.end(), 0);
    w.flips.assign(n, false);
    return w;
}

// a after b
WeylElement compose(const WeylElement& a, const WeylElement& b) {
    int n = static_cast<int>(a.perm.size());
    WeylElement w = identity(n);
    for (int i = 0; i < n; ++i) {
        int j = b.perm[i];
        w.perm[i] = a.perm[j];
        w.flips[i] = b.flips[i] != a.flips[j];
    }
    return w;
}

bool same(const WeylElement& a, const WeylElement& b) {
    return a.perm == b.perm && a.flips == b.flips;
}

std::vector<WeylElement> generators(const RootSystem& rs) {
    std::vector<WeylElement> g;
    int n = rs.rank;
    for (int i = 0; i + 1 < n; ++i) {
        WeylElement w = identity(n);
        std::swap(w.perm[i], w.perm[i + 1]);
        g.push_back(w);
    }
    if (rs.family == Family::B && n >= 1) {
        WeylElement w = identity(n);
        w.flips[n - 1] = true;
        g.push_back(w);
    }
    if (rs.family == Family::D && n >= 2) {
        WeylElement w = identity(n);
        w.flips[n - 1] = w.flips[n - 2] = true;
        g.push_back(w);
    }
    return g;
}

std::string indexed(const std::string& base, int k, int degree) {
    std::string name = base + std::to_string(k);
    register_var(name, degree);
    return name;
}

// Exponents of x1..x_n in m, and the remaining (non-root) part.
void split_roots(const Monomial& m, int n, std::vector<std::uint32_t>& ex, Monomial& rest) {
    ex.assign(n, 0);
    rest.clear();
    for (auto& [id, e] : m) {
        const Variable& v = var_info(id);
        if (v.kind == VarKind::chern_root) {
            if (v.root_index > n) throw NotInvariant("variable " + v.name + " outside the root system");
            ex[v.root_index - 1] = e;
        } else {
            rest.emplace_back(id, e);
        }
    }
}

Poly elementary(int n, int k) {
    // e_k(x1..xn) by the generating product
    std::vector<Poly> e(k + 1);
    e[0] = Poly(1);
    for (int i = 1; i <= n; ++i)
        for (int j = std::min(i, k); j >= 1; --j) e[j] += e[j - 1] * x(i);
    return e[k];
}

// Symmetric polynomial in x1..xn to a polynomial in the named elementary generators.
Poly symmetric_reduce(Poly p, int n, const std::vector<std::string>& names) {
    std::vector<Poly> el(n + 1);
    for (int k = 1; k <= n; ++k) el[k] = elementary(n, k);
    Poly out;
    std::vector<std::uint32_t> ex;
    Monomial rest;
    while (!p.is_zero()) {
        auto [m, c] = p.leading();
        split_roots(m, n, ex, rest);
        Poly sub = Poly::monomial(rest, c), gen = Poly::monomial(rest, c);
        for (int k = 1; k <= n; ++k) {
            std::uint32_t next = k < n ? ex[k] : 0;
            if (ex[k - 1] < next) throw NotInvariant("polynomial is not symmetric");
            std::uint32_t d = ex[k - 1] - next;
            if (d) {
                sub *= el[k].pow(d);
                gen *= Poly::var(names[k - 1]).pow(d);
            }
        }
        p -= sub;
        out += gen;
    }
    return out;
}

}  // namespace

std::string euler_name(int n) {
    if (n == 3) return "chi";
    std::string name = "euler" + std::to_string(n);
    register_var(name, 2 * n);
    return name;
}

RootSystem RootSystem::make(Family f, int rank) {
    if (rank < 1) throw std::invalid_argument("rank must be positive");
    RootSystem rs{f, rank, {}};
    for (int i = 1; i <= rank; ++i)
        for (int j = i + 1; j <= rank; ++j) {
            rs.positive_roots.push_back(x(i) - x(j));
            if (f != Family::A) rs.positive_roots.push_back(x(i) + x(j));
        }
    if (f == Family::B)
        for (int i = 1; i <= rank; ++i) rs.positive_roots.push_back(x(i));
    return rs;
}

Poly RootSystem::root_product() const {
    Poly p(1);
    for (auto& r : positive_roots) p *= r;
    return p;
}

std::string RootSystem::name() const {
    switch (family) {
        case Family::A: return "A" + std::to_string(rank - 1) + "(" + std::to_string(rank) + " vars)";
        case Family::B: return "B" + std::to_string(rank);
        case Family::D: return "D" + std::to_string(rank);
    }
    return "?";
}

int WeylElement::sign() const {
    int s = perm_sign(perm);
    for (bool f : flips)
        if (f) s = -s;
    return s;
}

std::vector<WeylElement> weyl_elements(const RootSystem& rs) {
    if (rs.rank > 8) throw RankTooLarge("Weyl group enumeration is limited to rank 8");
    int n = rs.rank;
    std::vector<WeylElement> out;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            int bits = __builtin_popcount(mask);
            if (rs.family == Family::A && mask) continue;
            if (rs.family == Family::D && bits % 2) continue;
            WeylElement w{perm, std::vector<bool>(n)};
            for (int i = 0; i < n; ++i) w.flips[i] = (mask >> i) & 1u;
            out.push_back(std::move(w));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Poly weyl_act(const WeylElement& w, const Poly& p) {
    int n = static_cast<int>(w.perm.size());
    std::vector<VarId> target(n);
    for (int i = 0; i < n; ++i) target[i] = root_var(w.perm[i] + 1);
    return p.map_monomials([&](const Monomial& m) {
        Monomial r;
        Rational s = 1;
        for (auto& [id, e] : m) {
            const Variable& v = var_info(id);
            if (v.kind == VarKind::chern_root && v.root_index <= n) {
                int i = v.root_index - 1;
                r.emplace_back(target[i], e);
                if (w.flips[i] && (e % 2)) s = -s;
            } else {
                r.emplace_back(id, e);
            }
        }
        std::sort(r.begin(), r.end());
        return std::make_pair(r, s);
    });
}

std::vector<std::string> invariant_names(const RootSystem& rs) {
    std::vector<std::string> names;
    int n = rs.rank;
    switch (rs.family) {
        case Family::A:
            for (int k = 1; k <= n; ++k) names.push_back(indexed("c", k, 2 * k));
            break;
        case Family::B:
            for (int k = 1; k <= n; ++k) names.push_back(indexed("p", k, 4 * k));
            break;
        case Family::D:
            for (int k = 1; k < n; ++k) names.push_back(indexed("p", k, 4 * k));
            names.push_back(euler_name(n));
            break;
    }
    return names;
}

std::map<std::string, Poly> invariant_generators(const RootSystem& rs) {
    std::map<std::string, Poly> g;
    int n = rs.rank;
    auto names = invariant_names(rs);
    if (rs.family == Family::A) {
        for (int k = 1; k <= n; ++k) g[names[k - 1]] = elementary(n, k);
        return g;
    }
    std::map<VarId, Poly> sq;
    for (int i = 1; i <= n; ++i) sq[root_var(i)] = x(i) * x(i);
    int count = rs.family == Family::B ? n : n - 1;
    for (int k = 1; k <= count; ++k) g[names[k - 1]] = elementary(n, k).substitute(sq);
    if (rs.family == Family::D) {
        Poly e(1);
        for (int i = 1; i <= n; ++i) e *= x(i);
        g[euler_name(n)] = e;
    }
    return g;
}

bool is_weyl_invariant(const Poly& p, const RootSystem& rs) {
    for (auto& w : generators(rs))
        if (weyl_act(w, p) != p) return false;
    return true;
}

Poly invariant_express(const Poly& p, const RootSystem& rs) {
    if (!is_weyl_invariant(p, rs)) throw NotInvariant("polynomial is not invariant under W(" + rs.name() + ")");
    int n = rs.rank;
    auto names = invariant_names(rs);
    Poly out;
    if (rs.family == Family::A) {
        out = symmetric_reduce(p, n, names);
    } else {
        std::vector<std::string> pn;
        for (int k = 1; k <= n; ++k) pn.push_back(indexed("p", k, 4 * k));
        // split into all-even and all-odd root exponent parts, then halve exponents
        Poly even, odd;
        std::vector<std::uint32_t> ex;
        Monomial rest;
        for (auto& [m, c] : p.terms()) {
            split_roots(m, n, ex, rest);
            bool all_even = std::all_of(ex.begin(), ex.end(), [](auto e) { return e % 2 == 0; });
            bool all_odd = std::all_of(ex.begin(), ex.end(), [](auto e) { return e % 2 == 1; });
            if (!all_even && !(all_odd && rs.family == Family::D))
                throw NotInvariant("mixed-parity monomial in " + rs.name() + " invariant");
            Monomial half = rest;
            for (int i = 0; i < n; ++i) {
                std::uint32_t e = all_even ? ex[i] / 2 : (ex[i] - 1) / 2;
                if (e) half.emplace_back(root_var(i + 1), e);
            }
            std::sort(half.begin(), half.end());
            (all_even ? even : odd) += Poly::monomial(half, c);
        }
        Poly re = symmetric_reduce(even, n, pn);
        Poly ro = symmetric_reduce(odd, n, pn);
        if (rs.family == Family::D) {
            Poly chi = Poly::var(euler_name(n));
            std::map<VarId, Poly> top{{var_id(pn[n - 1]), chi * chi}};
            out = re.substitute(top) + chi * ro.substitute(top);
        } else {
            out = re;
        }
    }
    if (invariant_substitute(out, rs) != p)
        throw ExpressFailure("invariant expression does not substitute back");
    return out;
}

Poly invariant_substitute(const Poly& p, const RootSystem& rs) {
    std::map<VarId, Poly> s;
    for (auto& [name, g] : invariant_generators(rs)) s[var_id(name)] = g;
    return p.substitute(s);
}

Poly BundleDescriptor::pullback(const Poly& x) const {
    std::map<VarId, Poly> s;
    for (auto& [name, g] : generators) s[var_id(name)] = g;
    return x.substitute(s);
}

const std::vector<std::string>& builtin_bundle_names() {
    static const std::vector<std::string> names = {"so6_u3", "so6_so4xso2", "u3_u2xu1",
                                                   "so3_so2", "so4_u2", "so4_so2xso2"};
    return names;
}

BundleDescriptor builtin_bundle(const std::string& name) {
    if (name == "so6_u3") {
        return {name, RootSystem::make(Family::D, 3),
                {x(1) - x(2), x(1) - x(3), x(2) - x(3)},
                {{"c1", x(1) + x(2) + x(3)},
                 {"c2", x(1) * x(2) + x(1) * x(3) + x(2) * x(3)},
                 {"c3", x(1) * x(2) * x(3)}}};
    }
    if (name == "so6_so4xso2") {
        return {name, RootSystem::make(Family::D, 3), {x(1) - x(2), x(1) + x(2)},
                {{"e", x(1) * x(2)}, {"t", x(3)}}};
    }
    if (name == "u3_u2xu1") {
        return {name, RootSystem::make(Family::A, 3), {x(1) - x(2)},
                {{"cA1", x(1) + x(2)}, {"cA2", x(1) * x(2)}, {"cB1", x(3)}}};
    }
    if (name == "so3_so2") {
        return {name, RootSystem::make(Family::B, 1), {}, {{"t", x(1)}}};
    }
    if (name == "so4_u2") {
        return {name, RootSystem::make(Family::D, 2), {x(1) - x(2)},
                {{"c1", x(1) + x(2)}, {"c2", x(1) * x(2)}}};
    }
    if (name == "so4_so2xso2") {
        return {name, RootSystem::make(Family::D, 2), {}, {{"ta", x(1)}, {"tb", x(2)}}};
    }
    throw std::invalid_argument("unknown bundle: " + name);
}

std::vector<WeylElement> subgroup_elements(const BundleDescriptor& bd) {
    int n = bd.G.rank;
    std::vector<WeylElement> gens;
    for (auto& r : bd.H_positive_roots) {
        // reflection in a root of the form x_i - x_j, x_i + x_j or x_i
        std::vector<std::pair<int, Rational>> lin;
        for (auto& [m, c] : r.terms()) lin.emplace_back(var_info(m[0].first).root_index - 1, c);
        WeylElement w = identity(n);
        if (lin.size() == 1) {
            w.flips[lin[0].first] = true;
        } else {
            int i = lin[0].first, j = lin[1].first;
            std::swap(w.perm[i], w.perm[j]);
            if (lin[0].second == lin[1].second) w.flips[i] = w.flips[j] = true;
        }
        gens.push_back(w);
    }
    std::vector<WeylElement> group{identity(n)};
    for (std::size_t k = 0; k < group.size(); ++k)
        for (auto& g : gens) {
            WeylElement h = compose(g, group[k]);
            if (std::none_of(group.begin(), group.end(), [&](auto& e) { return same(e, h); }))
                group.push_back(h);
        }
    return group;
}

}  // namespace twistor
