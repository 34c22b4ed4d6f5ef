#include "twistor/poly.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>
#include <unordered_map>

#include "twistor/expr.hpp"

namespace twistor {

namespace {

constexpr std::size_t kMaxVars = 1 << 14;

struct Registry {
    std::array<Variable, kMaxVars> vars;
    std::atomic<std::size_t> count{0};
    std::unordered_map<std::string, VarId> by_name;
    std::mutex mu;

    Registry() {
        for (int i = 1; i <= 16; ++i) add("x" + std::to_string(i), VarKind::chern_root, 2, i);
        const std::pair<const char*, int> known[] = {
            {"alpha", 2}, {"c1", 2}, {"cA1", 2}, {"c2", 4}, {"c3", 6}, {"c4", 8}, {"cA2", 4}, {"cB1", 2},
            {"chi", 6},   {"e", 4},  {"h", 2},  {"lambda", 0}, {"p1", 4}, {"p2", 8},
            {"p3", 12},   {"p4", 16}, {"q", 4}, {"t", 2}, {"ta", 2}, {"tb", 2}};
        for (auto& [n, d] : known) add(n, VarKind::parameter, d, 0);
    }

    VarId add(const std::string& name, VarKind kind, int degree, int root_index) {
        std::size_t n = count.load();
        if (n >= kMaxVars) throw std::runtime_error("variable table full");
        vars[n] = Variable{name, kind, degree, root_index};
        by_name.emplace(name, static_cast<VarId>(n));
        count.store(n + 1);
        return static_cast<VarId>(n);
    }
};

Registry& registry() {
    static Registry r;
    return r;
}

bool is_root_name(const std::string& name, int& idx) {
    if (name.size() < 2 || name[0] != 'x') return false;
    if (!std::all_of(name.begin() + 1, name.end(), ::isdigit) || name[1] == '0') return false;
    idx = std::stoi(name.substr(1));
    return idx > 0;
}

// Order used for printing: roots by index, then parameters by name.
bool var_before(VarId a, VarId b) {
    const Variable& va = var_info(a);
    const Variable& vb = var_info(b);
    if (va.kind != vb.kind) return va.kind == VarKind::chern_root;
    if (va.kind == VarKind::chern_root) return va.root_index < vb.root_index;
    return va.name < vb.name;
}

Monomial canonical_order(const Monomial& m) {
    Monomial c = m;
    std::sort(c.begin(), c.end(), [](auto& x, auto& y) { return var_before(x.first, y.first); });
    return c;
}

// true if a should be printed before b
bool print_before(const Monomial& a, const Monomial& b) {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da > db;
    Monomial ca = canonical_order(a), cb = canonical_order(b);
    std::size_t i = 0;
    for (; i < ca.size() && i < cb.size(); ++i) {
        if (ca[i].first != cb[i].first) return var_before(ca[i].first, cb[i].first);
        if (ca[i].second != cb[i].second) return ca[i].second > cb[i].second;
    }
    return ca.size() > cb.size();
}

}  // namespace

VarId var_id(const std::string& name) {
    Registry& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    auto it = r.by_name.find(name);
    if (it != r.by_name.end()) return it->second;
    int idx = 0;
    if (is_root_name(name, idx)) return r.add(name, VarKind::chern_root, 2, idx);
    return r.add(name, VarKind::parameter, 0, 0);
}

VarId register_var(const std::string& name, int degree) {
    Registry& r = registry();
    std::lock_guard<std::mutex> lock(r.mu);
    auto it = r.by_name.find(name);
    if (it != r.by_name.end()) {
        if (r.vars[it->second].degree != degree)
            throw std::invalid_argument("variable " + name + " already has degree " +
                                        std::to_string(r.vars[it->second].degree));
        return it->second;
    }
    return r.add(name, VarKind::parameter, degree, 0);
}

const Variable& var_info(VarId id) {
    Registry& r = registry();
    if (id >= r.count.load()) throw std::out_of_range("bad variable id");
    return r.vars[id];
}

VarId root_var(int i) { return var_id("x" + std::to_string(i)); }

bool MonoLess::operator()(const Monomial& a, const Monomial& b) const {
    std::size_t i = 0;
    for (; i < a.size() && i < b.size(); ++i) {
        if (a[i].first != b[i].first) return a[i].first > b[i].first;
        if (a[i].second != b[i].second) return a[i].second < b[i].second;
    }
    return a.size() < b.size();
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            r.push_back(b[j++]);
        } else {
            r.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i, ++j;
        }
    }
    return r;
}

std::uint32_t mono_exp(const Monomial& m, VarId v) {
    for (auto& [id, e] : m)
        if (id == v) return e;
    return 0;
}

bool mono_divides(const Monomial& d, const Monomial& m) {
    for (auto& [id, e] : d)
        if (mono_exp(m, id) < e) return false;
    return true;
}

Monomial mono_div(const Monomial& m, const Monomial& d) {
    Monomial r;
    for (auto& [id, e] : m) {
        std::uint32_t k = e - mono_exp(d, id);
        if (k) r.emplace_back(id, k);
    }
    return r;
}

int mono_degree(const Monomial& m) {
    int d = 0;
    for (auto& [id, e] : m) d += var_info(id).degree * static_cast<int>(e);
    return d;
}

Poly::Poly(long c) {
    if (c != 0) terms_.emplace(Monomial{}, Rational(c));
}

namespace {

// mpq_class(num, den) is not reduced; GMP arithmetic expects reduced input.
Rational reduced(const Rational& c) {
    Rational r = c;
    r.canonicalize();
    return r;
}

}  // namespace

Poly::Poly(const Rational& c) {
    Rational r = reduced(c);
    if (r != 0) terms_.emplace(Monomial{}, r);
}

Poly Poly::var(const std::string& name) { return var(var_id(name)); }

Poly Poly::var(VarId v) {
    Poly p;
    p.terms_.emplace(Monomial{{v, 1}}, Rational(1));
    return p;
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
    Poly p;
    p.add_term(m, c);
    return p;
}

void Poly::add_term(const Monomial& m, const Rational& c0) {
    Rational c = reduced(c0);
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Poly::constant_term() const { return coeff(Monomial{}); }

Rational Poly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::degree() const {
    if (terms_.empty()) return -1;
    int d = mono_degree(terms_.begin()->first);
    for (auto& [m, c] : terms_)
        if (mono_degree(m) != d) return -1;
    return d;
}

bool Poly::is_homogeneous() const { return terms_.empty() || degree() >= 0; }

int Poly::max_degree() const {
    int d = -1;
    for (auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;
}

Poly Poly::component(int deg) const {
    Poly r;
    for (auto& [m, c] : terms_)
        if (mono_degree(m) == deg) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
}

Poly Poly::truncate(int max_deg) const {
    Poly r;
    for (auto& [m, c] : terms_)
        if (mono_degree(m) <= max_deg) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
}

bool Poly::uses_roots() const {
    for (auto& [m, c] : terms_)
        for (auto& [id, e] : m)
            if (var_info(id).kind == VarKind::chern_root) return true;
    return false;
}

std::vector<VarId> Poly::variables() const {
    std::vector<VarId> v;
    for (auto& [m, c] : terms_)
        for (auto& [id, e] : m) v.push_back(id);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

Poly& Poly::operator+=(const Poly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (auto& [ma, ca] : a.terms_)
        for (auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c0) {
    Rational c = reduced(c0);
    if (c == 0) {
        terms_.clear();
    } else {
        for (auto& [m, v] : terms_) v *= c;
    }
    return *this;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [m, v] : r.terms_) v = -v;
    return r;
}

Poly Poly::pow(unsigned k) const {
    Poly r(1), b = *this;
    while (k) {
        if (k & 1) r *= b;
        k >>= 1;
        if (k) b *= b;
    }
    return r;
}

std::pair<Monomial, Rational> Poly::leading() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    auto it = terms_.rbegin();
    return {it->first, it->second};
}

Poly Poly::substitute(const std::map<VarId, Poly>& s) const {
    Poly r;
    std::map<std::pair<VarId, std::uint32_t>, Poly> powers;
    for (auto& [m, c] : terms_) {
        Poly t(c);
        Monomial rest;
        for (auto& [id, e] : m) {
            auto it = s.find(id);
            if (it == s.end()) {
                rest.emplace_back(id, e);
                continue;
            }
            auto key = std::make_pair(id, e);
            auto pit = powers.find(key);
            if (pit == powers.end()) pit = powers.emplace(key, it->second.pow(e)).first;
            t *= pit->second;
        }
        if (!rest.empty()) t *= Poly::monomial(rest, 1);
        r += t;
    }
    return r;
}

Poly Poly::substitute(const std::string& name, const Poly& value) const {
    return substitute(std::map<VarId, Poly>{{var_id(name), value}});
}

Poly Poly::map_monomials(
    const std::function<std::pair<Monomial, Rational>(const Monomial&)>& f) const {
    Poly r;
    for (auto& [m, c] : terms_) {
        auto [nm, k] = f(m);
        r.add_term(nm, c * k);
    }
    return r;
}

std::vector<Poly> Poly::coefficients_in(VarId v) const {
    std::vector<Poly> out;
    for (auto& [m, c] : terms_) {
        std::uint32_t k = mono_exp(m, v);
        Monomial rest;
        for (auto& p : m)
            if (p.first != v) rest.push_back(p);
        if (out.size() <= k) out.resize(k + 1);
        out[k].add_term(rest, c);
    }
    return out;
}

std::string rational_str(const Rational& r) { return r.get_str(); }

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Monomial, Rational>> ts(terms_.begin(), terms_.end());
    std::sort(ts.begin(), ts.end(),
              [](auto& a, auto& b) { return print_before(a.first, b.first); });
    std::string out;
    bool first = true;
    for (auto& [m, c] : ts) {
        Rational a = abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        std::string mono;
        for (auto& [id, e] : canonical_order(m)) {
            if (!mono.empty()) mono += "*";
            mono += var_info(id).name;
            if (e > 1) mono += "^" + std::to_string(e);
        }
        mpz_class num = a.get_num(), den = a.get_den();
        if (mono.empty()) {
            out += a.get_str();
        } else {
            if (num != 1) out += num.get_str() + "*";
            out += mono;
            if (den != 1) out += "/" + den.get_str();
        }
    }
    return out;
}

Poly poly_arith(const Poly& a, const Poly& b, ArithOp op) {
    switch (op) {
        case ArithOp::add: return a + b;
        case ArithOp::sub: return a - b;
        case ArithOp::mul: return a * b;
    }
    return {};
}

Poly exact_divide(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw std::invalid_argument("division by zero polynomial");
    auto [lm, lc] = den.leading();
    Poly rem = num, quot;
    while (!rem.is_zero()) {
        auto [m, c] = rem.leading();
        if (!mono_divides(lm, m)) throw NotDivisible("polynomial is not divisible: " + den.str());
        Poly t = Poly::monomial(mono_div(m, lm), c / lc);
        quot += t;
        rem -= t * den;
    }
    return quot;
}

std::vector<Rational> todd_coefficients(int n) {
    // a/(1-e^{-a}) = 1 / sum_k (-1)^k a^k/(k+1)!
    std::vector<Rational> s(n + 1), b(n + 1);
    mpz_class fact = 1;
    for (int k = 0; k <= n; ++k) {
        fact *= (k + 1);
        s[k] = Rational((k % 2 ? -1 : 1), 1) / Rational(fact);
    }
    b[0] = 1;
    for (int k = 1; k <= n; ++k) {
        Rational acc = 0;
        for (int j = 1; j <= k; ++j) acc += s[j] * b[k - j];
        b[k] = -acc;
    }
    return b;
}

Poly todd_factor(const Poly& root, int trunc_degree) {
    if (trunc_degree < 0 || trunc_degree % 2) throw std::invalid_argument("truncation degree must be even and >= 0");
    int d = root.degree();
    if (root.is_zero()) return Poly(1);
    if (d <= 0) throw std::invalid_argument("todd_factor needs a homogeneous root of positive degree");
    int n = trunc_degree / d;
    auto b = todd_coefficients(n);
    Poly r, p(1);
    for (int k = 0; k <= n; ++k) {
        r += p * b[k];
        p *= root;
    }
    return r;
}

Poly parse_poly(const std::string& text) {
    auto e = parse_expr(text, false);
    return eval_expr<Poly>(*e, [](const std::string& n, std::size_t) { return Poly::var(n); });
}

}  // namespace twistor
