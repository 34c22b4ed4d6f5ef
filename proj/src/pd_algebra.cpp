#include "twistor/pd_algebra.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace twistor {

namespace {

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (auto& x : v) s += (s.empty() ? "" : "; ") + x;
    return s;
}

}  // namespace

ValidationFailure::ValidationFailure(std::vector<std::string> w)
    : std::runtime_error("validation failed: " + join(w)), witnesses(std::move(w)) {}

int koszul(int a, int b) { return (a % 2 != 0 && b % 2 != 0) ? -1 : 1; }

AlgebraElement AlgebraElement::basis(std::size_t n, std::size_t i, const Poly& coef) {
    AlgebraElement e(n);
    e.c.at(i) = coef;
    return e;
}

bool AlgebraElement::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Poly& p) { return p.is_zero(); });
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    if (c.size() != o.c.size()) throw std::invalid_argument("element size mismatch");
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    if (c.size() != o.c.size()) throw std::invalid_argument("element size mismatch");
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(const Poly& s) {
    for (auto& p : c) p *= s;
    return *this;
}

AlgebraElement AlgebraElement::substitute(const std::map<VarId, Poly>& s) const {
    AlgebraElement r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i].substitute(s);
    return r;
}

PDAlgebra::PDAlgebra(std::string n, std::vector<std::string> l, std::vector<int> d, std::size_t u)
    : name(std::move(n)), labels(std::move(l)), degrees(std::move(d)), unit(u) {
    std::size_t N = labels.size();
    structure.assign(N * N * N, Poly());
    integral.assign(N, Poly());
    top_degree = degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
}

std::size_t PDAlgebra::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    throw std::invalid_argument("unknown basis label '" + label + "' in " + name);
}

int PDAlgebra::top_index() const {
    for (std::size_t i = 0; i < dim(); ++i)
        if (degrees[i] == top_degree && !integral[i].is_zero()) return static_cast<int>(i);
    return -1;
}

AlgebraElement PDAlgebra::mul(const AlgebraElement& a, const AlgebraElement& b) const {
    std::size_t n = dim();
    AlgebraElement r(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (a.c[j].is_zero()) continue;
        for (std::size_t k = 0; k < n; ++k) {
            if (b.c[k].is_zero()) continue;
            Poly ab = a.c[j] * b.c[k];
            for (std::size_t i = 0; i < n; ++i) {
                const Poly& s = C(j, k, i);
                if (!s.is_zero()) r.c[i] += ab * s;
            }
        }
    }
    return r;
}

AlgebraElement PDAlgebra::pow(const AlgebraElement& a, unsigned k) const {
    AlgebraElement r = one();
    for (unsigned i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

Poly PDAlgebra::integrate(const AlgebraElement& a) const {
    Poly s;
    for (std::size_t i = 0; i < dim(); ++i)
        if (!a.c[i].is_zero() && !integral[i].is_zero()) s += a.c[i] * integral[i];
    return s;
}

int PDAlgebra::degree_of(const AlgebraElement& a) const {
    int d = -1;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (a.c[i].is_zero()) continue;
        if (d >= 0 && d != degrees[i]) return -1;
        d = degrees[i];
    }
    return d;
}

std::string PDAlgebra::str(const AlgebraElement& a) const {
    std::string s;
    for (std::size_t i = 0; i < dim(); ++i) {
        if (a.c[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        std::string coef = a.c[i].str();
        if (coef == "1") s += labels[i];
        else if (a.c[i].size() == 1) s += coef + "*" + labels[i];
        else s += "(" + coef + ")*" + labels[i];
    }
    return s.empty() ? "0" : s;
}

PolyMatrix PDAlgebra::pairing() const {
    std::size_t n = dim();
    PolyMatrix g(n, std::vector<Poly>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Poly s;
            for (std::size_t i = 0; i < n; ++i)
                if (!C(a, b, i).is_zero() && !integral[i].is_zero()) s += C(a, b, i) * integral[i];
            g[a][b] = s;
        }
    return g;
}

PDAlgebra PDAlgebra::substitute(const std::map<VarId, Poly>& s) const {
    PDAlgebra r = *this;
    for (auto& p : r.structure) p = p.substitute(s);
    for (auto& p : r.integral) p = p.substitute(s);
    r.chi = chi.substitute(s);
    return r;
}

ValidationReport validate_report(const PDAlgebra& A) {
    ValidationReport rep;
    std::size_t n = A.dim();
    auto fail = [&](const std::string& s) {
        rep.ok = false;
        rep.failures.push_back(s);
    };
    auto& L = A.labels;
    if (A.degrees.size() != n || A.integral.size() != n || A.structure.size() != n * n * n) {
        fail("inconsistent table sizes");
        return rep;
    }
    if (A.unit >= n) {
        fail("unit index out of range");
        return rep;
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) {
                const Poly& c = A.C(j, k, i);
                if (c.is_zero()) continue;
                if (A.degrees[i] != A.degrees[j] + A.degrees[k])
                    fail("degree: " + L[j] + "*" + L[k] + " has a component along " + L[i]);
                if (c != Poly(koszul(A.degrees[j], A.degrees[k])) * A.C(k, j, i))
                    fail("graded commutativity: (" + L[j] + "," + L[k] + ")");
            }
    for (std::size_t i = 0; i < n; ++i) {
        AlgebraElement x = A.basis(i);
        if (A.mul(A.one(), x) != x || A.mul(x, A.one()) != x) fail("unit law: " + L[i]);
        if (!A.integral[i].is_zero() && A.degrees[i] != A.top_degree)
            fail("integral nonzero below top degree: " + L[i]);
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            AlgebraElement ab = A.mul(A.basis(a), A.basis(b));
            for (std::size_t c = 0; c < n; ++c) {
                AlgebraElement lhs = A.mul(ab, A.basis(c));
                AlgebraElement rhs = A.mul(A.basis(a), A.mul(A.basis(b), A.basis(c)));
                if (lhs != rhs) fail("associativity: (" + L[a] + "," + L[b] + "," + L[c] + ")");
            }
        }
    try {
        pairing_inverse(A);
    } catch (const Singular& e) {
        fail(std::string("Poincare pairing degenerate: ") + e.what());
    }
    rep.betti.assign(A.top_degree + 1, 0);
    for (int d : A.degrees) {
        if (d >= 0 && d <= A.top_degree) rep.betti[d]++;
        rep.euler_characteristic += (d % 2 ? -1 : 1);
    }
    if (A.chi.is_constant() && A.chi.constant_term() != rep.euler_characteristic)
        rep.warnings.push_back("model chi " + A.chi.str() + " differs from alternating Betti sum " +
                               std::to_string(rep.euler_characteristic));
    return rep;
}

ValidationReport validate(const PDAlgebra& A) {
    ValidationReport r = validate_report(A);
    if (!r.ok) throw ValidationFailure(r.failures);
    return r;
}

PolyMatrix invert(const PolyMatrix& m) {
    std::size_t n = m.size();
    PolyMatrix a = m, inv(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = Poly(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        for (std::size_t r = col; r < n; ++r)
            if (!a[r][col].is_zero() && a[r][col].is_constant()) {
                piv = r;
                break;
            }
        if (piv == n) throw Singular("no invertible pivot in column " + std::to_string(col));
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rational s = 1 / a[col][col].constant_term();
        for (auto& p : a[col]) p *= s;
        for (auto& p : inv[col]) p *= s;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Poly f = a[r][col];
            for (std::size_t k = 0; k < n; ++k) {
                if (!a[col][k].is_zero()) a[r][k] -= f * a[col][k];
                if (!inv[col][k].is_zero()) inv[r][k] -= f * inv[col][k];
            }
        }
    }
    return inv;
}

PolyMatrix pairing_inverse(const PDAlgebra& A) { return invert(A.pairing()); }

PDAlgebra kunneth_tensor(const PDAlgebra& A, const PDAlgebra& B) {
    std::size_t na = A.dim(), nb = B.dim();
    std::vector<std::string> labels;
    std::vector<int> degs;
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b) {
            labels.push_back(A.labels[a] + "(x)" + B.labels[b]);
            degs.push_back(A.degrees[a] + B.degrees[b]);
        }
    PDAlgebra T(A.name + "(x)" + B.name, labels, degs, A.unit * nb + B.unit);
    T.top_degree = A.top_degree + B.top_degree;
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b)
            for (std::size_t c = 0; c < na; ++c)
                for (std::size_t d = 0; d < nb; ++d) {
                    int s = koszul(B.degrees[b], A.degrees[c]);
                    for (std::size_t i = 0; i < na; ++i) {
                        const Poly& x = A.C(a, c, i);
                        if (x.is_zero()) continue;
                        for (std::size_t k = 0; k < nb; ++k) {
                            const Poly& y = B.C(b, d, k);
                            if (y.is_zero()) continue;
                            T.C(a * nb + b, c * nb + d, i * nb + k) += Poly(s) * x * y;
                        }
                    }
                }
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b) T.integral[a * nb + b] = A.integral[a] * B.integral[b];
    T.chi = A.chi * B.chi;
    T.p1_zero = A.p1_zero && B.p1_zero;
    return T;
}

void TensorElement::add(const std::vector<std::size_t>& idx, const Poly& c) {
    if (idx.size() != arity) throw ArityMismatch("tensor index arity mismatch");
    if (c.is_zero()) return;
    auto [it, ins] = terms.emplace(idx, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
    if (o.arity != arity) throw ArityMismatch("tensor arity mismatch");
    for (auto& [k, v] : o.terms) add(k, v);
    return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) {
    if (o.arity != arity) throw ArityMismatch("tensor arity mismatch");
    for (auto& [k, v] : o.terms) add(k, -v);
    return *this;
}

TensorElement& TensorElement::operator*=(const Poly& s) {
    if (s.is_zero()) {
        terms.clear();
        return *this;
    }
    for (auto& [k, v] : terms) v *= s;
    return *this;
}

TensorElement tensor_of(const PDAlgebra& A, const std::vector<AlgebraElement>& factors) {
    TensorElement t(factors.size());
    std::vector<std::size_t> idx(factors.size());
    std::vector<Poly> coef(factors.size() + 1);
    coef[0] = Poly(1);
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == factors.size()) {
            t.add(idx, coef[pos]);
            return;
        }
        for (std::size_t i = 0; i < A.dim(); ++i) {
            if (factors[pos].c[i].is_zero()) continue;
            idx[pos] = i;
            coef[pos + 1] = coef[pos] * factors[pos].c[i];
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return t;
}

TensorElement tensor_mul(const PDAlgebra& A, const TensorElement& s, const TensorElement& t) {
    if (s.arity != t.arity) throw ArityMismatch("tensor arity mismatch");
    std::size_t k = s.arity;
    TensorElement out(k);
    for (auto& [si, sc] : s.terms)
        for (auto& [ti, tc] : t.terms) {
            int sign = 1;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < i; ++j)
                    sign *= koszul(A.degrees[si[i]], A.degrees[ti[j]]);
            std::vector<AlgebraElement> prods;
            for (std::size_t i = 0; i < k; ++i) prods.push_back(A.mul(A.basis(si[i]), A.basis(ti[i])));
            TensorElement p = tensor_of(A, prods);
            p *= Poly(sign) * sc * tc;
            out += p;
        }
    return out;
}

Poly tensor_integrate(const PDAlgebra& A, const TensorElement& T,
                      const std::vector<AlgebraElement>& against) {
    std::size_t k = T.arity;
    if (against.size() != k) throw ArityMismatch("tensor_integrate: arity mismatch");
    // split each insertion into homogeneous pieces
    std::vector<std::map<int, AlgebraElement>> pieces(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t b = 0; b < A.dim(); ++b) {
            if (against[i].c[b].is_zero()) continue;
            auto it = pieces[i].try_emplace(A.degrees[b], A.zero()).first;
            it->second.c[b] = against[i].c[b];
        }
    // integral of x_t times each piece
    std::vector<std::map<int, std::vector<Poly>>> integ(k);
    for (std::size_t i = 0; i < k; ++i)
        for (auto& [d, el] : pieces[i]) {
            std::vector<Poly> v(A.dim());
            for (std::size_t t = 0; t < A.dim(); ++t) v[t] = A.integrate(A.mul(A.basis(t), el));
            integ[i][d] = v;
        }
    Poly total;
    for (auto& [idx, coef] : T.terms) {
        // sum over the degree choices of the insertions
        std::vector<Poly> acc{coef};
        std::vector<std::vector<int>> degs{{}};
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<Poly> nacc;
            std::vector<std::vector<int>> ndegs;
            for (std::size_t p = 0; p < acc.size(); ++p)
                for (auto& [d, v] : integ[i]) {
                    if (v[idx[i]].is_zero()) continue;
                    nacc.push_back(acc[p] * v[idx[i]]);
                    auto dd = degs[p];
                    dd.push_back(d);
                    ndegs.push_back(dd);
                }
            acc = std::move(nacc);
            degs = std::move(ndegs);
        }
        for (std::size_t p = 0; p < acc.size(); ++p) {
            int sign = 1;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = i + 1; j < k; ++j) sign *= koszul(degs[p][i], A.degrees[idx[j]]);
            total += Poly(sign) * acc[p];
        }
    }
    return total;
}

std::string tensor_str(const PDAlgebra& A, const TensorElement& T) {
    if (T.terms.empty()) return "0";
    std::string s;
    for (auto& [idx, c] : T.terms) {
        if (!s.empty()) s += "\n";
        std::string f;
        for (std::size_t i = 0; i < idx.size(); ++i) f += (i ? " (x) " : "") + A.labels[idx[i]];
        s += "(" + c.str() + ") " + f;
    }
    return s;
}

TensorElement symmetrize(const PDAlgebra& A, const std::vector<AlgebraElement>& factors) {
    std::size_t k = factors.size();
    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = i;
    std::vector<std::vector<AlgebraElement>> seen;
    TensorElement out(k);
    do {
        std::vector<AlgebraElement> arr;
        for (auto p : perm) arr.push_back(factors[p]);
        if (std::find(seen.begin(), seen.end(), arr) != seen.end()) continue;
        seen.push_back(arr);
        out += tensor_of(A, arr);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

namespace {

Poly parse_coef(const nlohmann::json& j) {
    if (j.is_number_integer()) return Poly(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return parse_poly(j.get<std::string>());
    throw ValidationFailure({"coefficient must be an integer or an expression string"});
}

}  // namespace

PDAlgebra parse_model(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationFailure({std::string("model file is not valid JSON: ") + e.what()});
    }
    try {
        int version = j.value("schema_version", 1);
        if (version != 1) throw ValidationFailure({"unsupported schema_version " + std::to_string(version)});
        std::vector<std::string> labels;
        std::vector<int> degs;
        for (auto& b : j.at("basis")) {
            labels.push_back(b.at("label").get<std::string>());
            degs.push_back(b.at("degree").get<int>());
        }
        std::set<std::string> uniq(labels.begin(), labels.end());
        if (uniq.size() != labels.size()) throw ValidationFailure({"duplicate basis labels"});
        PDAlgebra A(j.value("name", "model"), labels, degs, 0);
        A.unit = A.index_of(j.value("unit", labels.empty() ? "" : labels[0]));
        bool graded_fill = j.value("fill", std::string("graded")) == "graded";
        std::map<VarId, Poly> params;
        if (j.contains("parameters"))
            for (auto& [name, v] : j.at("parameters").items()) params[var_id(name)] = parse_coef(v);
        std::set<std::pair<std::size_t, std::size_t>> given;
        for (auto& p : j.value("products", nlohmann::json::array())) {
            std::size_t a = A.index_of(p.at(0).get<std::string>());
            std::size_t b = A.index_of(p.at(1).get<std::string>());
            std::size_t c = A.index_of(p.at(2).get<std::string>());
            Poly coef = p.size() > 3 ? parse_coef(p.at(3)) : Poly(1);
            A.C(a, b, c) += coef;
            given.emplace(a, b);
        }
        if (graded_fill) {
            for (std::size_t i = 0; i < A.dim(); ++i) {
                if (!given.count({A.unit, i})) A.C(A.unit, i, i) = Poly(1);
                if (!given.count({i, A.unit})) A.C(i, A.unit, i) = Poly(1);
            }
            for (auto [a, b] : given)
                if (!given.count({b, a}))
                    for (std::size_t c = 0; c < A.dim(); ++c)
                        A.C(b, a, c) = Poly(koszul(degs[a], degs[b])) * A.C(a, b, c);
        }
        for (auto& p : j.at("integral")) A.integral[A.index_of(p.at(0).get<std::string>())] = parse_coef(p.at(1));
        if (j.contains("top_degree")) A.top_degree = j.at("top_degree").get<int>();
        if (j.contains("chi")) A.chi = parse_coef(j.at("chi"));
        A.p1_zero = j.value("p1_zero", true);
        if (!params.empty()) A = A.substitute(params);
        return A;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationFailure({std::string("malformed model file: ") + e.what()});
    } catch (const std::invalid_argument& e) {
        throw ValidationFailure({e.what()});
    } catch (const ParseError& e) {
        throw ValidationFailure({e.what()});
    }
}

PDAlgebra load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationFailure({"cannot open model file " + path});
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string model_to_json(const PDAlgebra& A) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["name"] = A.name;
    j["basis"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < A.dim(); ++i)
        j["basis"].push_back({{"label", A.labels[i]}, {"degree", A.degrees[i]}});
    j["unit"] = A.labels[A.unit];
    j["fill"] = "none";
    j["top_degree"] = A.top_degree;
    j["products"] = nlohmann::ordered_json::array();
    for (std::size_t a = 0; a < A.dim(); ++a)
        for (std::size_t b = 0; b < A.dim(); ++b)
            for (std::size_t c = 0; c < A.dim(); ++c)
                if (!A.C(a, b, c).is_zero())
                    j["products"].push_back({A.labels[a], A.labels[b], A.labels[c], A.C(a, b, c).str()});
    j["integral"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < A.dim(); ++i)
        if (!A.integral[i].is_zero()) j["integral"].push_back({A.labels[i], A.integral[i].str()});
    j["chi"] = A.chi.str();
    j["p1_zero"] = A.p1_zero;
    return j.dump(2);
}

PDAlgebra sample_model(const std::string& name) {
    if (name == "B0") {
        return parse_model(R"({"name":"B0","basis":[{"label":"1","degree":0},{"label":"vol","degree":6}],
            "unit":"1","products":[],"integral":[["vol",1]],"chi":"chi"})");
    }
    if (name == "B1") {
        return parse_model(R"({"name":"B1","basis":[{"label":"1","degree":0},{"label":"u","degree":2},
            {"label":"v","degree":4},{"label":"vol","degree":6}],"unit":"1",
            "products":[["u","u","v","s"],["u","v","vol",1]],"integral":[["vol",1]],"chi":"chi"})");
    }
    if (name == "Bodd") {
        return parse_model(R"({"name":"Bodd","basis":[{"label":"1","degree":0},{"label":"w","degree":3},
            {"label":"w'","degree":3},{"label":"vol","degree":6}],"unit":"1",
            "products":[["w","w'","vol",1]],"integral":[["vol",1]],"chi":"chi"})");
    }
    if (name == "B4") {
        return parse_model(R"({"name":"B4","basis":[{"label":"1","degree":0},{"label":"vol","degree":4}],
            "unit":"1","products":[],"integral":[["vol",1]],"chi":"chi"})");
    }
    throw std::invalid_argument("unknown sample model: " + name);
}

}  // namespace twistor
