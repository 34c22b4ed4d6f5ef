#pragma once

#include <map>
#include <string>
#include <vector>

#include "twistor/poly.hpp"

namespace twistor {

struct ValidationFailure : std::runtime_error {
    std::vector<std::string> witnesses;
    explicit ValidationFailure(std::vector<std::string> w);
};
struct Singular : MathError {
    using MathError::MathError;
};
struct ArityMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using PolyMatrix = std::vector<std::vector<Poly>>;

struct AlgebraElement {
    std::vector<Poly> c;

    AlgebraElement() = default;
    explicit AlgebraElement(std::size_t n) : c(n) {}
    static AlgebraElement basis(std::size_t n, std::size_t i, const Poly& coef = Poly(1));

    std::size_t size() const { return c.size(); }
    bool is_zero() const;
    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    AlgebraElement& operator*=(const Poly& s);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(const Poly& s, AlgebraElement a) { return a *= s; }
    friend AlgebraElement operator*(AlgebraElement a, const Poly& s) { return a *= s; }
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.c == b.c; }
    friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }
    AlgebraElement substitute(const std::map<VarId, Poly>& s) const;
};

class PDAlgebra {
public:
    std::string name;
    std::vector<std::string> labels;
    std::vector<int> degrees;
    std::size_t unit = 0;
    int top_degree = 0;
    std::vector<Poly> structure;  // x_j x_k = sum_i structure[(j*n+k)*n+i] x_i
    std::vector<Poly> integral;
    Poly chi = Poly::var("chi");  // Euler number carried by a base model
    bool p1_zero = true;

    PDAlgebra() = default;
    PDAlgebra(std::string name, std::vector<std::string> labels, std::vector<int> degrees,
              std::size_t unit);

    std::size_t dim() const { return labels.size(); }
    const Poly& C(std::size_t j, std::size_t k, std::size_t i) const {
        return structure[(j * dim() + k) * dim() + i];
    }
    Poly& C(std::size_t j, std::size_t k, std::size_t i) {
        return structure[(j * dim() + k) * dim() + i];
    }
    std::size_t index_of(const std::string& label) const;
    int top_index() const;  // basis element with nonzero integral in top degree, -1 if none

    AlgebraElement basis(std::size_t i) const { return AlgebraElement::basis(dim(), i); }
    AlgebraElement one() const { return basis(unit); }
    AlgebraElement zero() const { return AlgebraElement(dim()); }
    AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const;
    AlgebraElement pow(const AlgebraElement& a, unsigned k) const;
    Poly integrate(const AlgebraElement& a) const;
    // degree of a homogeneous element, -1 for zero or mixed
    int degree_of(const AlgebraElement& a) const;
    std::string str(const AlgebraElement& a) const;

    PolyMatrix pairing() const;
    AlgebraElement substitute_elem(const AlgebraElement& a, const std::map<VarId, Poly>& s) const {
        return a.substitute(s);
    }
    PDAlgebra substitute(const std::map<VarId, Poly>& s) const;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> failures;
    std::vector<std::string> warnings;
    long euler_characteristic = 0;
    std::vector<int> betti;  // by degree
};

ValidationReport validate_report(const PDAlgebra& A);
// Throws ValidationFailure when any axiom fails.
ValidationReport validate(const PDAlgebra& A);

// Exact inverse over the parameter polynomials; pivots must be nonzero constants.
PolyMatrix invert(const PolyMatrix& m);
PolyMatrix pairing_inverse(const PDAlgebra& A);

PDAlgebra kunneth_tensor(const PDAlgebra& A, const PDAlgebra& B);

int koszul(int a, int b);  // (-1)^{ab}

struct TensorElement {
    std::size_t arity = 0;
    std::map<std::vector<std::size_t>, Poly> terms;

    TensorElement() = default;
    explicit TensorElement(std::size_t k) : arity(k) {}
    void add(const std::vector<std::size_t>& idx, const Poly& c);
    TensorElement& operator+=(const TensorElement& o);
    TensorElement& operator-=(const TensorElement& o);
    TensorElement& operator*=(const Poly& s);
    friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
    friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
    friend TensorElement operator*(const Poly& s, TensorElement a) { return a *= s; }
    friend bool operator==(const TensorElement& a, const TensorElement& b) {
        return a.arity == b.arity && a.terms == b.terms;
    }
    friend bool operator!=(const TensorElement& a, const TensorElement& b) { return !(a == b); }
    bool is_zero() const { return terms.empty(); }
};

TensorElement tensor_of(const PDAlgebra& A, const std::vector<AlgebraElement>& factors);
// Cup product in A^{(x)k} with Koszul signs.
TensorElement tensor_mul(const PDAlgebra& A, const TensorElement& s, const TensorElement& t);
Poly tensor_integrate(const PDAlgebra& A, const TensorElement& T,
                      const std::vector<AlgebraElement>& against);
std::string tensor_str(const PDAlgebra& A, const TensorElement& T);
// Sum over the distinct arrangements of the factors.
TensorElement symmetrize(const PDAlgebra& A, const std::vector<AlgebraElement>& factors);

// Model files (JSON, schema_version 1).
PDAlgebra load_model(const std::string& path);
PDAlgebra parse_model(const std::string& json_text);
std::string model_to_json(const PDAlgebra& A);
PDAlgebra sample_model(const std::string& name);  // "B0", "B1", "Bodd", and "B4" (top degree 4)

}  // namespace twistor
