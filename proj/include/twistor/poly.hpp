#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistor {

using Rational = mpq_class;

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotDivisible : MathError {
    using MathError::MathError;
};

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t p)
        : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

enum class VarKind { chern_root, parameter };

struct Variable {
    std::string name;
    VarKind kind;
    int degree;
    int root_index;  // 1-based for x1, x2, ...; 0 for parameters
};

// Interned variables. Chern roots are named x1, x2, ... and always have degree 2.
// Known parameters carry fixed degrees; any other identifier is a degree-0 parameter
// unless registered with an explicit degree first.
using VarId = std::uint32_t;

VarId var_id(const std::string& name);
VarId register_var(const std::string& name, int degree);
const Variable& var_info(VarId id);
VarId root_var(int i);  // x_i

// Sparse exponent vector sorted by VarId, no zero exponents.
using Monomial = std::vector<std::pair<VarId, std::uint32_t>>;

// Lexicographic monomial order in VarId order (smaller id is more significant).
struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

Monomial mono_mul(const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& d, const Monomial& m);
Monomial mono_div(const Monomial& m, const Monomial& d);
int mono_degree(const Monomial& m);
std::uint32_t mono_exp(const Monomial& m, VarId v);

class Poly {
public:
    using Terms = std::map<Monomial, Rational, MonoLess>;

    Poly() = default;
    Poly(long c);
    Poly(const Rational& c);
    static Poly var(const std::string& name);
    static Poly var(VarId v);
    static Poly root(int i) { return var(root_var(i)); }
    static Poly monomial(const Monomial& m, const Rational& c);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    Rational coeff(const Monomial& m) const;
    std::size_t size() const { return terms_.size(); }

    // Homogeneous degree, or -1 when zero or not homogeneous.
    int degree() const;
    bool is_homogeneous() const;
    int max_degree() const;
    Poly component(int deg) const;
    Poly truncate(int max_deg) const;

    bool uses_roots() const;
    std::vector<VarId> variables() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rational& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    Poly operator-() const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(unsigned k) const;

    // Leading term for the lex order.
    std::pair<Monomial, Rational> leading() const;

    // Substitute each variable by a polynomial; variables absent from the map stay.
    Poly substitute(const std::map<VarId, Poly>& s) const;
    Poly substitute(const std::string& name, const Poly& value) const;
    Poly map_monomials(const std::function<std::pair<Monomial, Rational>(const Monomial&)>& f) const;

    // Coefficient list with respect to one variable: result[k] multiplies v^k.
    std::vector<Poly> coefficients_in(VarId v) const;

    std::string str() const;

private:
    void add_term(const Monomial& m, const Rational& c);
    Terms terms_;
};

enum class ArithOp { add, sub, mul };
Poly poly_arith(const Poly& a, const Poly& b, ArithOp op);

// Exact quotient; throws NotDivisible when den does not divide num.
Poly exact_divide(const Poly& num, const Poly& den);

// Truncated series of a/(1-e^{-a}) for a homogeneous root a, through
// cohomological degree trunc_degree.
Poly todd_factor(const Poly& root, int trunc_degree);
std::vector<Rational> todd_coefficients(int n);

Poly parse_poly(const std::string& text);

std::string rational_str(const Rational& r);

}  // namespace twistor
