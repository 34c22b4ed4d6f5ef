#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "twistor/twistor_rings.hpp"

namespace twistor {

struct NonConvergence : std::runtime_error {
    std::vector<double> residuals;
    NonConvergence(const std::string& what, std::vector<double> r)
        : std::runtime_error(what), residuals(std::move(r)) {}
};

// A vanishing theorem for GW_{mA,k}, as data.
struct VanishingRule {
    std::string name;
    std::string statement;
    std::function<bool(int m, int k)> kills;
};

const std::vector<VanishingRule>& vanishing_rules_n3();

struct DegreeVerdict {
    int m;
    bool contributes;
    std::string killed_by;  // empty when contributes
};

// Verdicts for every m from 1 to the trivial bound plus one.
std::vector<DegreeVerdict> degree_verdicts(int k);
std::set<int> contributing_degrees(int k, int n = 3);

struct GWClass {
    int n = 3;
    int m = 1;
    int k = 1;
    TensorElement value;
    // k*dim Z - (dim Z + 2 c1(Z)[A] m + 2(k-3))
    int expected_degree() const;
};

// Degree of a tensor element, -1 if mixed or zero.
int tensor_degree(const PDAlgebra& A, const TensorElement& T);

// ev_! ft^* as a linear map H*(L) -> H*(Z) (n = 3).
AlgebraElement ev_ft(const TwistorRing& Z, const LinesRing& L, const AlgebraElement& x);

GWClass gw_class_n3(const TwistorRing& Z, const LinesRing& L, int k);
GWClass gw_class_n2(const TwistorRing& Z, int k);
GWClass gw_class(int n, int k, const PDAlgebra& base);

// The displayed closed forms for comparison.
TensorElement expected_gw_n3(const TwistorRing& Z, int k);
TensorElement expected_gw_n2(const TwistorRing& Z, int k);

// Coefficients may contain q; deg q = 4.
struct NovikovElement {
    std::map<unsigned, AlgebraElement> terms;  // q-power -> class

    static NovikovElement from_flat(const AlgebraElement& a);
    AlgebraElement flat() const;  // single element with q in the coefficients
};

// Small quantum cohomology of Z for n = 3.
class QuantumRing {
public:
    explicit QuantumRing(const PDAlgebra& base);

    const TwistorRing& Z() const { return *Z_; }
    const PDAlgebra& alg() const { return Z_->alg(); }
    const GWClass& gw3() const { return gw3_; }
    AlgebraElement alpha() const;  // c1(Z) = -h

    Poly gw_number(const AlgebraElement& a, const AlgebraElement& b, const AlgebraElement& c) const;
    AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const;
    NovikovElement mul(const NovikovElement& a, const NovikovElement& b) const;
    AlgebraElement pow(const AlgebraElement& a, unsigned k) const;

    // Column c holds the coordinates of alpha * x_c in the basis h^i tau*y_b.
    PolyMatrix c1_matrix() const;
    // Same map in the basis alpha^{*i} * tau*y_b (quantum powers).
    PolyMatrix c1_matrix_alpha() const;
    // Product of the 4x4 diagonal blocks of c1_matrix_alpha, after moving the
    // coupling entry from (alpha tau*vol, alpha^3) into the y = 1 block.
    Poly block_reading_char_poly() const;

private:
    std::unique_ptr<TwistorRing> Z_;
    std::unique_ptr<LinesRing> L_;
    GWClass gw3_;
    PolyMatrix ginv_;
    std::vector<AlgebraElement> table_;  // x_j * x_k
};

Poly quantum_q();  // the Novikov variable q
Poly lambda_var();

// det(lambda I - M) by fraction-free elimination.
Poly char_poly(const PolyMatrix& m);
Poly char_poly(const PDAlgebra& base);
// p(M) for a polynomial in lambda.
PolyMatrix eval_matrix_poly(const Poly& p, const PolyMatrix& m);
bool is_zero_matrix(const PolyMatrix& m);

// (lambda^4 - 8q lambda^2 - 8 chi lambda + 16 q^2)(lambda^4 - 8q lambda^2 + 16q^2)^{D-1}
Poly displayed_char_poly(int D, const Poly& chi);

struct SpectrumRoot {
    std::complex<double> value;
    int multiplicity;
    double residual;
    std::string factor;  // "first" or "second"
};

struct Spectrum {
    std::vector<SpectrumRoot> roots;
};

// Roots of both quartic factors of the displayed polynomial.
Spectrum numeric_spectrum(double q_val, double chi_val, int D, double tol = 1e-9);

}  // namespace twistor
