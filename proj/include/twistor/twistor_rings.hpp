#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "twistor/pd_algebra.hpp"
#include "twistor/pushforward.hpp"

namespace twistor {

struct InconsistentSystem : MathError {
    using MathError::MathError;
};

// Cohomology of a homogeneous-space bundle over a base model, as a free module
// over the base on a chosen set of fibre classes z_i. Basis index = b*F + i for
// z_i * pullback(y_b).
class LerayHirschRing {
public:
    PDAlgebra alg;
    PDAlgebra base;
    BundleDescriptor bundle;
    std::vector<Poly> fibre_basis;
    std::vector<std::string> fibre_labels;
    std::string pull_prefix;

    LerayHirschRing(const PDAlgebra& base, const BundleDescriptor& bd, std::vector<Poly> fibre_basis,
                    std::vector<std::string> fibre_labels, const std::string& name,
                    const std::string& pull_prefix);

    std::size_t F() const { return fibre_basis.size(); }
    std::size_t index(std::size_t i, std::size_t b) const { return b * F() + i; }
    AlgebraElement z(std::size_t i) const { return alg.basis(index(i, base.unit)); }
    AlgebraElement pull(const AlgebraElement& y) const;
    TensorElement pull(const TensorElement& T) const;
    // Invariant polynomial (p_k, Euler class, spectators) as a base class.
    AlgebraElement characteristic_class(const Poly& invariant) const;
    // Fibre integral of a generator polynomial, as a base class.
    AlgebraElement fibre_push(const Poly& generator_poly) const;
    AlgebraElement push(const AlgebraElement& a) const;
    // Leray-Hirsch solve: a polynomial in the bundle's generators as a ring element.
    AlgebraElement express(const Poly& generator_poly) const;

private:
    struct PushCache {
        std::mutex mu;
        std::map<std::string, AlgebraElement> values;
    };
    std::shared_ptr<PushCache> cache_ = std::make_shared<PushCache>();
    std::vector<std::vector<Poly>> n0_, n0inv_;
    std::vector<std::vector<AlgebraElement>> nplus_;
    std::vector<AlgebraElement> solve(const std::vector<AlgebraElement>& rhs) const;
};

// Evaluate a polynomial in an algebra by sending some variables to elements;
// the remaining variables stay as coefficients.
AlgebraElement eval_poly(const PDAlgebra& A, const Poly& p,
                         const std::map<VarId, AlgebraElement>& images);

struct TwistorRing {
    int n;
    LerayHirschRing ring;
    AlgebraElement h, c2, c3, tau_chi;
    const PDAlgebra& alg() const { return ring.alg; }
};

TwistorRing build_twistor_ring(const PDAlgebra& base, int n);

struct LinesRing {
    int n;
    LerayHirschRing ring;
    AlgebraElement e, t, lambda_chi;
    const PDAlgebra& alg() const { return ring.alg; }
};

LinesRing build_lines_ring(const PDAlgebra& base, int n);

// ev_! of a polynomial in cA2, cB1 (n = 3): first as a polynomial in c1, c2, c3 of the
// tautological U(3) bundle, then as a class on Z.
Poly ev_push_universal(const Poly& cls);
AlgebraElement ev_push(const TwistorRing& Z, const Poly& cls);

// Delta^k_!(1) in A^{(x)k}.
TensorElement poincare_amplitudes(const PDAlgebra& A, int k);
// Delta^2_!(x) = Delta^2_!(1) (x) (x (x) 1)
TensorElement diagonal_push(const PDAlgebra& A, const AlgebraElement& x);
// Delta^k_!(y) for a class y.
TensorElement diagonal_class(const PDAlgebra& A, int k, const AlgebraElement& y);

// The displayed closed forms, assembled independently for comparison.
TensorElement expected_diagonal_Z(const TwistorRing& Z, int k);
TensorElement expected_diagonal_L(const LinesRing& L, int k);

}  // namespace twistor
