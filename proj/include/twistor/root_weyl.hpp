#pragma once

#include <map>
#include <string>
#include <vector>

#include "twistor/poly.hpp"

namespace twistor {

struct RankTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotInvariant : MathError {
    using MathError::MathError;
};
struct ExpressFailure : MathError {
    using MathError::MathError;
};

enum class Family { A, B, D };

struct RootSystem {
    Family family;
    int rank;  // number of Chern-root variables x1..x_rank
    std::vector<Poly> positive_roots;

    // A on `rank` variables is A_{rank-1}.
    static RootSystem make(Family f, int rank);
    Poly root_product() const;
    std::string name() const;
};

struct WeylElement {
    std::vector<int> perm;    // x_i -> +-x_{perm[i]} (0-based)
    std::vector<bool> flips;  // flips[i]: the image of x_i carries a minus sign
    int sign() const;
};

std::vector<WeylElement> weyl_elements(const RootSystem& rs);
Poly weyl_act(const WeylElement& w, const Poly& p);

// Name of the Euler-class invariant of D_n: "chi" for n = 3, "euler<n>" otherwise.
std::string euler_name(int n);
// Invariant generator names produced by invariant_express.
std::vector<std::string> invariant_names(const RootSystem& rs);
// Each invariant generator as a polynomial in the roots.
std::map<std::string, Poly> invariant_generators(const RootSystem& rs);

bool is_weyl_invariant(const Poly& p, const RootSystem& rs);
Poly invariant_express(const Poly& p, const RootSystem& rs);
Poly invariant_substitute(const Poly& p, const RootSystem& rs);

struct BundleDescriptor {
    std::string name;
    RootSystem G;
    std::vector<Poly> H_positive_roots;
    std::map<std::string, Poly> generators;
    int fibre_dimension() const {
        return 2 * static_cast<int>(G.positive_roots.size() - H_positive_roots.size());
    }
    // Generator names to root polynomials.
    Poly pullback(const Poly& x) const;
};

const std::vector<std::string>& builtin_bundle_names();
BundleDescriptor builtin_bundle(const std::string& name);

// Weyl group of H: generated inside W(G) by reflections in the roots of H.
std::vector<WeylElement> subgroup_elements(const BundleDescriptor& bd);

}  // namespace twistor
