#pragma once

#include <vector>

#include "twistor/root_weyl.hpp"

namespace twistor {

// Weyl antisymmetrization divided by the product of the positive roots.
// Result stays in the Chern roots.
Poly kappa_push(const Poly& y, const RootSystem& G);

// Pushforward along the G/H fibre with Todd correction, reported in G-invariants.
Poly iota_push(const Poly& x, const BundleDescriptor& bd);

// Same, before rewriting into invariants.
Poly iota_push_roots(const Poly& x, const BundleDescriptor& bd);

struct FibreIntegral {
    Poly monomial;  // in generator names
    Poly value;     // in invariant names
};

// Every generator monomial of degree <= max_degree, pushed forward.
std::vector<FibreIntegral> fibre_integral_table(const BundleDescriptor& bd, int max_degree);

}  // namespace twistor
