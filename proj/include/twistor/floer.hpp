#pragma once

#include <string>
#include <vector>

#include "twistor/pd_algebra.hpp"

namespace twistor {

// t = q^{1/2}; rewrites t^2 -> q in every monomial.
Poly rewrite_t_squared(const Poly& p);

struct M0Result {
    Poly coefficient;     // 2t
    bool both_signs;      // the sign depends on the spin structure
    Poly fibre_integral;  // iota_push(t, so3_so2)
    Poly squared;         // coefficient^2 after t^2 -> q
};

M0Result m0_coefficient();

// Rational cohomology model of a closed oriented 3-manifold with b1 = b:
// 1, a_i (deg 1), b_i (deg 2), vol (deg 3), a_i b_j = delta_ij vol.
PDAlgebra sigma_model(int b);
// Rational homology 3-sphere: 1, vol (deg 3).
PDAlgebra s3_model();
PDAlgebra lagrangian_model(int b);  // Sigma x SO(3)

struct E1Page {
    int b = 0;
    std::vector<int> betti;  // of L, degrees 0..6
    // rows top to bottom, columns carrying t^3, t^2, t, 1
    std::vector<std::vector<int>> ranks;
    std::vector<int> column_t_power{3, 2, 1, 0};
    int rank_over_t = 0;  // dim H_*(L), the C[t]-rank
    int rank_over_q = 0;  // C[t] = C[q] + t C[q]
    int window_total = 0;
    std::string cell(std::size_t r, std::size_t c) const;  // e.g. "C^b t^2"
};

E1Page e1_page(int b);

struct HFReport {
    std::string claim;
    std::string status = "asserted in the literature, not machine-verified";
    E1Page page;
    int claimed_rank_over_q = 0;
    bool rank_bookkeeping_ok = false;
};

HFReport hf_report(int b);

}  // namespace twistor
