#include "twistor/floer.hpp"

#include "twistor/pushforward.hpp"

namespace twistor {

Poly rewrite_t_squared(const Poly& p) {
    VarId t = var_id("t");
    Poly q = Poly::var("q"), out;
    for (auto& [m, c] : p.terms()) {
        Monomial rest;
        unsigned qe = 0;
        for (auto& [id, e] : m) {
            if (id == t) {
                qe += e / 2;
                if (e % 2) rest.emplace_back(t, 1);
            } else {
                rest.emplace_back(id, e);
            }
        }
        out += Poly::monomial(rest, c) * q.pow(qe);
    }
    return out;
}

M0Result m0_coefficient() {
    Poly push = iota_push(Poly::var("t"), builtin_bundle("so3_so2"));
    Poly coef = push * Poly::var("t");
    return {coef, true, push, rewrite_t_squared(coef * coef)};
}

PDAlgebra sigma_model(int b) {
    if (b < 0) throw std::invalid_argument("b1 must be non-negative");
    std::vector<std::string> labels{"1"};
    std::vector<int> degs{0};
    for (int i = 1; i <= b; ++i) labels.push_back("a" + std::to_string(i)), degs.push_back(1);
    for (int i = 1; i <= b; ++i) labels.push_back("b" + std::to_string(i)), degs.push_back(2);
    labels.push_back("vol");
    degs.push_back(3);
    PDAlgebra A("Sigma(b=" + std::to_string(b) + ")", labels, degs, 0);
    std::size_t n = A.dim(), vol = n - 1;
    A.top_degree = 3;
    for (std::size_t i = 0; i < n; ++i) {
        A.C(0, i, i) = Poly(1);
        A.C(i, 0, i) = Poly(1);
    }
    for (int i = 0; i < b; ++i) {
        std::size_t a = 1 + i, bb = 1 + b + i;
        A.C(a, bb, vol) = Poly(1);
        A.C(bb, a, vol) = Poly(1);  // (-1)^{1*2}
    }
    A.integral[vol] = Poly(1);
    A.chi = Poly(0);
    return A;
}

PDAlgebra s3_model() {
    PDAlgebra A("S3", {"1", "vol3"}, {0, 3}, 0);
    A.top_degree = 3;
    A.C(0, 0, 0) = Poly(1);
    A.C(0, 1, 1) = Poly(1);
    A.C(1, 0, 1) = Poly(1);
    A.integral[1] = Poly(1);
    A.chi = Poly(0);
    return A;
}

PDAlgebra lagrangian_model(int b) { return kunneth_tensor(sigma_model(b), s3_model()); }

std::string E1Page::cell(std::size_t r, std::size_t c) const {
    int rank = ranks[r][c];
    if (rank == 0) return "0";
    std::string s = rank == 1 ? "C" : "C^" + std::to_string(rank);
    int p = column_t_power[c];
    if (p == 1) s += " t";
    if (p > 1) s += " t^" + std::to_string(p);
    return s;
}

E1Page e1_page(int b) {
    E1Page e;
    e.b = b;
    ValidationReport rep = validate(lagrangian_model(b));
    e.betti = rep.betti;
    e.betti.resize(7, 0);
    const int rows = 10;
    e.ranks.assign(rows, std::vector<int>(4, 0));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < 4; ++c) {
            int k = r - e.column_t_power[c];
            if (k >= 0 && k <= 6) e.ranks[r][c] = e.betti[6 - k];
        }
    for (int x : e.betti) e.rank_over_t += x;
    e.rank_over_q = 2 * e.rank_over_t;
    for (auto& row : e.ranks)
        for (int x : row) e.window_total += x;
    return e;
}

HFReport hf_report(int b) {
    HFReport h;
    h.page = e1_page(b);
    h.claim = "HF(L_Sigma, L_Sigma) = QH_*(L) = H_*(L; C[q^{1/2}]) with b1(Sigma) = " + std::to_string(b);
    h.claimed_rank_over_q = 4 * (2 + 2 * b);
    h.rank_bookkeeping_ok = h.page.rank_over_q == h.claimed_rank_over_q;
    return h;
}

}  // namespace twistor
