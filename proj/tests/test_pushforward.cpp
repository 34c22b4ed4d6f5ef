#include <gtest/gtest.h>

#include <random>

#include "twistor/pushforward.hpp"
#include "twistor/twistor_rings.hpp"

using namespace twistor;

namespace {

Poly x(int i) { return Poly::root(i); }

// SO(6)/(U(2) x U(1)) in one step.
BundleDescriptor flag_bundle() {
    return {"so6_u2xu1", RootSystem::make(Family::D, 3), {x(1) - x(2)},
            {{"cA1", x(1) + x(2)}, {"cA2", x(1) * x(2)}, {"cB1", x(3)}}};
}

// SO(4)/U(2) acting on x1, x2 with x3 a spectator.
BundleDescriptor p1_leg() {
    return {"so4_u2_spectator", RootSystem::make(Family::D, 2), {x(1) - x(2)},
            {{"cA1", x(1) + x(2)}, {"cA2", x(1) * x(2)}, {"cB1", x(3)}}};
}

// SO(6)/(SO(4) x SO(2)) taking root polynomials directly.
BundleDescriptor lines_leg() {
    return {"so6_so4xso2_roots", RootSystem::make(Family::D, 3), {x(1) - x(2), x(1) + x(2)}, {}};
}

Poly random_flag_class(std::mt19937& rng) {
    // degree 10 to 16 so that the ten-dimensional fibre sees it
    std::uniform_int_distribution<int> a(0, 2), b(0, 3), c(0, 8), coef(-3, 3);
    for (;;) {
        int ea = a(rng), eb = b(rng), ec = c(rng);
        int deg = 2 * ea + 4 * eb + 2 * ec;
        if (deg < 10 || deg > 16) continue;
        int k = coef(rng);
        if (k == 0) k = 1;
        return Poly(k) * Poly::var("cA1").pow(ea) * Poly::var("cA2").pow(eb) * Poly::var("cB1").pow(ec);
    }
}

}  // namespace

TEST(FibreIntegrals, TwistorFibreTable) {
    BundleDescriptor bd = builtin_bundle("so6_u3");
    std::vector<std::pair<std::string, std::string>> table{
        {"c1^3", "8"},     {"c2*c1", "4"},      {"c1^4", "0"},      {"c2*c1^2", "0"},
        {"c1^5", "16*p1"}, {"c2*c1^3", "4*p1"}, {"c1^6", "64*chi"}, {"c2*c1^4", "32*chi"}};
    for (auto& [cls, v] : table) EXPECT_EQ(iota_push(parse_poly(cls), bd), parse_poly(v)) << cls;
}

TEST(FibreIntegrals, LinesTable) {
    BundleDescriptor bd = builtin_bundle("so6_so4xso2");
    EXPECT_EQ(iota_push(parse_poly("t^4"), bd), Poly(2));
    EXPECT_EQ(iota_push(parse_poly("e^2"), bd), Poly(2));
    EXPECT_EQ(iota_push(parse_poly("t^6"), bd), parse_poly("2*p1"));
    EXPECT_EQ(iota_push(parse_poly("e*t^5"), bd), parse_poly("2*chi"));
    EXPECT_EQ(iota_push(parse_poly("e^3*t"), bd), parse_poly("2*chi"));
}

TEST(FibreIntegrals, BelowFibreDimensionVanish) {
    BundleDescriptor bd = builtin_bundle("so6_u3");
    for (auto cls : {"1", "c1", "c2", "c1^2", "c3"}) EXPECT_TRUE(iota_push(parse_poly(cls), bd).is_zero()) << cls;
}

TEST(FibreIntegrals, TableListing) {
    auto rows = fibre_integral_table(builtin_bundle("so6_u3"), 6);
    bool found = false;
    for (auto& r : rows)
        if (r.monomial == parse_poly("c1^3")) found = r.value == Poly(8);
    EXPECT_TRUE(found);
}

TEST(FibreIntegrals, SphereAndProjectiveLine) {
    // S^2 = SO(3)/SO(2): the Euler class integrates to 2
    EXPECT_EQ(iota_push(Poly::var("t"), builtin_bundle("so3_so2")), Poly(2));
    // CP^2 = U(3)/(U(2) x U(1)): the hyperplane class squared integrates to 1
    EXPECT_EQ(iota_push(parse_poly("cB1^2"), builtin_bundle("u3_u2xu1")), Poly(1));
}

TEST(WeylSum, RootProductPushesToGroupOrder) {
    for (auto f : {Family::A, Family::B, Family::D})
        for (int n = 2; n <= 3; ++n) {
            RootSystem rs = RootSystem::make(f, n);
            EXPECT_EQ(kappa_push(rs.root_product(), rs), Poly(static_cast<long>(weyl_elements(rs).size())))
                << rs.name();
        }
}

TEST(PushforwardProperty, WeylSumDivisibility) {
    std::mt19937 rng(31415);
    std::uniform_int_distribution<int> ex(0, 4), coef(-5, 5), nt(1, 4);
    for (int c = 0; c < 150; ++c) {
        RootSystem rs = RootSystem::make(c % 3 == 0 ? Family::A : c % 3 == 1 ? Family::B : Family::D, 3);
        Poly y;
        for (int i = nt(rng); i > 0; --i)
            y += Poly(coef(rng)) * x(1).pow(ex(rng)) * x(2).pow(ex(rng)) * x(3).pow(ex(rng));
        Poly r = kappa_push(y, rs);  // throws NotDivisible on failure
        ASSERT_TRUE(is_weyl_invariant(r, rs));
    }
}

TEST(PushforwardProperty, ProjectionFormula) {
    // iota_!(x * pullback a) = a * iota_!(x) for a an invariant of SO(6)
    std::mt19937 rng(27182);
    BundleDescriptor bd = builtin_bundle("so6_u3");
    // restriction of SO(6) invariants to U(3): p1 = c1^2 - 2c2, p2 = c2^2 - 2c1c3, chi = c3
    std::map<VarId, Poly> restrict{{var_id("p1"), parse_poly("c1^2 - 2*c2")},
                                   {var_id("p2"), parse_poly("c2^2 - 2*c1*c3")},
                                   {var_id("chi"), parse_poly("c3")}};
    std::uniform_int_distribution<int> ex(0, 2), coef(-4, 4), cls(0, 7);
    std::vector<std::string> classes{"c1^3", "c2*c1", "c1^4", "c2*c1^2", "c1^5", "c3*c1^2", "c2^2*c1", "c1^6"};
    for (int c = 0; c < 150; ++c) {
        Poly a = Poly(coef(rng)) * Poly::var("p1").pow(ex(rng)) * Poly::var("chi").pow(ex(rng)) +
                 Poly(coef(rng)) * Poly::var("p2").pow(ex(rng));
        Poly xc = parse_poly(classes[cls(rng)]);
        ASSERT_EQ(iota_push(xc * a.substitute(restrict), bd), a * iota_push(xc, bd));
    }
}

TEST(PushforwardProperty, TwoStageMatchesOneStage) {
    // push along SO(6)/(U(2)xU(1)) three ways: directly, through Z (ev then the
    // twistor fibre), and through the line space (the P^1 leg then lambda)
    std::mt19937 rng(16180);
    BundleDescriptor one = flag_bundle(), leg = p1_leg(), lam = lines_leg(), z = builtin_bundle("so6_u3");
    for (int c = 0; c < 100; ++c) {
        Poly cls = random_flag_class(rng);
        Poly direct = iota_push(cls, one);
        ASSERT_EQ(iota_push(ev_push_universal(cls), z), direct) << cls.str();
        ASSERT_EQ(iota_push(iota_push_roots(cls, leg), lam), direct) << cls.str();
    }
}
