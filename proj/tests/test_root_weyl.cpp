#include <gtest/gtest.h>

#include <random>
#include <set>

#include "twistor/root_weyl.hpp"

using namespace twistor;

namespace {

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// |W| from the classical formulas.
long weyl_order(Family f, int n) {
    switch (f) {
        case Family::A: return factorial(n);
        case Family::B: return (1L << n) * factorial(n);
        case Family::D: return (1L << (n - 1)) * factorial(n);
    }
    return 0;
}

long positive_root_count(Family f, int n) {
    switch (f) {
        case Family::A: return n * (n - 1) / 2;
        case Family::B: return n * n;
        case Family::D: return n * (n - 1);
    }
    return 0;
}

Poly random_root_poly(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> coef(-4, 4), ex(0, 2), nt(1, 3);
    Poly p;
    for (int i = nt(rng); i > 0; --i) {
        Poly m(coef(rng));
        for (int v = 1; v <= n; ++v) m *= Poly::root(v).pow(ex(rng));
        p += m;
    }
    return p;
}

}  // namespace

TEST(RootSystem, CountsMatchClassicalFormulas) {
    for (auto f : {Family::A, Family::B, Family::D})
        for (int n = (f == Family::D ? 2 : 1); n <= 4; ++n) {
            RootSystem rs = RootSystem::make(f, n);
            EXPECT_EQ(static_cast<long>(weyl_elements(rs).size()), weyl_order(f, n)) << rs.name();
            EXPECT_EQ(static_cast<long>(rs.positive_roots.size()), positive_root_count(f, n)) << rs.name();
        }
}

TEST(RootSystem, ElementsAreDistinctAndSignIsDeterminant) {
    RootSystem rs = RootSystem::make(Family::B, 3);
    std::set<std::pair<std::vector<int>, std::vector<bool>>> seen;
    for (auto& w : weyl_elements(rs)) {
        seen.insert({w.perm, w.flips});
        // the root product is anti-invariant with character sign(w)
        EXPECT_EQ(weyl_act(w, rs.root_product()), Poly(w.sign()) * rs.root_product());
    }
    EXPECT_EQ(seen.size(), 48u);
}

TEST(RootSystem, DFlipsAreEven) {
    for (auto& w : weyl_elements(RootSystem::make(Family::D, 4))) {
        int flips = 0;
        for (bool b : w.flips) flips += b;
        EXPECT_EQ(flips % 2, 0);
    }
}

TEST(RootSystem, EulerNames) {
    EXPECT_EQ(euler_name(3), "chi");
    EXPECT_EQ(euler_name(2), "euler2");
    EXPECT_EQ(invariant_names(RootSystem::make(Family::D, 3)),
              (std::vector<std::string>{"p1", "p2", "chi"}));
}

TEST(RootSystem, RankLimit) {
    EXPECT_THROW(weyl_elements(RootSystem::make(Family::B, 9)), RankTooLarge);
}

TEST(Invariants, GeneratorsAreInvariant) {
    for (auto f : {Family::A, Family::B, Family::D}) {
        RootSystem rs = RootSystem::make(f, 3);
        for (auto& [name, g] : invariant_generators(rs)) EXPECT_TRUE(is_weyl_invariant(g, rs)) << name;
    }
    EXPECT_FALSE(is_weyl_invariant(Poly::root(1), RootSystem::make(Family::A, 3)));
}

TEST(Invariants, ExpressKnownValues) {
    RootSystem d3 = RootSystem::make(Family::D, 3);
    Poly x1 = Poly::root(1), x2 = Poly::root(2), x3 = Poly::root(3);
    EXPECT_EQ(invariant_express(x1 * x2 * x3, d3), Poly::var("chi"));
    EXPECT_EQ(invariant_express(x1 * x1 + x2 * x2 + x3 * x3, d3), Poly::var("p1"));
    EXPECT_EQ(invariant_express((x1 * x2 * x3).pow(2), d3), Poly::var("chi").pow(2));
    EXPECT_THROW(invariant_express(x1, d3), NotInvariant);
}

TEST(InvariantsProperty, ExpressThenSubstituteRoundTrips) {
    std::mt19937 rng(2718);
    int cases = 0;
    for (auto f : {Family::A, Family::B, Family::D}) {
        RootSystem rs = RootSystem::make(f, 3);
        auto W = weyl_elements(rs);
        for (int c = 0; c < 70; ++c, ++cases) {
            Poly y = random_root_poly(rng, 3);
            Poly sym;
            for (auto& w : W) sym += weyl_act(w, y);
            ASSERT_TRUE(is_weyl_invariant(sym, rs));
            Poly e = invariant_express(sym, rs);
            ASSERT_FALSE(e.uses_roots());
            ASSERT_EQ(invariant_substitute(e, rs), sym);
        }
    }
    EXPECT_EQ(cases, 210);
}

TEST(Bundles, BuiltinsAndSubgroups) {
    for (auto& name : builtin_bundle_names()) {
        BundleDescriptor bd = builtin_bundle(name);
        std::size_t h_order = subgroup_elements(bd).size();
        EXPECT_EQ(weyl_elements(bd.G).size() % h_order, 0u) << name;
    }
    EXPECT_EQ(builtin_bundle("so6_u3").fibre_dimension(), 6);
    EXPECT_EQ(builtin_bundle("so6_so4xso2").fibre_dimension(), 8);
    EXPECT_EQ(subgroup_elements(builtin_bundle("so6_u3")).size(), 6u);
    EXPECT_THROW(builtin_bundle("nope"), std::invalid_argument);
}
