#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "twistor/pd_algebra.hpp"

using namespace twistor;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

AlgebraElement random_homogeneous(const PDAlgebra& A, std::mt19937& rng, int& deg) {
    std::uniform_int_distribution<std::size_t> pick(0, A.dim() - 1);
    std::uniform_int_distribution<int> coef(-5, 5);
    deg = A.degrees[pick(rng)];
    AlgebraElement a = A.zero();
    for (std::size_t i = 0; i < A.dim(); ++i)
        if (A.degrees[i] == deg) a.c[i] = Poly(coef(rng));
    return a;
}

}  // namespace

TEST(SampleModels, Validate) {
    for (auto name : {"B0", "B1", "Bodd", "B4"}) {
        PDAlgebra A = sample_model(name);
        ValidationReport r = validate(A);
        EXPECT_TRUE(r.ok) << name;
    }
    EXPECT_EQ(validate(sample_model("B0")).betti, (std::vector<int>{1, 0, 0, 0, 0, 0, 1}));
    EXPECT_EQ(validate(sample_model("B1")).betti, (std::vector<int>{1, 0, 1, 0, 1, 0, 1}));
    EXPECT_EQ(validate(sample_model("Bodd")).betti, (std::vector<int>{1, 0, 0, 2, 0, 0, 1}));
    EXPECT_EQ(validate(sample_model("Bodd")).euler_characteristic, 0);
    EXPECT_EQ(validate(sample_model("B1")).euler_characteristic, 4);
}

TEST(SampleModels, ShippedFilesMatchBuiltins) {
    for (auto name : {"B0", "B1", "Bodd", "B4"}) {
        PDAlgebra f = load_model(std::string(TWISTOR_MODEL_DIR) + "/" + name + ".json");
        PDAlgebra b = sample_model(name);
        EXPECT_EQ(f.labels, b.labels);
        EXPECT_EQ(f.degrees, b.degrees);
        EXPECT_EQ(f.structure, b.structure);
        EXPECT_EQ(f.integral, b.integral);
    }
}

TEST(ModelFiles, JsonRoundTrip) {
    PDAlgebra A = sample_model("B1");
    PDAlgebra B = parse_model(model_to_json(A));
    EXPECT_EQ(A.structure, B.structure);
    EXPECT_EQ(model_to_json(A), model_to_json(B));
}

TEST(ModelFiles, BrokenTableReportsWitness) {
    // u*v = vol but v*u = 2 vol
    std::string text = R"({"name":"bad","basis":[{"label":"1","degree":0},{"label":"u","degree":2},
        {"label":"v","degree":4},{"label":"vol","degree":6}],"unit":"1",
        "products":[["u","u","v",1],["u","v","vol",1],["v","u","vol",2]],"integral":[["vol",1]]})";
    PDAlgebra A = parse_model(text);
    ValidationReport r = validate_report(A);
    EXPECT_FALSE(r.ok);
    EXPECT_FALSE(r.failures.empty());
    try {
        validate(A);
        FAIL();
    } catch (const ValidationFailure& e) {
        EXPECT_FALSE(e.witnesses.empty());
    }
}

TEST(ModelFiles, Malformed) {
    EXPECT_THROW(parse_model("not json"), ValidationFailure);
    EXPECT_THROW(parse_model(R"({"basis":[{"label":"1","degree":0}],"unit":"x"})"), ValidationFailure);
    EXPECT_THROW(load_model("/nonexistent/model.json"), ValidationFailure);
    std::string raw = read_file(std::string(TWISTOR_MODEL_DIR) + "/B0.json");
    EXPECT_NO_THROW(parse_model(raw));
}

TEST(Pairing, InverseIsInverse) {
    for (auto name : {"B0", "B1", "Bodd", "B4"}) {
        PDAlgebra A = sample_model(name);
        PolyMatrix g = A.pairing(), gi = pairing_inverse(A);
        for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t j = 0; j < A.dim(); ++j) {
                Poly s;
                for (std::size_t k = 0; k < A.dim(); ++k) s += g[i][k] * gi[k][j];
                EXPECT_EQ(s, Poly(i == j ? 1 : 0));
            }
    }
}

TEST(Kunneth, DimensionsAndBetti) {
    PDAlgebra A = sample_model("B1"), B = sample_model("Bodd");
    PDAlgebra T = kunneth_tensor(A, B);
    EXPECT_EQ(T.dim(), 16u);
    EXPECT_EQ(T.top_degree, 12);
    ValidationReport r = validate(T);
    EXPECT_EQ(r.euler_characteristic, 0);
}

TEST(Koszul, Signs) {
    EXPECT_EQ(koszul(3, 3), -1);
    EXPECT_EQ(koszul(3, 2), 1);
    EXPECT_EQ(koszul(0, 5), 1);
    PDAlgebra A = sample_model("Bodd");
    AlgebraElement w = A.basis(A.index_of("w")), w2 = A.basis(A.index_of("w'"));
    EXPECT_EQ(A.mul(w, w2), A.basis(A.index_of("vol")));
    EXPECT_EQ(A.mul(w2, w), Poly(-1) * A.basis(A.index_of("vol")));
    EXPECT_TRUE(A.mul(w, w).is_zero());
}

TEST(KoszulProperty, GradedCommutativityOnBodd) {
    std::mt19937 rng(4242);
    for (auto name : {"Bodd", "B1"}) {
        PDAlgebra A = sample_model(name);
        for (int c = 0; c < 100; ++c) {
            int da, db;
            AlgebraElement a = random_homogeneous(A, rng, da), b = random_homogeneous(A, rng, db);
            ASSERT_EQ(A.mul(a, b), Poly(koszul(da, db)) * A.mul(b, a));
        }
    }
}

TEST(KoszulProperty, TensorProductSignOracle) {
    // (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd
    std::mt19937 rng(4343);
    PDAlgebra A = sample_model("Bodd");
    for (int c = 0; c < 100; ++c) {
        int da, db, dc, dd;
        AlgebraElement a = random_homogeneous(A, rng, da), b = random_homogeneous(A, rng, db);
        AlgebraElement x = random_homogeneous(A, rng, dc), y = random_homogeneous(A, rng, dd);
        TensorElement lhs = tensor_mul(A, tensor_of(A, {a, b}), tensor_of(A, {x, y}));
        TensorElement rhs = Poly(koszul(db, dc)) * tensor_of(A, {A.mul(a, x), A.mul(b, y)});
        ASSERT_EQ(lhs, rhs);
    }
}

TEST(KoszulProperty, KunnethProductOracle) {
    // in A (x) B: (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd, on Bodd (x) Bodd
    std::mt19937 rng(4444);
    PDAlgebra A = sample_model("Bodd");
    PDAlgebra T = kunneth_tensor(A, A);
    auto idx = [&](std::size_t i, std::size_t j) { return T.index_of(A.labels[i] + "(x)" + A.labels[j]); };
    std::uniform_int_distribution<std::size_t> pick(0, A.dim() - 1);
    int checked = 0;
    for (int c = 0; c < 100; ++c) {
        std::size_t a = pick(rng), b = pick(rng), x = pick(rng), y = pick(rng);
        AlgebraElement lhs = T.mul(T.basis(idx(a, b)), T.basis(idx(x, y)));
        AlgebraElement ax = A.mul(A.basis(a), A.basis(x)), by = A.mul(A.basis(b), A.basis(y));
        AlgebraElement rhs = T.zero();
        for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t j = 0; j < A.dim(); ++j)
                if (!ax.c[i].is_zero() && !by.c[j].is_zero())
                    rhs.c[idx(i, j)] += Poly(koszul(A.degrees[b], A.degrees[x])) * ax.c[i] * by.c[j];
        ASSERT_EQ(lhs, rhs);
        ++checked;
    }
    EXPECT_EQ(checked, 100);
}

TEST(Tensor, IntegrateAndSymmetrize) {
    PDAlgebra A = sample_model("B0");
    AlgebraElement vol = A.basis(A.index_of("vol")), one = A.one();
    TensorElement s = symmetrize(A, {vol, one});
    EXPECT_EQ(s.terms.size(), 2u);
    EXPECT_EQ(tensor_integrate(A, tensor_of(A, {vol, one}), {one, vol}), Poly(1));
    EXPECT_THROW(tensor_integrate(A, tensor_of(A, {vol, one}), {one}), ArityMismatch);
}
