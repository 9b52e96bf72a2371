#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "qdirac/repr.hpp"
#include "test_util.hpp"

using namespace qdirac;
using qdirac::testutil::expect_mat_eq;
using qdirac::testutil::expect_qeq;

namespace {
const QContext X = QContext::exact();
const HopfStructure HP = HopfStructure::primary();
const HopfStructure HO = HopfStructure::opposite();
} // namespace

TEST(Irrep, TrivialModule) {
    Representation R = build_irrep(HalfInt::whole(0), X);
    EXPECT_EQ(R.dim, 1);
    EXPECT_TRUE(R.E.is_zero());
    EXPECT_TRUE(R.F.is_zero());
    expect_qeq(R.K.at(0, 0), X.one(), "k on V_0");
}

TEST(Irrep, SpinHalfMatrices) {
    Representation R = build_irrep(HalfInt(1), X);
    EXPECT_EQ(R.dim, 2);
    expect_qeq(R.K.at(0, 0), X.qpow(HalfInt(1)), "k_11 = q^{1/2}");
    expect_qeq(R.K.at(1, 1), X.qpow(HalfInt(-1)), "k_22 = q^{-1/2}");
    expect_qeq(R.E.at(0, 1), X.one(), "single off-diagonal 1");
    EXPECT_TRUE(R.E.at(1, 0).is_zero());
    expect_mat_eq(R.F, R.E.transpose(), "f = e^T");
}

TEST(Irrep, AdjointRaisingCoefficient) {
    Representation R = build_irrep(HalfInt::whole(1), X);
    // e|1,0> = sqrt([1][2]) |1,1> = sqrt(q + q^-1) |1,1>
    expect_qeq(R.E.at(0, 1) * R.E.at(0, 1), qint(2L, X), "sqrt([2]) squared");
    EXPECT_TRUE(R.E.at(0, 1).has_radical());
}

TEST(Irrep, RejectsInvalidLabels) {
    EXPECT_THROW(build_irrep(HalfInt(-1), X), error);
    EXPECT_THROW(build_irrep(HalfInt::whole(-2), X), error);
}

TEST(Irrep, HighestWeightVector) {
    for (int t : {1, 2, 3, 4}) {
        Representation R = build_irrep(HalfInt(t), X);
        for (int i = 0; i < R.dim; ++i) EXPECT_TRUE(R.E.at(i, 0).is_zero());
        expect_qeq(R.K.at(0, 0), X.qpow(HalfInt(t)), "k|l,l> = q^l");
    }
}

TEST(Relations, HoldExactlyOnBuiltIrreps) {
    for (int t : {1, 2, 3, 4}) {
        RelationReport rep = check_defining_relations(build_irrep(HalfInt(t), X));
        EXPECT_TRUE(rep.all_pass()) << "l = " << HalfInt(t).str();
    }
    RelationReport trivial = check_defining_relations(build_irrep(HalfInt::whole(0), X));
    EXPECT_TRUE(trivial.all_pass());
}

TEST(Relations, CorruptedMatrixIsFlagged) {
    Representation R = build_irrep(HalfInt::whole(1), X);
    R.E.at(0, 1) = R.E.at(0, 1) * qint(2L, X); // deliberate corruption
    RelationReport rep = check_defining_relations(R);
    EXPECT_FALSE(rep.all_pass());
    bool comm_flagged = false;
    for (const auto& c : rep.checks)
        if (!c.pass && c.name.find("[e,f]") != std::string::npos) comm_flagged = true;
    EXPECT_TRUE(comm_flagged);
}

TEST(Hopf, AntipodeAxiomInRepresentations) {
    // m(S ⊗ id)Δ(x) = ε(x) 1 = m(id ⊗ S)Δ(x) as matrix identities
    for (HopfVariant v : {HopfVariant::primary, HopfVariant::opposite}) {
        HopfStructure H(v);
        for (int t : {1, 2, 3}) {
            Representation R = build_irrep(HalfInt(t), X);
            for (GenKind g : {GenKind::e, GenKind::f, GenKind::k}) {
                AlgebraElement x = AlgebraElement::generator(X, g);
                TensorElement legs = H.coproduct(x);
                QMat left(R.dim, R.dim), right(R.dim, R.dim);
                for (const auto& [m, c] : legs.terms()) {
                    AlgebraElement first = AlgebraElement::monomial(X, m.first, X.one());
                    AlgebraElement second = AlgebraElement::monomial(X, m.second, X.one());
                    left = left + c * (eval_element(H.antipode(first), R) * eval_element(second, R));
                    right = right + c * (eval_element(first, R) * eval_element(H.antipode(second), R));
                }
                QMat expect = H.counit(x) * QMat::identity(R.dim, X);
                expect_mat_eq(left, expect, "m(S⊗id)Δ = ε");
                expect_mat_eq(right, expect, "m(id⊗S)Δ = ε");
            }
        }
    }
}

TEST(Dual, TrivialAndDouble) {
    Representation R0 = build_irrep(HalfInt::whole(0), X);
    Representation D0 = dual_rep(R0, HP);
    EXPECT_TRUE(D0.E.is_zero());
    expect_qeq(D0.K.at(0, 0), X.one(), "dual of trivial");

    // S^2(e) = q^2 e shows up as the double dual
    Representation R = build_irrep(HalfInt(1), X);
    Representation DD = dual_rep(dual_rep(R, HP), HP);
    expect_mat_eq(DD.E, X.qpow(HalfInt::whole(2)) * R.E, "double dual e");
    expect_mat_eq(DD.F, X.qpow(HalfInt::whole(-2)) * R.F, "double dual f");
    expect_mat_eq(DD.K, R.K, "double dual k");
}

TEST(Dual, SpinHalfExplicit) {
    Representation R = build_irrep(HalfInt(1), X);
    Representation D = dual_rep(R, HP);
    expect_mat_eq(D.E, -X.qpow(HalfInt::whole(1)) * R.E.transpose(), "e* = -q e^T");
    expect_mat_eq(D.F, -X.qpow(HalfInt::whole(-1)) * R.F.transpose(), "f* = -q^-1 f^T");
    RelationReport rep = check_defining_relations(D);
    EXPECT_TRUE(rep.all_pass());
}

TEST(Tensor, TrivialFactorActsLikeTheOther) {
    Representation R0 = build_irrep(HalfInt::whole(0), X);
    Representation R1 = build_irrep(HalfInt::whole(1), X);
    ModuleAction T = tensor_rep(R0, R1, HP);
    expect_mat_eq(T.E, R1.E, "0 ⊗ 1 e-action");
    expect_mat_eq(T.F, R1.F, "0 ⊗ 1 f-action");
    expect_mat_eq(T.K, R1.K, "0 ⊗ 1 k-action");
}

TEST(Tensor, SpinHalfSquareWeights) {
    Representation R = build_irrep(HalfInt(1), X);
    ModuleAction T = tensor_rep(R, R, HP);
    std::multiset<int> got;
    for (auto w : T.weights) got.insert(w.twice);
    EXPECT_EQ(got, (std::multiset<int>{2, 0, 0, -2})); // k eigenvalues q, 1, 1, q^-1
    RelationReport rep = check_defining_relations(T);
    EXPECT_TRUE(rep.all_pass());
}

TEST(Tensor, MixedModesRejected) {
    Representation A = build_irrep(HalfInt(1), X);
    Representation B = build_irrep(HalfInt(1), QContext::numeric(1.5));
    EXPECT_THROW(tensor_rep(A, B, HP), mode_mismatch_error);
}

TEST(Tensor, CoassociativityOfIteratedProducts) {
    Representation R = build_irrep(HalfInt(1), X);
    ModuleAction left = tensor_rep(tensor_rep(R, R, HP), R, HP);
    ModuleAction right = tensor_rep(R, tensor_rep(R, R, HP), HP);
    expect_mat_eq(left.E, right.E, "(Δ⊗id)Δ(e) = (id⊗Δ)Δ(e)");
    expect_mat_eq(left.F, right.F, "(Δ⊗id)Δ(f) = (id⊗Δ)Δ(f)");
    expect_mat_eq(left.K, right.K, "(Δ⊗id)Δ(k) = (id⊗Δ)Δ(k)");
}

namespace {

void expect_components(const std::vector<IrrepComponent>& comps,
                       const std::multiset<int>& expected_twice_l) {
    std::multiset<int> got;
    for (const auto& c : comps) got.insert(c.l.twice);
    EXPECT_EQ(got, expected_twice_l);
}

void expect_intertwines(const ModuleAction& T, const IrrepComponent& comp, double tol = 1e-10) {
    Representation R = build_irrep(comp.l, T.ctx);
    for (GenKind g : {GenKind::e, GenKind::f, GenKind::k}) {
        QMat lhs = T.gen(g) * comp.embedding;
        QMat rhs = comp.embedding * R.gen(g);
        if (T.ctx.is_exact())
            EXPECT_TRUE((lhs - rhs).is_zero()) << "embedding intertwines " << comp.l.str();
        else
            EXPECT_LT((lhs - rhs).max_abs(T.ctx.q0_value), tol);
    }
}

} // namespace

TEST(Decompose, AdjointSquareExact) {
    Representation R = build_irrep(HalfInt::whole(1), X);
    ModuleAction T = tensor_rep(R, R, HP);
    auto comps = decompose(T);
    expect_components(comps, {4, 2, 0});
    for (const auto& c : comps) expect_intertwines(T, c);
}

TEST(Decompose, TrivialSquare) {
    Representation R0 = build_irrep(HalfInt::whole(0), X);
    auto comps = decompose(tensor_rep(R0, R0, HP));
    expect_components(comps, {0});
}

TEST(Decompose, SpinHalfChains) {
    // l ⊗ 1/2 = (l+1/2) ⊕ (l-1/2), exactly where the scalars allow it
    Representation half = build_irrep(HalfInt(1), X);
    for (int t : {1, 2, 3}) {
        Representation R = build_irrep(HalfInt(t), X);
        auto comps = decompose(tensor_rep(R, half, HP));
        expect_components(comps, {t + 1, t - 1});
        for (const auto& c : comps) expect_intertwines(tensor_rep(R, half, HP), c);
    }
}

TEST(Decompose, ClassicalClebschGordanTableNumeric) {
    QContext N = QContext::numeric(1.3);
    HopfStructure H = HopfStructure::primary();
    for (int t1 = 0; t1 <= 4; ++t1) {
        for (int t2 = 0; t2 <= 4; ++t2) {
            Representation A = build_irrep(HalfInt(t1), N);
            Representation B = build_irrep(HalfInt(t2), N);
            ModuleAction T = tensor_rep(A, B, H);
            auto comps = decompose(T);
            std::multiset<int> expected;
            for (int l = std::abs(t1 - t2); l <= t1 + t2; l += 2) expected.insert(l);
            expect_components(comps, expected);
            for (const auto& c : comps) expect_intertwines(T, c, 1e-9);
        }
    }
}

TEST(Decompose, IsometricEmbeddings) {
    QContext N = QContext::numeric(2.0);
    Representation A = build_irrep(HalfInt(2), N);
    Representation B = build_irrep(HalfInt(3), N);
    ModuleAction T = tensor_rep(A, B, HP);
    for (const auto& c : decompose(T)) {
        QMat gram = c.embedding.transpose() * c.embedding;
        EXPECT_LT((gram - QMat::identity(c.l.twice + 1, N)).max_abs(2.0), 1e-9);
    }
}

TEST(ClassicalLimit, GeneratorMatricesReduceToLadderOperators) {
    for (int t = 1; t <= 4; ++t) {
        HalfInt l(t);
        Representation R = build_irrep(l, X);
        double lv = l.value();
        for (int i = 0; i < R.dim; ++i) {
            double m = lv - i;
            if (i > 0) {
                double classical = std::sqrt((lv - m) * (lv + m + 1));
                EXPECT_NEAR(limit_q_to_1_double(R.E.at(i - 1, i)), classical, 1e-12);
            }
            EXPECT_NEAR(limit_q_to_1_double(R.K.at(i, i)), 1.0, 1e-12);
        }
    }
}
