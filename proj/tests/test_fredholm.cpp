#include <gtest/gtest.h>

#include <cmath>

#include "qdirac/dirac.hpp"
#include "qdirac/fredholm.hpp"

using namespace qdirac;

TEST(Truncation, SingleKernelBlockAtJZero) {
    TruncatedHilbert H = build_truncation(HalfInt::whole(0), 1.5);
    ASSERT_EQ(H.blocks.size(), 1u);
    EXPECT_TRUE(H.blocks[0].up);
    EXPECT_EQ(H.blocks[0].module_dim, 2);
    EXPECT_EQ(H.blocks[0].multiplicity, 1);
    EXPECT_EQ(H.blocks[0].d_eigenvalue, 0.0);
    EXPECT_EQ(H.blocks[0].f_value, 0.0);
    EXPECT_EQ(H.total_dimension, 2);
}

TEST(Truncation, SpinHalfLevel) {
    TruncatedHilbert H = build_truncation(HalfInt(1), 1.5);
    ASSERT_EQ(H.blocks.size(), 3u);
    // W↑_{1/2}: module dim 3, multiplicity 2, 6 states
    EXPECT_EQ(H.blocks[1].module_dim, 3);
    EXPECT_EQ(H.blocks[1].multiplicity, 2);
    EXPECT_EQ(H.blocks[1].total_states(), 6);
    // W↓_{1/2}: module dim 1, multiplicity 2, 2 states
    EXPECT_FALSE(H.blocks[2].up);
    EXPECT_EQ(H.blocks[2].module_dim, 1);
    EXPECT_EQ(H.blocks[2].total_states(), 2);
    EXPECT_EQ(H.total_dimension, 10);
}

TEST(Truncation, BlockCountFormula) {
    for (int t : {0, 1, 2, 5, 10}) {
        TruncatedHilbert H = build_truncation(HalfInt(t), 1.3);
        EXPECT_EQ(int(H.blocks.size()), 2 * t + 1);
    }
}

TEST(Truncation, SignAndBoundOfF) {
    TruncatedHilbert H = build_truncation(HalfInt(12), 1.5);
    for (const auto& b : H.blocks) {
        EXPECT_LT(std::abs(b.f_value), 1.0);
        if (b.j.twice > 0) {
            if (b.up)
                EXPECT_GT(b.f_value, 0.0);
            else
                EXPECT_LT(b.f_value, 0.0);
        }
        // F^2 - 1 = -1/(1 + d^2) blockwise
        double expect = -1.0 / (1.0 + b.d_eigenvalue * b.d_eigenvalue);
        EXPECT_NEAR(b.f_value * b.f_value - 1.0, expect, 1e-15);
    }
}

TEST(Truncation, RejectsBadArguments) {
    EXPECT_THROW(build_truncation(HalfInt(2), 1.0), error);
    EXPECT_THROW(build_truncation(HalfInt(2), -0.5), error);
    EXPECT_THROW(build_truncation(HalfInt(500), 1.5), error);
}

TEST(Truncation, EigenvaluesMatchDiracSpectrum) {
    double q0 = 1.4;
    QContext N = QContext::numeric(q0);
    DiracOperator D = build_dirac(N);
    TruncatedHilbert H = build_truncation(HalfInt(12), q0); // j up to 6
    for (const auto& b : H.blocks) {
        if (b.j.twice == 0) continue;
        auto spec = D.spectrum(b.j);
        double expect = b.up ? spec[0].first.numeric_value() : spec[1].first.numeric_value();
        EXPECT_NEAR(b.d_eigenvalue, expect, 1e-10) << "j = " << b.j.str();
    }
}

TEST(TraceTail, StabilizesByJ25) {
    TraceTailResult r = trace_tail(HalfInt(80), 1.5); // jmax = 40
    ASSERT_EQ(r.partial_sums.size(), 81u);
    EXPECT_TRUE(r.ratios_below_one_beyond_2);
    // partial sums are monotone increasing and Cauchy with fast decay
    for (size_t i = 1; i < r.partial_sums.size(); ++i)
        EXPECT_GE(r.partial_sums[i], r.partial_sums[i - 1]);
    double s25 = r.partial_sums[50]; // level index = twice j
    EXPECT_LT(r.total - s25, 1e-12);
    EXPECT_LT(r.tail_estimate, 1e-12);
    EXPECT_TRUE(std::isfinite(r.fitted_C));
}

TEST(TraceTail, DoublingTheCutoffChangesNothing) {
    // the knee for q0 = 1.2 sits near j ≈ 50; beyond it doubling is invisible
    double a = trace_tail(HalfInt(140), 1.2).total;
    double b = trace_tail(HalfInt(280), 1.2).total;
    EXPECT_LT(std::abs(b - a), 1e-12);
}

TEST(TraceTail, InverseQ0Symmetry) {
    double a = trace_tail(HalfInt(60), 1.5).total;
    double b = trace_tail(HalfInt(60), 1.0 / 1.5).total;
    EXPECT_NEAR(a, b, 1e-12);
}

TEST(TraceTail, RejectsClassicalPoint) { EXPECT_THROW(trace_tail(HalfInt(40), 1.0), error); }

TEST(TraceTail, IncrementBoundHolds) {
    TraceTailResult r = trace_tail(HalfInt(100), 1.5);
    for (size_t i = 0; i < r.levels.size(); ++i) {
        double bound = r.fitted_C * std::pow(1.5, -4.0 * r.levels[i].value());
        EXPECT_LE(r.increments[i], bound * (1 + 1e-12));
    }
}

TEST(Decay, ZeroShiftGivesZeroSequence) {
    CommutatorDecayResult r = commutator_decay(HalfInt::whole(0), HalfInt(40), 1.5);
    for (const auto& [j, c] : r.coefficients) EXPECT_EQ(c, 0.0);
    EXPECT_EQ(r.weighted_sum, 0.0);
}

TEST(Decay, HalfShiftDecaysAndSums) {
    CommutatorDecayResult r = commutator_decay(HalfInt(1), HalfInt(80), 1.5);
    EXPECT_TRUE(r.monotone_beyond_2);
    EXPECT_TRUE(std::isfinite(r.fitted_C));
    // weighted sum converged: doubling the cutoff adds nothing visible
    CommutatorDecayResult rb = commutator_decay(HalfInt(1), HalfInt(160), 1.5);
    CommutatorDecayResult r2 = commutator_decay(HalfInt(1), HalfInt(320), 1.5);
    EXPECT_NEAR(rb.weighted_sum, r2.weighted_sum, 1e-12);
    // exponential-rate bound holds on every computed level
    for (const auto& [j, c] : r.coefficients) {
        double bound = r.fitted_C * std::pow(1.5, -2.0 * j.value());
        EXPECT_LE(std::abs(c), bound * (1 + 1e-12)) << "j = " << j.str();
    }
}

TEST(Decay, AllRequiredShifts) {
    for (int k : {-2, -1, 1, 2}) {
        CommutatorDecayResult r = commutator_decay(HalfInt(k), HalfInt(120), 1.5);
        EXPECT_TRUE(std::isfinite(r.fitted_C));
        EXPECT_TRUE(r.monotone_beyond_2) << "k twice = " << k;
        EXPECT_LT(std::abs(r.coefficients.back().second), 1e-12);
    }
    EXPECT_THROW(commutator_decay(HalfInt(10), HalfInt(10), 1.5), error);
}

TEST(Decay, NearClassicalPointMatchesClassicalRate) {
    // at q0 = 1 + 1e-6 the coefficients agree with the classical values
    // j/sqrt(1+j^2), whose decay is only polynomial
    double q0 = 1.0 + 1e-6;
    CommutatorDecayResult r = commutator_decay(HalfInt(1), HalfInt(40), q0);
    auto classical = [](double j, double k) {
        return (j + k) / std::sqrt(1 + (j + k) * (j + k)) - j / std::sqrt(1 + j * j);
    };
    for (const auto& [j, c] : r.coefficients) {
        EXPECT_NEAR(c, classical(j.value(), 0.5), 1e-4) << "j = " << j.str();
    }
    // polynomial, not exponential: c_20 is far above any q0-exponential fit
    double c20 = std::abs(r.coefficients[40].second);
    EXPECT_GT(c20, 1e-6);
}
