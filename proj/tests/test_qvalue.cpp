#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qdirac/qvalue.hpp"
#include "test_util.hpp"

using namespace qdirac;
using qdirac::testutil::expect_qeq;

namespace {
const QContext X = QContext::exact();
}

TEST(QInt, SmallValues) {
    expect_qeq(qint(0L, X), X.zero(), "[0]");
    expect_qeq(qint(1L, X), X.one(), "[1]");
    expect_qeq(qint(2L, X), X.qpow(HalfInt::whole(1)) + X.qpow(HalfInt::whole(-1)), "[2]");
    expect_qeq(qint(3L, X), X.qpow(HalfInt::whole(2)) + X.one() + X.qpow(HalfInt::whole(-2)),
               "[3]");
}

TEST(QInt, NumericAgreesWithBruteForce) {
    // independent oracle: direct evaluation of (q^n - q^-n)/(q - q^-1)
    for (double q0 : {0.5, 1.1, 1.2, 2.0}) {
        QContext N = QContext::numeric(q0);
        for (long n = -20; n <= 20; ++n) {
            double brute = n == 0 ? 0.0 : (std::pow(q0, double(n)) - std::pow(q0, double(-n))) /
                                              (q0 - 1.0 / q0);
            double got = qint(n, N).numeric_value();
            double exact_eval = qint(n, X).eval(q0);
            double scale = std::max(1.0, std::abs(brute));
            EXPECT_NEAR(got, brute, 1e-12 * scale);
            EXPECT_NEAR(exact_eval, brute, 1e-12 * scale);
        }
    }
}

TEST(QInt, Antisymmetry) {
    for (long n = 0; n <= 20; ++n) expect_qeq(qint(-n, X), -qint(n, X), "[-n] = -[n]");
}

TEST(QInt, HalfIntegerBlocks) {
    // [1/2] = (q^{1/2} - q^{-1/2})/(q - q^{-1}) used by the Hilbert-space blocks
    QValue v = qint(HalfInt(1), X);
    double q0 = 1.7;
    double expect = (std::pow(q0, 0.5) - std::pow(q0, -0.5)) / (q0 - 1 / q0);
    EXPECT_NEAR(v.eval(q0), expect, 1e-14);
}

TEST(QBinomial, SmallValues) {
    expect_qeq(qbinomial(1, 0, 1, X), X.one(), "(1 0)");
    expect_qeq(qbinomial(2, 1, 1, X), qint(2L, X), "(2 1)");
}

TEST(QBinomial, M3N1AgainstDivisionOracle) {
    // independent oracle: expand the factorial ratio and divide explicitly
    auto bracket = [](int i) {
        return LaurentPoly::monomial(2 * i) - LaurentPoly::monomial(-2 * i);
    };
    LaurentPoly num = bracket(1) * bracket(2) * bracket(3);
    LaurentPoly den = bracket(1) * (bracket(1) * bracket(2));
    LaurentPoly q = LaurentPoly::exact_div(num, den);
    expect_qeq(qbinomial(3, 1, 1, X), QValue::exact(LaurentRational::of(q)), "(3 1)");
    expect_qeq(qbinomial(3, 1, 1, X),
               X.qpow(HalfInt::whole(2)) + X.one() + X.qpow(HalfInt::whole(-2)), "(3 1) value");
}

TEST(QBinomial, RejectsBadArguments) {
    EXPECT_THROW(qbinomial(2, -1, 1, X), error);
    EXPECT_THROW(qbinomial(2, 3, 1, X), error);
}

TEST(QBinomial, Symmetry) {
    for (long m = 0; m <= 8; ++m)
        for (long n = 0; n <= m; ++n)
            expect_qeq(qbinomial(m, n, 1, X), qbinomial(m, m - n, 1, X), "symmetry");
}

TEST(QBinomial, ClassicalLimit) {
    auto binom = [](long m, long n) {
        long r = 1;
        for (long i = 0; i < n; ++i) r = r * (m - i) / (i + 1);
        return r;
    };
    for (long m = 0; m <= 8; ++m)
        for (long n = 0; n <= m; ++n)
            EXPECT_EQ(limit_q_to_1(qbinomial(m, n, 1, X)), Rational(binom(m, n)));
}

TEST(LimitQ1, BasicValues) {
    for (long n : {0L, 1L, 5L}) EXPECT_EQ(limit_q_to_1(qint(n, X)), Rational(n));
    EXPECT_EQ(limit_q_to_1(qint(2L, X)), Rational(2));
    // cancellation happens before evaluation
    QValue lam = X.lambda();
    EXPECT_EQ(limit_q_to_1(lam / lam), Rational(1));
    // a genuine pole survives reduction and is reported
    EXPECT_THROW(limit_q_to_1(X.one() / lam), pole_error);
}

TEST(QValue, RadicalArithmetic) {
    QValue two = qint(2L, X);
    QValue root = two.sqrt();
    EXPECT_TRUE(root.has_radical());
    expect_qeq(root * root, two, "sqrt([2])^2");
    expect_qeq((root + root) * root, two + two, "(r+r)r");
    expect_qeq(root.inverse() * root, X.one(), "1/r * r");
    // sqrt(q) is a plain monomial in q^{1/2}, not a radical
    QValue sq = X.qpow(HalfInt::whole(1)).sqrt();
    EXPECT_FALSE(sq.has_radical());
    expect_qeq(sq, X.qpow(HalfInt(1)), "sqrt(q) = q^{1/2}");
    // products of distinct radicands reduce to a single radical
    QValue r3 = qint(3L, X).sqrt();
    expect_qeq(root * r3 * root * r3, qint(2L, X) * qint(3L, X), "sqrt(2)sqrt(3) squared");
    // sums of distinct radicands are rejected
    EXPECT_THROW(root + r3, incompatible_radical_error);
}

TEST(QValue, PerfectSquareRadicandCollapses) {
    QValue four = X.integer(4);
    QValue root = four.sqrt();
    EXPECT_FALSE(root.has_radical());
    expect_qeq(root, X.integer(2), "sqrt(4)");
    QValue qsq = (X.qpow(HalfInt::whole(1)) * X.qpow(HalfInt::whole(1))).sqrt();
    expect_qeq(qsq, X.qpow(HalfInt::whole(1)), "sqrt(q^2)");
}

TEST(QValue, NumericModeMismatchThrows) {
    QValue a = QValue::numeric(1.0, 1.5);
    QValue b = QValue::numeric(1.0, 2.0);
    EXPECT_THROW(a + b, mode_mismatch_error);
    EXPECT_THROW(a * b, mode_mismatch_error);
    // exact scalars adapt to the numeric side's q0
    QValue c = qint(2L, X) * a;
    EXPECT_NEAR(c.numeric_value(), 1.5 + 1 / 1.5, 1e-14);
}

TEST(QValue, FieldAxiomsOnRandomValues) {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> coeff(-3, 3), expo(-2, 2);
    auto random_poly = [&] {
        LaurentPoly p;
        for (int t = 0; t < 3; ++t)
            p += LaurentPoly::monomial(expo(rng), Rational(coeff(rng)));
        return p;
    };
    auto random_rational = [&] {
        LaurentPoly den;
        do {
            den = random_poly();
        } while (den.is_zero());
        return QValue::exact(LaurentRational(random_poly(), den));
    };
    for (int trial = 0; trial < 1000; ++trial) {
        QValue a = random_rational(), b = random_rational(), c = random_rational();
        expect_qeq((a + b) + c, a + (b + c), "associativity +");
        expect_qeq((a * b) * c, a * (b * c), "associativity *");
        expect_qeq(a * (b + c), a * b + a * c, "distributivity");
        expect_qeq(a * b, b * a, "commutativity");
        if (!a.is_zero()) expect_qeq(a * a.inverse(), X.one(), "inverse roundtrip");
    }
    // same axioms inside the quadratic extension by sqrt([2])
    QValue root2 = qint(2L, X).sqrt();
    for (int trial = 0; trial < 200; ++trial) {
        auto mixed = [&] { return random_rational() + random_rational() * root2; };
        QValue a = mixed(), b = mixed(), c = mixed();
        expect_qeq((a + b) + c, a + (b + c), "associativity + (radical)");
        expect_qeq((a * b) * c, a * (b * c), "associativity * (radical)");
        expect_qeq(a * (b + c), a * b + a * c, "distributivity (radical)");
        if (!a.is_zero()) expect_qeq(a * a.inverse(), X.one(), "inverse roundtrip (radical)");
    }
}

TEST(QValue, CanonicalStrings) {
    EXPECT_EQ(qint(3L, X).str(), "q^2+1+q^-2");
    EXPECT_EQ(qint(4L, X).str(), "q^3+q+q^-1+q^-3");
    EXPECT_EQ((-qint(4L, X)).str(), "-q^3-q-q^-1-q^-3");
    EXPECT_EQ(X.qpow(HalfInt(1)).str(), "q^(1/2)");
    // denominator's lowest-degree coefficient pinned to 1: 1/(q-q^-1) = -q/(1-q^2)
    EXPECT_EQ((X.one() / X.lambda()).str(), "(-q)/(-q^2+1)");
}

TEST(QValue, BracketShorthandParses) {
    expect_qeq(parse_qint_shorthand("[4]", X), qint(4L, X), "[4]");
    expect_qeq(parse_qint_shorthand("-[3]", X), -qint(3L, X), "-[3]");
    expect_qeq(parse_qint_shorthand("7", X), X.integer(7), "7");
    EXPECT_THROW(parse_qint_shorthand("nope", X), error);
}

TEST(QContext, RejectsBadQ0) {
    EXPECT_THROW(QContext::numeric(0.0), error);
    EXPECT_THROW(QContext::numeric(-2.0), error);
    EXPECT_THROW(QContext::numeric(1.0), error);
}
