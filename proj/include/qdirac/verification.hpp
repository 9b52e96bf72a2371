#pragma once

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "qdirac/dirac.hpp"
#include "qdirac/fredholm.hpp"

namespace qdirac {

/// Outcome of one acceptance check.
struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

inline double mat_residual(const QMat& m, const QContext& ctx) {
    return ctx.is_exact() ? (m.is_zero() ? 0.0 : 1.0) : m.max_abs(ctx.q0_value);
}

} // namespace detail

/// Golden spectrum: for l in {1/2,...,4}, D on V_l ⊗ Σ has exactly the two
/// eigenvalues [2l] (multiplicity 2l+2) and -[2l+2] (multiplicity 2l);
/// exact-mode equality plus numeric verification at q0 in {0.5, 1.1, 2.0}.
inline CheckResult criterion_golden_spectrum() {
    CheckResult r{1, "golden spectrum of the Dirac operator", true, ""};
    const std::vector<int> twice_ls = {1, 2, 3, 4, 6, 8};
    try {
        QContext X = QContext::exact();
        DiracOperator DX = build_dirac(X);
        for (int t : twice_ls) {
            auto spec = DX.spectrum(HalfInt(t));
            bool ok = (spec[0].first - qint(long(t), X)).is_zero() &&
                      spec[0].second == t + 2 &&
                      (spec[1].first + qint(long(t) + 2, X)).is_zero() && spec[1].second == t;
            if (!ok) {
                r.pass = false;
                r.detail = "exact spectrum mismatch at 2l = " + std::to_string(t);
                return r;
            }
        }
        for (double q0 : {0.5, 1.1, 2.0}) {
            DiracOperator DN = build_dirac(QContext::numeric(q0));
            for (int t : twice_ls) DN.spectrum(HalfInt(t)); // throws beyond 1e-10
        }
        r.detail = "exact equality and numeric 1e-10 at q0 in {0.5, 1.1, 2.0}";
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = e.what();
    }
    return r;
}

/// Golden Clifford relations with b = -1, and the explicit spin matrices.
inline CheckResult criterion_clifford_golden(bool corrupt_demo = false) {
    CheckResult r{2, "golden Clifford relations with b = -1", true, ""};
    try {
        QContext X = QContext::exact();
        Representation V = build_irrep(HalfInt::whole(1), X);
        BilinearForm B = invariant_form(V);
        SpectralSplit S = spectral_split(braiding_op(HalfInt::whole(1), HalfInt::whole(1), X));
        CliffordAlgebra C = build_clifford(V, B, S);
        SpinRepresentation spin = spin_representation(C);

        QValue q = X.qpow(HalfInt::whole(1));
        struct Golden {
            std::string name;
            CliffordElement element;
        };
        auto word = [&](std::initializer_list<int> w, QValue c) {
            return CliffordElement::word(X, CliffWord(w), c);
        };
        QValue psi0psi1_coeff = corrupt_demo ? -q : q; // test hook: flip one coefficient
        std::vector<Golden> relations;
        relations.push_back({"psi1 psi1 = 0", word({0, 0}, X.one())});
        relations.push_back({"psi-1 psi-1 = 0", word({2, 2}, X.one())});
        relations.push_back({"q^-1 psi1 psi0 + q psi0 psi1 = 0",
                             word({0, 1}, q.inverse()) + word({1, 0}, psi0psi1_coeff)});
        relations.push_back({"q^-2 psi1 psi-1 + [2] psi0 psi0 + q^2 psi-1 psi1 = 0",
                             word({0, 2}, q.pow(-2)) + word({1, 1}, qint(2L, X)) +
                                 word({2, 0}, q.pow(2))});
        relations.push_back({"psi0 psi-1 + q^2 psi-1 psi0 = 0",
                             word({1, 2}, X.one()) + word({2, 1}, q.pow(2))});
        CliffordElement anti = word({0, 2}, X.one()) + word({2, 0}, X.one());
        anti.add(CliffWord{}, X.one()); // psi1 psi-1 + psi-1 psi1 - (-1)
        relations.push_back({"psi1 psi-1 + psi-1 psi1 = -1", anti});
        for (const auto& g : relations) {
            if (!C.normal_form(g.element).is_zero()) {
                r.pass = false;
                r.detail = "violated relation: " + g.name;
                return r;
            }
            QMat img = spin.s_of(g.element);
            if (!img.is_zero()) {
                r.pass = false;
                r.detail = "spin matrices violate: " + g.name;
                return r;
            }
        }
        // the explicit matrices themselves
        bool golden = (spin.s_letters[0].at(0, 1) - X.qpow(HalfInt(1))).is_zero() &&
                      (spin.s_letters[2].at(1, 0) + X.qpow(HalfInt(-1))).is_zero() &&
                      (spin.s_letters[1].at(0, 0) +
                       qint(2L, X).sqrt().inverse() * X.qpow(HalfInt::whole(-1)))
                          .is_zero();
        if (!golden) {
            r.pass = false;
            r.detail = "spin matrices differ from the explicit form";
            return r;
        }
        r.detail = "all displayed relations coefficient-exact, spin matrices exact";
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = e.what();
    }
    return r;
}

/// Invariance of D (symbolically exact), commutation with the action on
/// V_l ⊗ Σ for l <= 4, and the naive-operator negative control.
inline CheckResult criterion_dirac_invariance(double tol = 1e-10) {
    CheckResult r{3, "Dirac invariance, commutation, and the naive control", true, ""};
    try {
        QContext X = QContext::exact();
        DiracOperator DX = build_dirac(X);
        if (invariance_residual(DX.formal(), DX.clifford(), HopfVariant::opposite) != 0.0) {
            r.pass = false;
            r.detail = "symbolic invariance failed";
            return r;
        }
        double worst = 0;
        for (double q0 : {0.5, 1.1, 2.0}) {
            DiracOperator DN = build_dirac(QContext::numeric(q0));
            for (int t = 1; t <= 8; ++t)
                worst = std::max(worst,
                                 commutator_residual(DN, DN.realize(HalfInt(t)), HalfInt(t)));
        }
        if (worst >= tol) {
            r.pass = false;
            r.detail = "commutator residual " + detail::fmt(worst);
            return r;
        }
        DiracOperator D15 = build_dirac(QContext::numeric(1.5));
        NaiveControlReport control = negative_control_naive(D15, HalfInt(1));
        if (!(control.naive_commutator > 0.01) || !(control.dirac_commutator < tol) ||
            !(control.naive_invariance_residual < 1e-9)) {
            r.pass = false;
            r.detail = "negative control: naive " + detail::fmt(control.naive_commutator) +
                       ", dirac " + detail::fmt(control.dirac_commutator);
            return r;
        }
        r.detail = "invariance exact; worst commutator " + detail::fmt(worst) +
                   "; naive control " + detail::fmt(control.naive_commutator);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = e.what();
    }
    return r;
}

/// The invariance system for the bilinear form on adjoint ⊗ adjoint has a
/// one-dimensional solution space and the solution is nondegenerate.
inline CheckResult criterion_form_uniqueness() {
    CheckResult r{4, "invariant form: uniqueness and nondegeneracy", true, ""};
    try {
        QContext X = QContext::exact();
        Representation V = build_irrep(HalfInt::whole(1), X);
        ModuleAction T = tensor_rep(V, V, HopfStructure::primary());
        QMat system(27, 9);
        int row = 0;
        for (GenKind g : {GenKind::e, GenKind::f, GenKind::k}) {
            QMat act = T.gen(g).transpose();
            for (int i = 0; i < 9; ++i) {
                for (int c = 0; c < 9; ++c) system.at(row, c) += act.at(i, c);
                if (g == GenKind::k) system.at(row, i) -= X.one();
                ++row;
            }
        }
        auto kernel = nullspace(system, X);
        if (kernel.size() != 1) {
            r.pass = false;
            r.detail = "solution space dimension " + std::to_string(kernel.size());
            return r;
        }
        QMat B(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) B.at(i, j) = kernel[0][size_t(i) * 3 + j];
        if (det(B).is_zero()) {
            r.pass = false;
            r.detail = "degenerate solution";
            return r;
        }
        r.detail = "solution space exactly 1-dimensional, det != 0 (exact)";
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = e.what();
    }
    return r;
}

/// Hecke suite: braid identity, distant commutation, characteristic
/// polynomial annihilation.
inline CheckResult criterion_hecke(double tol = 1e-10) {
    CheckResult r{5, "generalized Hecke relations of the braiding operators", true, ""};
    try {
        QContext N = QContext::numeric(1.3);
        double worst = 0;
        for (auto [t, n] : std::vector<std::pair<int, int>>{{1, 3}, {1, 4}, {2, 3}}) {
            HeckeReport rep = verify_hecke(HalfInt(t), n, N, tol);
            for (const auto& c : rep.checks) {
                worst = std::max(worst, c.residual);
                if (!c.pass) {
                    r.pass = false;
                    r.detail = c.name + " residual " + detail::fmt(c.residual);
                    return r;
                }
            }
        }
        r.detail = "(l=1/2, N=3,4) and (l=1, N=3); worst residual " + detail::fmt(worst);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = e.what();
    }
    return r;
}

/// Spin equivariance identities (exact) and the algebra-isomorphism facts:
/// dim cl_q = 8, s_q surjective onto the 2x2 matrix algebra.
inline CheckResult criterion_spin_equivariance() {
    CheckResult r{6, "spin equivariance and Clifford algebra dimension", true, ""};
    try {
        QContext X = QContext::exact();
        Representation V = build_irrep(HalfInt::whole(1), X);
        BilinearForm B = invariant_form(V);
        SpectralSplit S = spectral_split(braiding_op(HalfInt::whole(1), HalfInt::whole(1), X));
        CliffordAlgebra C = build_clifford(V, B, S);
        SpinRepresentation spin = spin_representation(C);
        HopfStructure H = HopfStructure::primary();
        for (GenKind g : {GenKind::e, GenKind::f, GenKind::k}) {
            TensorElement cop = H.coproduct(AlgebraElement::generator(X, g));
            for (int p = 0; p < 3; ++p) {
                QMat lhs(2, 2);
                for (int j = 0; j < 3; ++j) {
                    const QValue& rho = V.gen(g).at(j, p);
                    if (!rho.is_zero()) lhs = lhs + rho * spin.s_letters[size_t(j)];
                }
                QMat rhs(2, 2);
                for (const auto& [m, c] : cop.terms()) {
                    AlgebraElement first = AlgebraElement::monomial(X, m.first, c);
                    AlgebraElement second = AlgebraElement::monomial(X, m.second, X.one());
                    rhs = rhs + eval_element(first, spin.sigma) * spin.s_letters[size_t(p)] *
                                    eval_element(H.antipode(second), spin.sigma);
                }
                if (!(lhs - rhs).is_zero()) {
                    r.pass = false;
                    r.detail = "equivariance identity failed";
                    return r;
                }
            }
        }
        IsomorphismReport iso = verify_algebra_isomorphism(C, spin);
        for (const auto& c : iso.checks)
            if (!c.pass) {
                r.pass = false;
                r.detail = c.name;
                return r;
            }
        r.detail = "equivariance exact; dim 8; s_q rank 4; twisted companion distinct";
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = e.what();
    }
    return r;
}

/// Invariance of Ω = Σ v_i ⊗ v_i^* under the generators, exactly.
inline CheckResult criterion_invariant_vector() {
    CheckResult r{7, "invariance of the canonical vector in V ⊗ V*", true, ""};
    try {
        QContext X = QContext::exact();
        HopfStructure H = HopfStructure::primary();
        for (int t : {1, 2, 3}) {
            Representation V = build_irrep(HalfInt(t), X);
            Representation Vd = dual_rep(V, H);
            ModuleAction T = tensor_rep(V, Vd, H);
            QVec omega = invariant_vector(V);
            for (GenKind g : {GenKind::e, GenKind::f, GenKind::k}) {
                QVec moved = apply_matrix(T.gen(g), omega);
                QValue eps = H.counit(AlgebraElement::generator(X, g));
                for (size_t i = 0; i < moved.size(); ++i)
                    if (!(moved[i] - eps * omega[i]).is_zero()) {
                        r.pass = false;
                        r.detail = "failed at 2l = " + std::to_string(t);
                        return r;
                    }
            }
        }
        r.detail = "exact for the generators on 2l in {1, 2, 3}";
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = e.what();
    }
    return r;
}

/// Summability at desk scale: trace-tail stabilization and exponential
/// decay fits for the sign-operator data.
inline CheckResult criterion_summability() {
    CheckResult r{8, "trace-class behaviour of the sign-operator data", true, ""};
    try {
        TraceTailResult tt = trace_tail(HalfInt(400), 1.5); // jmax = 200
        double s25 = tt.partial_sums[50];
        if (!(tt.total - s25 < 1e-12) || !tt.ratios_below_one_beyond_2 ||
            !std::isfinite(tt.fitted_C)) {
            r.pass = false;
            r.detail = "trace tail: residual beyond j=25 is " + detail::fmt(tt.total - s25);
            return r;
        }
        for (int k : {-2, -1, 1, 2}) {
            CommutatorDecayResult dec = commutator_decay(HalfInt(k), HalfInt(400), 1.5);
            if (!std::isfinite(dec.fitted_C) || !dec.monotone_beyond_2) {
                r.pass = false;
                r.detail = "decay fit failed for shift twice = " + std::to_string(k);
                return r;
            }
            for (const auto& [j, c] : dec.coefficients)
                if (std::abs(c) > dec.fitted_C * std::pow(1.5, -2.0 * j.value()) * (1 + 1e-12)) {
                    r.pass = false;
                    r.detail = "decay bound violated at j = " + j.str();
                    return r;
                }
        }
        r.detail = "partial sums stable to 1e-12 by j=25; C q0^{-4j} and C q0^{-2j} fits finite";
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = e.what();
    }
    return r;
}

/// Classical regression at q0 = 1 + 1e-4 against the q = 1 limit of the
/// same construction (self-consistent oracle via exact-mode limits).
inline CheckResult criterion_classical_limit() {
    CheckResult r{9, "classical-limit regression at q0 = 1 + 1e-4", true, ""};
    try {
        QContext X = QContext::exact();
        double q0 = 1.0 + 1e-4;
        QContext N = QContext::numeric(q0);
        double worst = 0;
        auto track = [&](double v) { worst = std::max(worst, v); };

        for (int t = 1; t <= 4; ++t) {
            Representation RX = build_irrep(HalfInt(t), X);
            Representation RN = build_irrep(HalfInt(t), N);
            for (GenKind g : {GenKind::e, GenKind::f, GenKind::k})
                for (int i = 0; i < RX.dim; ++i)
                    for (int j = 0; j < RX.dim; ++j)
                        track(std::abs(RN.gen(g).at(i, j).eval(q0) -
                                       limit_q_to_1_double(RX.gen(g).at(i, j))));
        }
        BraidingOperator b = braiding_op(HalfInt(1), HalfInt(1), N);
        track((b.Rhat - b.flip).max_abs(q0));

        Representation V = build_irrep(HalfInt::whole(1), N);
        SpectralSplit S = spectral_split(braiding_op(HalfInt::whole(1), HalfInt::whole(1), N));
        CliffordAlgebra C = build_clifford(V, invariant_form(V), S);
        SpinRepresentation spinN = spin_representation(C);
        QContext XE = QContext::exact();
        Representation VE = build_irrep(HalfInt::whole(1), XE);
        SpectralSplit SE = spectral_split(braiding_op(HalfInt::whole(1), HalfInt::whole(1), XE));
        SpinRepresentation spinX = spin_representation(build_clifford(VE, invariant_form(VE), SE));
        for (int p = 0; p < 3; ++p)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    track(std::abs(spinN.s_letters[size_t(p)].at(i, j).eval(q0) -
                                   limit_q_to_1_double(spinX.s_letters[size_t(p)].at(i, j))));

        DiracOperator DX = build_dirac(X);
        DiracOperator DN = build_dirac(N);
        for (int t : {1, 2}) {
            QMat MX = DX.realize(HalfInt(t));
            QMat MN = DN.realize(HalfInt(t));
            for (int i = 0; i < MX.rows(); ++i)
                for (int j = 0; j < MX.cols(); ++j)
                    track(std::abs(MN.at(i, j).eval(q0) -
                                   limit_q_to_1_double(MX.at(i, j))));
        }
        if (worst >= 1e-3) {
            r.pass = false;
            r.detail = "worst deviation " + detail::fmt(worst);
            return r;
        }
        r.detail = "worst deviation from the q = 1 oracle: " + detail::fmt(worst);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = e.what();
    }
    return r;
}

/// Extra numeric-chain spot checks at a caller-chosen q0 (used by the
/// command-line verify when --q is given).
inline CheckResult numeric_chain_spot_checks(double q0, double tol = 1e-10) {
    CheckResult r{0, "numeric chain at q0 = " + detail::fmt(q0), true, ""};
    try {
        QContext N = QContext::numeric(q0);
        DiracOperator D = build_dirac(N);
        double worst = 0;
        for (int t = 1; t <= 4; ++t) {
            D.spectrum(HalfInt(t));
            worst = std::max(worst, commutator_residual(D, D.realize(HalfInt(t)), HalfInt(t)));
        }
        HeckeReport hecke = verify_hecke(HalfInt(1), 3, N, tol);
        for (const auto& c : hecke.checks) worst = std::max(worst, c.residual);
        if (worst >= tol) {
            r.pass = false;
            r.detail = "residual " + detail::fmt(worst);
            return r;
        }
        r.detail = "spectrum, commutators and Hecke residuals below " + detail::fmt(tol);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = e.what();
    }
    return r;
}

struct VerifyOptions {
    double tol = 1e-10;
    bool corrupt_demo = false;
    bool extra_numeric = false;
    double extra_q0 = 1.5;
};

inline std::vector<CheckResult> run_acceptance_criteria(const VerifyOptions& opt = {}) {
    std::vector<CheckResult> out;
    out.push_back(criterion_golden_spectrum());
    out.push_back(criterion_clifford_golden(opt.corrupt_demo));
    out.push_back(criterion_dirac_invariance(opt.tol));
    out.push_back(criterion_form_uniqueness());
    out.push_back(criterion_hecke(opt.tol));
    out.push_back(criterion_spin_equivariance());
    out.push_back(criterion_invariant_vector());
    out.push_back(criterion_summability());
    out.push_back(criterion_classical_limit());
    if (opt.extra_numeric) out.push_back(numeric_chain_spot_checks(opt.extra_q0, opt.tol));
    return out;
}

} // namespace qdirac
