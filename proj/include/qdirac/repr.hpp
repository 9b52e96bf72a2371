#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qdirac/algebra.hpp"
#include "qdirac/matrix.hpp"

namespace qdirac {

/// A finite-dimensional module given by its generator matrices.  k always
/// acts diagonally as q^{weights[i]} in the stored basis.
struct ModuleAction {
    QContext ctx;
    int dim = 0;
    std::vector<HalfInt> weights;
    QMat E, F, K, Kinv;

    const QMat& gen(GenKind g) const {
        switch (g) {
            case GenKind::e: return E;
            case GenKind::f: return F;
            case GenKind::k: return K;
            case GenKind::kinv: return Kinv;
        }
        throw error("unknown generator");
    }
};

/// Irreducible highest-weight module V_l with the weight basis ordered
/// m = l, l-1, ..., -l.
struct Representation : ModuleAction {
    HalfInt l;
};

namespace detail {

// deterministic sign of an exact scalar, probed at an interior point
inline int sign_of(const QValue& v, double q0_fallback = 1.7) {
    double x = v.is_exact() ? v.eval(q0_fallback) : v.numeric_value();
    return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

} // namespace detail

/// The irreducible (2l+1)-dimensional module: k|l,m> = q^m |l,m>,
/// e|l,m> = sqrt([l-m][l+m+1]) |l,m+1>, f|l,m> = sqrt([l-m+1][l+m]) |l,m-1>.
inline Representation build_irrep(HalfInt l, const QContext& ctx) {
    if (l.twice < 0) throw error("build_irrep requires l >= 0");
    Representation R;
    R.ctx = ctx;
    R.l = l;
    R.dim = l.twice + 1;
    R.E = QMat(R.dim, R.dim);
    R.F = QMat(R.dim, R.dim);
    R.K = QMat(R.dim, R.dim);
    R.Kinv = QMat(R.dim, R.dim);
    for (int i = 0; i < R.dim; ++i) {
        HalfInt m(l.twice - 2 * i);
        R.weights.push_back(m);
        R.K.at(i, i) = ctx.qpow(m);
        R.Kinv.at(i, i) = ctx.qpow(-m);
        if (i > 0) {
            // raising: |l,m> -> |l,m+1>, coefficient sqrt([l-m][l+m+1])
            long lm = (l - m).as_integer(), lm1 = (l + m).as_integer() + 1;
            R.E.at(i - 1, i) = (qint(lm, ctx) * qint(lm1, ctx)).sqrt();
        }
        if (i < R.dim - 1) {
            long lm1 = (l - m).as_integer() + 1, lm = (l + m).as_integer();
            R.F.at(i + 1, i) = (qint(lm1, ctx) * qint(lm, ctx)).sqrt();
        }
    }
    return R;
}

/// Evaluation of a PBW element in a module; an algebra homomorphism.
inline QMat eval_element(const AlgebraElement& x, const ModuleAction& R) {
    QMat total(R.dim, R.dim);
    for (const auto& [m, c] : x.terms()) {
        QMat t = QMat::identity(R.dim, R.ctx);
        for (int i = 0; i < m.a; ++i) t = t * R.F;
        for (int i = 0; i < m.b; ++i) t = t * R.E;
        for (int i = 0; i < std::abs(m.c); ++i) t = t * (m.c > 0 ? R.K : R.Kinv);
        total = total + c * t;
    }
    return total;
}

/// Dual module: x acts as the transpose of S(x), S taken from the given
/// Hopf structure.  Basis indices follow the source, so weights negate.
inline Representation dual_rep(const Representation& R, const HopfStructure& H) {
    Representation D;
    D.ctx = R.ctx;
    D.l = R.l;
    D.dim = R.dim;
    for (auto w : R.weights) D.weights.push_back(-w);
    auto dual_gen = [&](GenKind g) {
        return eval_element(H.antipode(AlgebraElement::generator(R.ctx, g)), R).transpose();
    };
    D.E = dual_gen(GenKind::e);
    D.F = dual_gen(GenKind::f);
    D.K = dual_gen(GenKind::k);
    D.Kinv = dual_gen(GenKind::kinv);
    return D;
}

/// Tensor-product action (π_A ⊗ π_B)Δ(x) for the chosen Hopf structure.
inline ModuleAction tensor_rep(const ModuleAction& A, const ModuleAction& B,
                               const HopfStructure& H) {
    if (A.ctx.mode != B.ctx.mode ||
        (!A.ctx.is_exact() && A.ctx.q0_value != B.ctx.q0_value))
        throw mode_mismatch_error("tensor_rep requires the same scalar mode");
    ModuleAction T;
    T.ctx = A.ctx;
    T.dim = A.dim * B.dim;
    for (auto wa : A.weights)
        for (auto wb : B.weights) T.weights.push_back(wa + wb);
    if (H.variant() == HopfVariant::primary) {
        T.E = kron(A.E, B.K) + kron(A.Kinv, B.E);
        T.F = kron(A.F, B.K) + kron(A.Kinv, B.F);
    } else {
        T.E = kron(A.K, B.E) + kron(A.E, B.Kinv);
        T.F = kron(A.K, B.F) + kron(A.F, B.Kinv);
    }
    T.K = kron(A.K, B.K);
    T.Kinv = kron(A.Kinv, B.Kinv);
    return T;
}

/// One irreducible summand of a decomposition: the label l and an isometric
/// embedding V_l -> T whose columns are the images of |l,m>, m descending.
struct IrrepComponent {
    HalfInt l;
    QMat embedding;
};

namespace detail {

inline QValue vec_norm_sq(const QVec& v) {
    QValue s;
    for (const auto& x : v) s += x * x;
    return s;
}

inline bool vec_is_zero(const QVec& v, double tol) {
    // accumulators may hold exact zeros even inside numeric vectors
    for (const auto& x : v) {
        if (x.is_exact()) {
            if (!x.is_zero()) return false;
        } else if (std::abs(x.numeric_value()) > tol) {
            return false;
        }
    }
    return true;
}

} // namespace detail

/// Clebsch-Gordan style decomposition of a module whose k-action is
/// diagonal: finds highest-weight vectors as the kernel of the raising
/// action restricted to each weight space, then generates each component
/// downward with the lowering action.  Fails loudly if the components do
/// not exhaust the space.
inline std::vector<IrrepComponent> decompose(const ModuleAction& T, double tol = 1e-9) {
    std::vector<IrrepComponent> out;
    if (T.dim == 0) return out;

    // index lists per weight, descending weight order
    std::map<int, std::vector<int>, std::greater<int>> weight_spaces;
    for (int i = 0; i < T.dim; ++i) weight_spaces[T.weights[i].twice].push_back(i);

    int covered = 0;
    for (const auto& [wt, idx] : weight_spaces) {
        if (wt < 0) break; // highest weights are nonnegative
        auto up = weight_spaces.find(wt + 2);
        int up_dim = up == weight_spaces.end() ? 0 : int(up->second.size());
        // restriction of E to this weight space
        QMat Er(up_dim, int(idx.size()));
        for (int r = 0; r < up_dim; ++r)
            for (int c = 0; c < int(idx.size()); ++c) Er.at(r, c) = T.E.at(up->second[r], idx[c]);
        std::vector<QVec> kernel;
        if (up_dim == 0) {
            for (size_t c = 0; c < idx.size(); ++c) {
                QVec v(idx.size(), T.ctx.zero());
                v[c] = T.ctx.one();
                kernel.push_back(std::move(v));
            }
        } else {
            kernel = nullspace(Er, T.ctx, tol);
        }
        for (auto& hw_small : kernel) {
            QVec hw(T.dim, T.ctx.zero());
            for (size_t c = 0; c < idx.size(); ++c) hw[idx[c]] = hw_small[c];
            // normalize: unit norm, first nonzero coordinate positive
            QValue nrm = detail::vec_norm_sq(hw).sqrt();
            for (auto& x : hw) x = x / nrm;
            for (const auto& x : hw) {
                if (x.is_zero()) continue;
                if (detail::sign_of(x) < 0)
                    for (auto& y : hw) y = -y;
                break;
            }
            HalfInt l(wt);
            QMat emb(T.dim, l.twice + 1);
            QVec cur = hw;
            for (int col = 0;; ++col) {
                for (int i = 0; i < T.dim; ++i) emb.at(i, col) = cur[i];
                if (col == l.twice) break;
                HalfInt m(l.twice - 2 * col);
                long a = (l - m).as_integer() + 1, b = (l + m).as_integer();
                QValue coeff = (qint(a, T.ctx) * qint(b, T.ctx)).sqrt();
                cur = apply_matrix(T.F, cur);
                for (auto& x : cur) x = x / coeff;
            }
            // the string must terminate: f kills the lowest-weight vector
            QVec below = apply_matrix(T.F, cur);
            if (!detail::vec_is_zero(below, tol * 100))
                throw error("decompose: lowering did not terminate at -l");
            covered += l.twice + 1;
            out.push_back(IrrepComponent{l, std::move(emb)});
        }
    }
    if (covered != T.dim)
        throw error("decompose: components cover dimension " + std::to_string(covered) +
                    " of " + std::to_string(T.dim) + " (degenerate q0 or bug)");
    return out;
}

/// Per-relation verification report.
struct RelationCheck {
    std::string name;
    bool pass = false;
    double residual = 0; // 0 in exact mode when pass
};

struct RelationReport {
    std::vector<RelationCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

inline RelationCheck check_identity(const std::string& name, const QMat& lhs, const QMat& rhs,
                                    const QContext& ctx, double tol = 1e-10) {
    RelationCheck c;
    c.name = name;
    QMat d = lhs - rhs;
    if (ctx.is_exact()) {
        c.pass = d.is_zero();
        c.residual = c.pass ? 0.0 : 1.0;
    } else {
        c.residual = d.max_abs(ctx.q0_value);
        c.pass = c.residual < tol;
    }
    return c;
}

} // namespace detail

/// Checks every defining relation of U_q(su(2)) on the module's matrices.
/// The rank-1 q-Serre relations are vacuous and reported as such.
inline RelationReport check_defining_relations(const ModuleAction& R) {
    RelationReport rep;
    const QContext& ctx = R.ctx;
    QMat I = QMat::identity(R.dim, ctx);
    rep.checks.push_back(detail::check_identity("k k^-1 = 1", R.K * R.Kinv, I, ctx));
    rep.checks.push_back(detail::check_identity("k e k^-1 = q e", R.K * R.E * R.Kinv,
                                                ctx.qpow(HalfInt::whole(1)) * R.E, ctx));
    rep.checks.push_back(detail::check_identity("k f k^-1 = q^-1 f", R.K * R.F * R.Kinv,
                                                ctx.qpow(HalfInt::whole(-1)) * R.F, ctx));
    QMat comm = R.E * R.F - R.F * R.E;
    QMat rhs = ctx.lambda().inverse() * (R.K * R.K - R.Kinv * R.Kinv);
    rep.checks.push_back(detail::check_identity("[e,f] = (k^2-k^-2)/(q-q^-1)", comm, rhs, ctx));
    rep.checks.push_back(RelationCheck{"q-Serre relations (vacuous for rank 1)", true, 0.0});
    return rep;
}

} // namespace qdirac
