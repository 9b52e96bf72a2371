#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qdirac/repr.hpp"

namespace qdirac {

/// Braiding operator R̂ = σR on V_{l1} ⊗ V_{l2} together with its factors.
/// R̂ intertwines the tensor action with itself when l1 = l2, and the two
/// tensor orders otherwise.
struct BraidingOperator {
    HalfInt l1, l2;
    QContext ctx;
    QMat R;     // (π_{l1} ⊗ π_{l2}) R
    QMat flip;  // σ : V_{l1}⊗V_{l2} -> V_{l2}⊗V_{l1}
    QMat Rhat;  // σ R
    ModuleAction tensor; // primary tensor action on V_{l1} ⊗ V_{l2}
};

/// Matrix of the universal R-matrix in the pair of irreps:
/// R = q^{H⊗H/2} · Σ_n c_n (e k)^n ⊗ (f k^-1)^n with c_0 = 1 and
/// c_n = c_{n-1} q^n (q-q^{-1})/[n]; the series truncates at the
/// nilpotency order of e and f, and the Cartan factor acts on |m1⟩⊗|m2⟩
/// as q^{2 m1 m2}.  The dressing of the series is forced by the
/// intertwining identity R Δ(x) = Δ^op(x) R in this coproduct convention,
/// which the tests enforce.
inline QMat rmatrix(HalfInt l1, HalfInt l2, const QContext& ctx) {
    Representation A = build_irrep(l1, ctx);
    Representation B = build_irrep(l2, ctx);
    int dim = A.dim * B.dim;
    QMat series(dim, dim);
    QMat EKn = QMat::identity(A.dim, ctx);
    QMat FKn = QMat::identity(B.dim, ctx);
    QMat EK = A.E * A.K, FKi = B.F * B.Kinv;
    QValue lambda = ctx.lambda();
    QValue coeff = ctx.one();
    int nmax = std::min(l1.twice, l2.twice);
    for (int n = 0; n <= nmax; ++n) {
        if (n > 0) {
            EKn = EKn * EK;
            FKn = FKn * FKi;
            coeff = coeff * ctx.qpow(HalfInt::whole(n)) * lambda / qint(long(n), ctx);
        }
        series = series + coeff * kron(EKn, FKn);
    }
    QMat R(dim, dim);
    for (int i1 = 0; i1 < A.dim; ++i1)
        for (int i2 = 0; i2 < B.dim; ++i2) {
            QValue cartan = ctx.qpow_u(A.weights[i1].twice * B.weights[i2].twice);
            int row = i1 * B.dim + i2;
            for (int col = 0; col < dim; ++col) {
                const QValue& v = series.at(row, col);
                if (!v.is_zero()) R.at(row, col) = cartan * v;
            }
        }
    return R;
}

/// The permutation σ(v ⊗ w) = w ⊗ v as a matrix V1⊗V2 -> V2⊗V1.
inline QMat flip_matrix(int dim1, int dim2, const QContext& ctx) {
    QMat s(dim1 * dim2, dim1 * dim2);
    for (int i = 0; i < dim1; ++i)
        for (int j = 0; j < dim2; ++j) s.at(j * dim1 + i, i * dim2 + j) = ctx.one();
    return s;
}

inline BraidingOperator braiding_op(HalfInt l1, HalfInt l2, const QContext& ctx) {
    BraidingOperator b;
    b.l1 = l1;
    b.l2 = l2;
    b.ctx = ctx;
    Representation A = build_irrep(l1, ctx);
    Representation B = build_irrep(l2, ctx);
    b.R = rmatrix(l1, l2, ctx);
    b.flip = flip_matrix(A.dim, B.dim, ctx);
    b.Rhat = b.flip * b.R;
    b.tensor = tensor_rep(A, B, HopfStructure::primary());
    return b;
}

/// Eigenvalue-labeled piece of the spectral decomposition of R̂.
struct SpectralEigenspace {
    QValue eigenvalue;
    int sign = 0; // +1 or -1
    std::vector<HalfInt> component_labels;
    QMat basis; // columns span the eigenspace, one column per basis vector
};

/// The positive/negative split of V_l ⊗ V_l under R̂.
struct SpectralSplit {
    QContext ctx;
    std::vector<SpectralEigenspace> spaces;
    QMat proj_pos, proj_neg;
    int dim_pos = 0, dim_neg = 0;

    const SpectralEigenspace* space_for(HalfInt component) const {
        for (const auto& s : spaces)
            for (auto l : s.component_labels)
                if (l == component) return &s;
        return nullptr;
    }
};

/// Spectral decomposition of R̂ on V_l ⊗ V_l.  By Schur's lemma R̂ is a
/// scalar on each Clebsch-Gordan component, so the eigenvalues come from
/// applying R̂ to one vector per component; eigenvalues closer than 1e-8
/// (numeric mode) merge into one eigenspace.  A vanishing eigenvalue is a
/// hard error: R̂ is invertible for every q > 0.
inline SpectralSplit spectral_split(const BraidingOperator& b, double merge_tol = 1e-8) {
    if (!(b.l1 == b.l2)) throw error("spectral_split requires l1 = l2");
    const QContext& ctx = b.ctx;
    SpectralSplit out;
    out.ctx = ctx;
    auto comps = decompose(b.tensor);

    struct Piece {
        QValue eig;
        HalfInt l;
        const QMat* emb;
    };
    std::vector<Piece> pieces;
    for (const auto& c : comps) {
        // eigenvalue from the highest-weight column
        QVec v(b.tensor.dim), w;
        for (int i = 0; i < b.tensor.dim; ++i) v[i] = c.embedding.at(i, 0);
        w = apply_matrix(b.Rhat, v);
        int lead = -1;
        for (int i = 0; i < b.tensor.dim; ++i)
            if (!detail::vec_is_zero({v[i]}, 1e-12)) {
                lead = i;
                break;
            }
        if (lead < 0) throw error("spectral_split: zero embedding column");
        QValue eig = w[lead] / v[lead];
        // R̂ must act as this scalar on the whole column
        QVec resid = w;
        for (int i = 0; i < b.tensor.dim; ++i) resid[i] = resid[i] - eig * v[i];
        if (!detail::vec_is_zero(resid, 1e-9))
            throw error("spectral_split: R̂ is not scalar on a component");
        if (ctx.is_exact() ? eig.is_zero() : std::abs(eig.numeric_value()) < merge_tol)
            throw error("spectral_split: eigenvalue at zero contradicts invertibility");
        pieces.push_back(Piece{eig, c.l, &c.embedding});
    }

    // group by eigenvalue
    std::vector<std::vector<const Piece*>> groups;
    for (const auto& p : pieces) {
        bool placed = false;
        for (auto& g : groups) {
            const QValue& ref = g.front()->eig;
            bool same = ctx.is_exact()
                            ? (ref - p.eig).is_zero()
                            : std::abs(ref.numeric_value() - p.eig.numeric_value()) < merge_tol;
            if (same) {
                g.push_back(&p);
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back({&p});
    }

    int dim = b.tensor.dim;
    out.proj_pos = QMat(dim, dim);
    out.proj_neg = QMat(dim, dim);
    for (const auto& g : groups) {
        SpectralEigenspace space;
        space.eigenvalue = g.front()->eig;
        space.sign = detail::sign_of(space.eigenvalue,
                                     ctx.is_exact() ? 1.7 : ctx.q0_value);
        if (space.sign == 0) throw error("spectral_split: sign of eigenvalue undetermined");
        int cols = 0;
        for (const Piece* p : g) cols += p->l.twice + 1;
        space.basis = QMat(dim, cols);
        int at = 0;
        for (const Piece* p : g) {
            space.component_labels.push_back(p->l);
            for (int c = 0; c <= p->l.twice; ++c, ++at)
                for (int i = 0; i < dim; ++i) space.basis.at(i, at) = p->emb->at(i, c);
        }
        // embeddings are orthonormal, so the projector is basis basis^T
        QMat proj = space.basis * space.basis.transpose();
        if (space.sign > 0) {
            out.proj_pos = out.proj_pos + proj;
            out.dim_pos += cols;
        } else {
            out.proj_neg = out.proj_neg + proj;
            out.dim_neg += cols;
        }
        out.spaces.push_back(std::move(space));
    }
    return out;
}

/// R^t R = (σRσ)R = R̂² on a tensor square.  This is the operator whose
/// matrix coefficients cut out quantum Lie algebras; the formal division
/// by h = log q is a normalization that covariance never needs, so it is
/// not performed here.
inline QMat rtr(const BraidingOperator& b) {
    if (!(b.l1 == b.l2)) throw error("rtr requires a tensor square");
    return b.Rhat * b.Rhat;
}

/// One verified Hecke-family identity with its residual norm.
struct HeckeReport {
    std::vector<RelationCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

inline QMat embed_leg(const QMat& op, int leg, int N, int d, const QContext& ctx) {
    // op acts on legs (leg, leg+1) of V^{⊗N}, identity elsewhere
    QMat m = QMat::identity(1, ctx);
    int at = 0;
    while (at < N) {
        if (at == leg) {
            m = kron(m, op);
            at += 2;
        } else {
            m = kron(m, QMat::identity(d, ctx));
            at += 1;
        }
    }
    return m;
}

} // namespace detail

/// Verifies the generalized Hecke-algebra relations of the braiding
/// operators on V_l^{⊗N}: the braid identity, commutation of distant
/// generators, and annihilation by the characteristic polynomial built
/// from the spectral split.
inline HeckeReport verify_hecke(HalfInt l, int N, const QContext& ctx, double tol = 1e-10) {
    if (N < 2) throw error("verify_hecke requires N >= 2");
    HeckeReport rep;
    BraidingOperator b = braiding_op(l, l, ctx);
    int d = l.twice + 1;

    auto residual = [&](const QMat& m) {
        return ctx.is_exact() ? (m.is_zero() ? 0.0 : 1.0) : m.max_abs(ctx.q0_value);
    };
    auto record = [&](const std::string& name, const QMat& diff) {
        double r = residual(diff);
        rep.checks.push_back(RelationCheck{name, r < tol, r});
    };

    if (N >= 3) {
        QMat R1 = detail::embed_leg(b.Rhat, 0, 3, d, ctx);
        QMat R2 = detail::embed_leg(b.Rhat, 1, 3, d, ctx);
        record("braid relation R1 R2 R1 = R2 R1 R2", R1 * R2 * R1 - R2 * R1 * R2);
    }
    if (N >= 4) {
        QMat R1 = detail::embed_leg(b.Rhat, 0, 4, d, ctx);
        QMat R3 = detail::embed_leg(b.Rhat, 2, 4, d, ctx);
        record("distant commutation R1 R3 = R3 R1", R1 * R3 - R3 * R1);
    }
    // characteristic polynomial from the split annihilates R̂
    SpectralSplit split = spectral_split(b);
    QMat poly = QMat::identity(d * d, ctx);
    for (const auto& s : split.spaces) {
        QMat factor = b.Rhat - s.eigenvalue * QMat::identity(d * d, ctx);
        poly = poly * factor;
    }
    record("characteristic polynomial annihilates R̂", poly);
    return rep;
}

} // namespace qdirac
