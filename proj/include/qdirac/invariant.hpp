#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdirac/repr.hpp"

namespace qdirac {

/// Module homomorphism between two actions, stored as its matrix.
struct Intertwiner {
    QMat matrix; // tgt.dim x src.dim
};

namespace detail {

inline void normalize_map(QMat& T, const QContext& ctx) {
    // exact: first nonzero entry (row-major) becomes 1;
    // numeric: unit largest-magnitude entry, first nonzero entry positive
    if (ctx.is_exact()) {
        for (int i = 0; i < T.rows(); ++i)
            for (int j = 0; j < T.cols(); ++j)
                if (!T.at(i, j).is_zero()) {
                    T = T.at(i, j).inverse() * T;
                    return;
                }
        return;
    }
    double best = 0;
    for (int i = 0; i < T.rows(); ++i)
        for (int j = 0; j < T.cols(); ++j)
            best = std::max(best, std::abs(T.at(i, j).numeric_value()));
    if (best == 0) return;
    double lead = 0;
    for (int i = 0; i < T.rows() && lead == 0; ++i)
        for (int j = 0; j < T.cols() && lead == 0; ++j)
            if (std::abs(T.at(i, j).numeric_value()) > 1e-9 * best)
                lead = T.at(i, j).numeric_value();
    double scale = (lead < 0 ? -1.0 : 1.0) / best;
    T = QValue::numeric(scale, ctx.q0_value) * T;
}

} // namespace detail

/// Solves T π_src(x) = π_tgt(x) T over the generators.  Returns the
/// normalized intertwiner if the solution space is one-dimensional, nothing
/// if it is zero, and throws schur_error if it is larger (impossible
/// between irreducibles).
inline std::optional<Intertwiner> solve_intertwiner(const ModuleAction& src,
                                                    const ModuleAction& tgt,
                                                    double tol = 1e-9) {
    const QContext& ctx = src.ctx;
    int rows = 0;
    int unknowns = tgt.dim * src.dim;
    std::vector<GenKind> gens = {GenKind::e, GenKind::f, GenKind::k};
    QMat system(int(gens.size()) * tgt.dim * src.dim, unknowns);
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        const QMat& A = src.gen(gens[gi]);
        const QMat& B = tgt.gen(gens[gi]);
        // (T A - B T)(r, c) = Σ_b T(r,b) A(b,c) - Σ_a B(r,a) T(a,c)
        for (int r = 0; r < tgt.dim; ++r)
            for (int c = 0; c < src.dim; ++c) {
                int row = rows++;
                for (int bcol = 0; bcol < src.dim; ++bcol)
                    system.at(row, r * src.dim + bcol) += A.at(bcol, c);
                for (int a = 0; a < tgt.dim; ++a)
                    system.at(row, a * src.dim + c) -= B.at(r, a);
            }
    }
    auto kernel = nullspace(system, ctx, tol);
    if (kernel.empty()) return std::nullopt;
    if (kernel.size() > 1)
        throw schur_error("intertwiner space has dimension " + std::to_string(kernel.size()));
    QMat T(tgt.dim, src.dim);
    for (int i = 0; i < tgt.dim; ++i)
        for (int j = 0; j < src.dim; ++j) T.at(i, j) = kernel[0][size_t(i) * src.dim + j];
    detail::normalize_map(T, ctx);
    return Intertwiner{T};
}

/// Invariant bilinear form on V ⊗ V: B(x ▷ (v⊗w)) = ε(x) B(v⊗w).
struct BilinearForm {
    QMat mat; // B(v_i ⊗ v_j) = mat(i, j)

    QValue value(int i, int j) const { return mat.at(i, j); }

    QValue apply(const QVec& tensor_coords) const {
        int d = mat.rows();
        QValue s;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const QValue& c = tensor_coords[size_t(i) * d + j];
                if (!c.is_zero() && !mat.at(i, j).is_zero()) s += mat.at(i, j) * c;
            }
        return s;
    }
};

/// Builds the invariant form two ways and cross-checks them: as
/// eval ∘ (τ ⊗ id) through a module isomorphism τ: V -> V*, and as the
/// one-dimensional null space of the invariance conditions.  The returned
/// matrix is normalized so its first nonzero entry is 1; callers pick their
/// own overall constant (the Clifford quotient pins b = -1 downstream).
inline BilinearForm invariant_form(const Representation& V, double tol = 1e-9) {
    const QContext& ctx = V.ctx;
    HopfStructure H = HopfStructure::primary();
    Representation Vdual = dual_rep(V, H);

    auto tau = solve_intertwiner(V, Vdual, tol);
    if (!tau) throw error("invariant_form: module is not self-dual");
    // B(v_i ⊗ v_j) = eval(τ(v_i) ⊗ v_j) = τ-matrix transposed
    QMat B_tau = tau->matrix.transpose();

    // independent route: null space of the invariance linear system
    ModuleAction T = tensor_rep(V, V, H);
    int d2 = T.dim;
    QMat system(3 * d2, d2);
    int rows = 0;
    for (GenKind g : {GenKind::e, GenKind::f, GenKind::k}) {
        QMat act = T.gen(g).transpose();
        bool is_k = g == GenKind::k;
        for (int r = 0; r < d2; ++r) {
            int row = rows++;
            for (int c = 0; c < d2; ++c) system.at(row, c) += act.at(r, c);
            if (is_k) system.at(row, r) -= ctx.one();
        }
    }
    auto kernel = nullspace(system, ctx, tol);
    if (kernel.size() != 1)
        throw error("invariant_form: invariance system has solution dimension " +
                    std::to_string(kernel.size()));
    QMat B_sys(V.dim, V.dim);
    for (int i = 0; i < V.dim; ++i)
        for (int j = 0; j < V.dim; ++j) B_sys.at(i, j) = kernel[0][size_t(i) * V.dim + j];
    detail::normalize_map(B_sys, ctx);

    QMat B_norm = B_tau;
    detail::normalize_map(B_norm, ctx);
    QMat diff = B_norm - B_sys;
    bool agree = ctx.is_exact() ? diff.is_zero() : diff.max_abs(ctx.q0_value) < 1e-8;
    if (!agree) throw error("invariant_form: intertwiner and invariance routes disagree");

    QValue determinant = det(B_norm);
    bool nondeg = ctx.is_exact() ? !determinant.is_zero()
                                 : std::abs(determinant.numeric_value()) > 1e-12;
    if (!nondeg) throw error("invariant_form: degenerate form");
    return BilinearForm{B_norm};
}

/// The invariant vector Ω = Σ_i v_i ⊗ v_i* in V ⊗ V*.
inline QVec invariant_vector(const Representation& V) {
    QVec omega(size_t(V.dim) * V.dim, V.ctx.zero());
    for (int i = 0; i < V.dim; ++i) omega[size_t(i) * V.dim + i] = V.ctx.one();
    return omega;
}

} // namespace qdirac
