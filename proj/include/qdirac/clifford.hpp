#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdirac/braiding.hpp"
#include "qdirac/invariant.hpp"

namespace qdirac {

/// Word in the Clifford generators, stored by basis position in the
/// adjoint module: position 0 = ψ_1, 1 = ψ_0, 2 = ψ_{-1}.  The empty word
/// is the unit.
using CliffWord = std::vector<int>;

inline std::string cliff_word_str(const CliffWord& w) {
    if (w.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += " ";
        int m = 1 - w[i];
        s += "psi(" + std::to_string(m) + ")";
    }
    return s;
}

/// Degree-lexicographic order with letter precedence ψ_1 < ψ_0 < ψ_{-1};
/// the rewrite rules strictly decrease it, so reduction terminates.
struct CliffWordLess {
    bool operator()(const CliffWord& a, const CliffWord& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

/// Linear combination of Clifford words.
class CliffordElement {
public:
    explicit CliffordElement(const QContext& ctx) : ctx_(ctx) {}

    static CliffordElement zero(const QContext& ctx) { return CliffordElement(ctx); }

    static CliffordElement unit(const QContext& ctx) {
        return word(ctx, CliffWord{}, ctx.one());
    }

    static CliffordElement word(const QContext& ctx, CliffWord w, QValue c) {
        CliffordElement e(ctx);
        if (!c.is_zero()) e.terms_[std::move(w)] = std::move(c);
        return e;
    }

    static CliffordElement generator(const QContext& ctx, int position) {
        return word(ctx, CliffWord{position}, ctx.one());
    }

    const QContext& ctx() const { return ctx_; }
    const std::map<CliffWord, QValue, CliffWordLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const CliffWord& w, const QValue& c) {
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_[w] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    CliffordElement& operator+=(const CliffordElement& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    CliffordElement& operator-=(const CliffordElement& o) {
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }
    friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) { return a += b; }
    friend CliffordElement operator-(CliffordElement a, const CliffordElement& b) { return a -= b; }
    friend CliffordElement operator-(const CliffordElement& a) {
        CliffordElement r(a.ctx_);
        for (const auto& [w, c] : a.terms_) r.terms_[w] = -c;
        return r;
    }
    friend CliffordElement operator*(const QValue& s, const CliffordElement& a) {
        CliffordElement r(a.ctx_);
        if (s.is_zero()) return r;
        for (const auto& [w, c] : a.terms_) r.terms_[w] = s * c;
        return r;
    }
    friend CliffordElement operator*(const CliffordElement& a, const CliffordElement& b) {
        CliffordElement r(a.ctx_);
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) {
                CliffWord w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                r.add(w, ca * cb);
            }
        return r;
    }

    /// Largest-degree homogeneous part of the given degree.
    CliffordElement degree_part(size_t deg) const {
        CliffordElement r(ctx_);
        for (const auto& [w, c] : terms_)
            if (w.size() == deg) r.terms_[w] = c;
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!s.empty()) s += " + ";
            s += "(" + it->second.str() + ") " + cliff_word_str(it->first);
        }
        return s;
    }

private:
    QContext ctx_;
    std::map<CliffWord, QValue, CliffWordLess> terms_;
};

enum class ReduceStrategy { leftmost, rightmost };

/// The q-deformed Clifford algebra of the adjoint module: the tensor
/// algebra modulo the identification of every positive R̂-eigenvector with
/// its value under the invariant form.  Held as a confluent rewrite system
/// whose irreducible words ψ_1^{a} ψ_0^{b} ψ_{-1}^{c} (a,b,c ∈ {0,1}) give
/// the dimension-8 basis.  The form is rescaled internally so the
/// anticommutator relation reads ψ_1 ψ_{-1} + ψ_{-1} ψ_1 = -1.
class CliffordAlgebra {
public:
    CliffordAlgebra(Representation adjoint, BilinearForm effective_form,
                    std::map<CliffWord, CliffordElement, CliffWordLess> rules,
                    std::vector<CliffordElement> relations)
        : adjoint_(std::move(adjoint)),
          form_(std::move(effective_form)),
          rules_(std::move(rules)),
          relations_(std::move(relations)) {}

    const QContext& ctx() const { return adjoint_.ctx; }
    const Representation& adjoint_module() const { return adjoint_; }
    const BilinearForm& effective_form() const { return form_; }
    const std::vector<CliffordElement>& relations() const { return relations_; }

    /// Canonical embedding of the adjoint module, γ_q(Σ c_i v_i) = Σ c_i ψ_i.
    CliffordElement gamma(const QVec& v) const {
        CliffordElement e(ctx());
        for (size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) e.add(CliffWord{int(i)}, v[i]);
        return e;
    }

    CliffordElement normal_form(const CliffordElement& x,
                                ReduceStrategy strategy = ReduceStrategy::leftmost) const {
        CliffordElement out(ctx());
        CliffordElement work = x;
        while (!work.is_zero()) {
            // peel the largest term, reduce one step if possible
            auto it = std::prev(work.terms().end());
            CliffWord w = it->first;
            QValue c = it->second;
            work.add(w, -c);
            int pos = reducible_position(w, strategy);
            if (pos < 0) {
                out.add(w, c);
                continue;
            }
            CliffWord lhs{w[pos], w[pos + 1]};
            const CliffordElement& rhs = rules_.at(lhs);
            for (const auto& [rw, rc] : rhs.terms()) {
                CliffWord nw(w.begin(), w.begin() + pos);
                nw.insert(nw.end(), rw.begin(), rw.end());
                nw.insert(nw.end(), w.begin() + pos + 2, w.end());
                work.add(nw, c * rc);
            }
        }
        return out;
    }

    /// Irreducible words: strictly increasing positions, so 2^dim(V) many.
    std::vector<CliffWord> basis() const {
        std::vector<CliffWord> b;
        int n = adjoint_.dim;
        for (int mask = 0; mask < (1 << n); ++mask) {
            CliffWord w;
            for (int p = 0; p < n; ++p)
                if (mask & (1 << p)) w.push_back(p);
            b.push_back(std::move(w));
        }
        std::sort(b.begin(), b.end(), CliffWordLess{});
        return b;
    }

    int dimension() const { return 1 << adjoint_.dim; }

    /// Adjoint action of a quantum-group generator, extended to words by the
    /// module-algebra rule x ▷ (a b) = (x' ▷ a)(x'' ▷ b); the result is not
    /// normal-formed.
    CliffordElement act(GenKind g, const CliffordElement& x) const {
        CliffordElement r(ctx());
        for (const auto& [w, c] : x.terms()) r += c * act_word(g, w, 0);
        return r;
    }

private:
    int reducible_position(const CliffWord& w, ReduceStrategy strategy) const {
        if (w.size() < 2) return -1;
        if (strategy == ReduceStrategy::leftmost) {
            for (size_t i = 0; i + 1 < w.size(); ++i)
                if (w[i] >= w[i + 1]) return int(i);
        } else {
            for (size_t i = w.size() - 1; i-- > 0;)
                if (w[i] >= w[i + 1]) return int(i);
        }
        return -1;
    }

    CliffordElement act_letter(GenKind g, int p) const {
        CliffordElement r(ctx());
        const QMat& m = adjoint_.gen(g);
        for (int j = 0; j < adjoint_.dim; ++j)
            if (!m.at(j, p).is_zero()) r.add(CliffWord{j}, m.at(j, p));
        return r;
    }

    CliffordElement act_word(GenKind g, const CliffWord& w, size_t from) const {
        const QContext& ctx = adjoint_.ctx;
        if (from == w.size()) {
            QValue eps = (g == GenKind::k || g == GenKind::kinv) ? ctx.one() : ctx.zero();
            return CliffordElement::word(ctx, CliffWord{}, eps);
        }
        int p = w[from];
        switch (g) {
            case GenKind::k:
            case GenKind::kinv:
                return act_letter(g, p) * act_word(g, w, from + 1);
            case GenKind::e:
                // e ▷ (ψ rest) = (e▷ψ)(k▷rest) + (k⁻¹▷ψ)(e▷rest)
                return act_letter(GenKind::e, p) * act_word(GenKind::k, w, from + 1) +
                       act_letter(GenKind::kinv, p) * act_word(GenKind::e, w, from + 1);
            case GenKind::f:
                return act_letter(GenKind::f, p) * act_word(GenKind::k, w, from + 1) +
                       act_letter(GenKind::kinv, p) * act_word(GenKind::f, w, from + 1);
        }
        throw error("unknown generator");
    }

    Representation adjoint_;
    BilinearForm form_;
    std::map<CliffWord, CliffordElement, CliffWordLess> rules_;
    std::vector<CliffordElement> relations_;
};

namespace detail {

struct RawRelations {
    std::map<CliffWord, CliffordElement, CliffWordLess> rules;
    std::vector<CliffordElement> relations;
};

// Turns the positive-eigenvector identifications into a solved rewrite
// system.  Rows are pivot-normalized before elimination, which also keeps
// exact-mode coefficients inside a single radicand per row.
inline RawRelations solve_relations(const Representation& V, const BilinearForm& B,
                                    const SpectralSplit& S) {
    const QContext& ctx = V.ctx;
    int d = V.dim;

    // columns: quadratic words in descending order, then the unit
    std::vector<CliffWord> columns;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) columns.push_back(CliffWord{i, j});
    std::sort(columns.begin(), columns.end(),
              [](const CliffWord& a, const CliffWord& b) { return CliffWordLess{}(b, a); });
    auto col_of = [&](const CliffWord& w) {
        for (size_t c = 0; c < columns.size(); ++c)
            if (columns[c] == w) return int(c);
        throw error("column lookup failed");
    };

    std::vector<QVec> rows;
    for (const auto& space : S.spaces) {
        if (space.sign < 0) continue;
        for (int col = 0; col < space.basis.cols(); ++col) {
            QVec u(size_t(d) * d);
            for (int i = 0; i < d * d; ++i) u[i] = space.basis.at(i, col);
            QVec row(columns.size() + 1, ctx.zero());
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    row[col_of(CliffWord{i, j})] = u[size_t(i) * d + j];
            row[columns.size()] = -B.apply(u); // relation u - B(u)·1 = 0
            // pivot-normalize by the leading (first) nonzero coefficient
            for (const auto& x : row)
                if (!x.is_zero()) {
                    QValue inv = x.inverse();
                    for (auto& y : row) y = inv * y;
                    break;
                }
            rows.push_back(std::move(row));
        }
    }

    QMat mat(int(rows.size()), int(columns.size()) + 1);
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t c = 0; c < rows[r].size(); ++c) mat.at(int(r), int(c)) = rows[r][c];
    std::vector<int> pivots = rref(mat);
    if (pivots.size() != rows.size())
        throw error("clifford relations are linearly dependent");

    // pivots must be exactly the non-PBW quadratic words
    RawRelations out;
    for (size_t r = 0; r < pivots.size(); ++r) {
        const CliffWord& lhs = columns[pivots[r]];
        if (lhs.size() != 2 || lhs[0] < lhs[1])
            throw error("unexpected pivot monomial " + cliff_word_str(lhs));
        CliffordElement rhs(ctx);
        CliffordElement relation = CliffordElement::word(ctx, lhs, ctx.one());
        for (size_t c = 0; c < columns.size() + 1; ++c) {
            if (int(c) == pivots[r]) continue;
            const QValue& v = mat.at(int(r), int(c));
            if (v.is_zero()) continue;
            CliffWord w = c < columns.size() ? columns[c] : CliffWord{};
            rhs.add(w, -v);
            relation.add(w, v);
        }
        out.rules.insert({lhs, rhs});
        out.relations.push_back(relation);
    }
    int d_nonpbw = d * (d + 1) / 2;
    if (int(out.rules.size()) != d_nonpbw)
        throw error("expected " + std::to_string(d_nonpbw) + " rewrite rules, got " +
                    std::to_string(out.rules.size()));
    return out;
}

} // namespace detail

/// Builds cl_q from the adjoint module, the invariant form and the
/// spectral split of V ⊗ V.  The incoming form may carry any scale; it is
/// renormalized so that ψ_1 ψ_{-1} + ψ_{-1} ψ_1 = -1 (the b = -1
/// convention), and the confluence of the resulting rewrite system is
/// certified on all overlaps before the algebra is returned.
inline CliffordAlgebra build_clifford(const Representation& V, const BilinearForm& B,
                                      const SpectralSplit& S) {
    const QContext& ctx = V.ctx;
    detail::RawRelations raw = detail::solve_relations(V, B, S);
    CliffordAlgebra trial(V, B, raw.rules, raw.relations);

    // anticommutator ψ_1 ψ_{-1} + ψ_{-1} ψ_1 must reduce to a scalar
    CliffordElement anti = CliffordElement::word(ctx, CliffWord{0, V.dim - 1}, ctx.one());
    anti.add(CliffWord{V.dim - 1, 0}, ctx.one());
    CliffordElement b0 = trial.normal_form(anti);
    QValue b_val = ctx.zero();
    for (const auto& [w, c] : b0.terms()) {
        if (w.empty()) {
            b_val = c;
            continue;
        }
        bool residue = ctx.is_exact() || std::abs(c.numeric_value()) > 1e-9;
        if (residue) throw error("Clifford anticommutator did not reduce to a scalar");
    }
    if (b_val.is_zero()) throw error("Clifford anticommutator vanished; form degenerate");

    // rescale the form so b = -1 and rebuild
    BilinearForm scaled{(-ctx.one() / b_val) * B.mat};
    detail::RawRelations final_raw = detail::solve_relations(V, scaled, S);
    CliffordAlgebra algebra(V, scaled, final_raw.rules, final_raw.relations);

    CliffordElement check = algebra.normal_form(anti);
    check.add(CliffWord{}, ctx.one()); // expect exactly -1
    bool ok = true;
    for (const auto& [w, c] : check.terms())
        ok = ok && !(ctx.is_exact() ? !c.is_zero() : std::abs(c.numeric_value()) > 1e-9);
    if (!ok) throw error("b = -1 normalization failed");

    // confluence: every overlapping pair of rule applications must join
    for (int x = 0; x < V.dim; ++x)
        for (int y = 0; y < V.dim; ++y)
            for (int z = 0; z < V.dim; ++z) {
                if (!(x >= y && y >= z)) continue; // both pairs reducible
                CliffordElement w = CliffordElement::word(ctx, CliffWord{x, y, z}, ctx.one());
                CliffordElement left = algebra.normal_form(w, ReduceStrategy::leftmost);
                CliffordElement right = algebra.normal_form(w, ReduceStrategy::rightmost);
                CliffordElement diff = left - right;
                bool joined = true;
                if (ctx.is_exact()) {
                    joined = diff.is_zero();
                } else {
                    for (const auto& [dw, dc] : diff.terms())
                        if (std::abs(dc.numeric_value()) > 1e-9) joined = false;
                }
                if (!joined)
                    throw confluence_error("critical pair fails to join: " +
                                           cliff_word_str(CliffWord{x, y, z}));
            }
    return algebra;
}

/// Irreducible Clifford representation on Σ = V_{1/2} together with the
/// compatible quantum-group action σ_q; satisfies the equivariance
/// condition s(γ(x ▷ v)) = σ(x') s(γ(v)) σ(S(x'')).
struct SpinRepresentation {
    Representation sigma;
    std::vector<QMat> s_letters; // one 2x2 matrix per adjoint basis position

    QMat s_of_word(const CliffWord& w) const {
        QMat m = QMat::identity(sigma.dim, sigma.ctx);
        for (int p : w) m = m * s_letters[size_t(p)];
        return m;
    }

    QMat s_of(const CliffordElement& x) const {
        QMat m(sigma.dim, sigma.dim);
        for (const auto& [w, c] : x.terms()) m = m + c * s_of_word(w);
        return m;
    }
};

/// Solves the equivariance condition plus the Clifford relations for the
/// spin representation.  The linear system pins everything up to one
/// scalar; the scale is fixed by the anticommutator relation (b = -1) and
/// the sign by making the first nonzero entry of s(ψ_1) positive.
inline SpinRepresentation spin_representation(const CliffordAlgebra& C) {
    const QContext& ctx = C.ctx();
    const Representation& V = C.adjoint_module();
    if (V.dim != 3) throw error("spin_representation is provided for su(2) only");
    Representation sigma = build_irrep(HalfInt(1), ctx);
    HopfStructure H = HopfStructure::primary();
    int d = sigma.dim;
    int unknowns = V.dim * d * d;

    std::vector<GenKind> gens = {GenKind::e, GenKind::f, GenKind::k};
    QMat system(int(gens.size()) * V.dim * d * d, unknowns);
    int row = 0;
    for (GenKind g : gens) {
        // RHS legs: Σ σ(x') S σ(S(x''))
        std::vector<std::pair<QMat, QMat>> legs;
        TensorElement cop = H.coproduct(AlgebraElement::generator(ctx, g));
        for (const auto& [m, c] : cop.terms()) {
            AlgebraElement first = AlgebraElement::monomial(ctx, m.first, c);
            AlgebraElement second = AlgebraElement::monomial(ctx, m.second, ctx.one());
            legs.emplace_back(eval_element(first, sigma), eval_element(H.antipode(second), sigma));
        }
        for (int p = 0; p < V.dim; ++p) {
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    // Σ_r ρ(g)_{r p} S_r(i,j) - Σ_legs (A S_p B)(i,j) = 0
                    for (int r = 0; r < V.dim; ++r) {
                        const QValue& rho = V.gen(g).at(r, p);
                        if (!rho.is_zero()) system.at(row, (r * d + i) * d + j) += rho;
                    }
                    for (const auto& [A, Bm] : legs)
                        for (int a = 0; a < d; ++a)
                            for (int b = 0; b < d; ++b) {
                                QValue coeff = A.at(i, a) * Bm.at(b, j);
                                if (!coeff.is_zero())
                                    system.at(row, (p * d + a) * d + b) -= coeff;
                            }
                    ++row;
                }
        }
    }
    auto kernel = nullspace(system, ctx, 1e-9);
    if (kernel.size() != 1)
        throw error("equivariance system solution space has dimension " +
                    std::to_string(kernel.size()));

    std::vector<QMat> letters(V.dim, QMat(d, d));
    for (int p = 0; p < V.dim; ++p)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) letters[p].at(i, j) = kernel[0][(size_t(p) * d + i) * d + j];

    // scale from ψ_1 ψ_{-1} + ψ_{-1} ψ_1 = -1
    QMat anti = letters[0] * letters[2] + letters[2] * letters[0];
    QValue mu = anti.at(0, 0);
    QMat offdiag = anti - mu * QMat::identity(d, ctx);
    bool scalar = ctx.is_exact() ? offdiag.is_zero() : offdiag.max_abs(ctx.q0_value) < 1e-9;
    if (!scalar || mu.is_zero())
        throw error("spin solution's anticommutator is not a nonzero scalar");
    QValue scale = (-ctx.one() / mu).sqrt();
    for (auto& m : letters) m = scale * m;
    // sign convention: the dominant entry of s(ψ_1) is positive
    {
        double probe_q0 = ctx.is_exact() ? 1.7 : ctx.q0_value;
        double best = 0;
        int bi = 0, bj = 0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                double mag = std::abs(letters[0].at(i, j).eval(probe_q0));
                if (mag > best) {
                    best = mag;
                    bi = i;
                    bj = j;
                }
            }
        if (best > 0 && detail::sign_of(letters[0].at(bi, bj), probe_q0) < 0)
            for (auto& m : letters) m = -ctx.one() * m;
    }

    SpinRepresentation spin{std::move(sigma), std::move(letters)};

    // the matrices must satisfy every relation of the quotient
    for (const auto& rel : C.relations()) {
        QMat img = spin.s_of(rel);
        bool ok = ctx.is_exact() ? img.is_zero() : img.max_abs(ctx.q0_value) < 1e-9;
        if (!ok) throw error("spin matrices violate a Clifford relation");
    }
    return spin;
}

/// Checks that cl_q is, as an associative algebra, the classical Clifford
/// algebra: dimension 8, the spin representation surjects onto the full
/// 2x2 matrix algebra, and the two sign-twisted irreducibles are
/// nonisomorphic and jointly faithful (the B(Σ) ⊕ B(Σ) picture in odd
/// dimension).
struct IsomorphismReport {
    std::vector<RelationCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline IsomorphismReport verify_algebra_isomorphism(const CliffordAlgebra& C,
                                                    const SpinRepresentation& spin) {
    const QContext& ctx = C.ctx();
    IsomorphismReport rep;
    auto basis = C.basis();
    rep.checks.push_back(RelationCheck{"dim cl_q = 8", int(basis.size()) == 8 && C.dimension() == 8,
                                       0.0});

    int d = spin.sigma.dim;
    QMat images(int(basis.size()), d * d);
    for (size_t r = 0; r < basis.size(); ++r) {
        QMat m = spin.s_of_word(basis[r]);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) images.at(int(r), i * d + j) = m.at(i, j);
    }
    int rk = rank(images);
    rep.checks.push_back(RelationCheck{"s_q surjects onto B(Σ) (rank 4)", rk == d * d, double(rk)});
    rep.checks.push_back(
        RelationCheck{"kernel of s_q has dimension 4", int(basis.size()) - rk == 4, 0.0});

    // sign-twisted companion representation
    SpinRepresentation twin{spin.sigma, {}};
    for (const auto& m : spin.s_letters) twin.s_letters.push_back(-ctx.one() * m);
    bool twin_ok = true;
    for (const auto& rel : C.relations()) {
        QMat img = twin.s_of(rel);
        bool ok = ctx.is_exact() ? img.is_zero() : img.max_abs(ctx.q0_value) < 1e-9;
        twin_ok = twin_ok && ok;
    }
    rep.checks.push_back(RelationCheck{"sign-twisted s_q' satisfies the relations", twin_ok, 0.0});

    // no intertwiner between s and s': solve T s(ψ_p) = s'(ψ_p) T
    QMat sys(3 * d * d, d * d);
    int row = 0;
    for (int p = 0; p < 3; ++p) {
        const QMat& A = spin.s_letters[size_t(p)];
        const QMat& B = twin.s_letters[size_t(p)];
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                for (int b = 0; b < d; ++b) sys.at(row, r * d + b) += A.at(b, c);
                for (int a = 0; a < d; ++a) sys.at(row, a * d + c) -= B.at(r, a);
                ++row;
            }
    }
    bool noniso = nullspace(sys, ctx, 1e-9).empty();
    rep.checks.push_back(RelationCheck{"s_q and s_q' are nonisomorphic", noniso, 0.0});

    // joint faithfulness: (s, s') embeds cl_q into B(Σ) ⊕ B(Σ)
    QMat joint(int(basis.size()), 2 * d * d);
    for (size_t r = 0; r < basis.size(); ++r) {
        QMat m1 = spin.s_of_word(basis[r]);
        QMat m2 = twin.s_of_word(basis[r]);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                joint.at(int(r), i * d + j) = m1.at(i, j);
                joint.at(int(r), d * d + i * d + j) = m2.at(i, j);
            }
    }
    int joint_rank = rank(joint);
    rep.checks.push_back(RelationCheck{"s ⊕ s' is faithful (rank 8)", joint_rank == 8,
                                       double(joint_rank)});
    return rep;
}

} // namespace qdirac
