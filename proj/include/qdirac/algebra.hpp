#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qdirac/qvalue.hpp"

namespace qdirac {

enum class GenKind { e, f, k, kinv };

enum class HopfVariant { primary, opposite };

/// PBW monomial f^a e^b k^c of U_q(su(2)); a, b >= 0, c any integer.
struct PBWMono {
    int a = 0, b = 0, c = 0;

    friend auto operator<=>(const PBWMono&, const PBWMono&) = default;

    std::string str() const {
        std::string s;
        auto pow = [](const std::string& g, int n) {
            if (n == 0) return std::string();
            if (n == 1) return g;
            return g + "^" + std::to_string(n);
        };
        s += pow("f", a);
        if (!s.empty() && b) s += " ";
        s += pow("e", b);
        if (!s.empty() && c) s += " ";
        s += pow("k", c);
        return s.empty() ? "1" : s;
    }
};

/// Element of U_q(su(2)) in PBW normal form: a finite sum of f^a e^b k^c
/// monomials with QValue coefficients.  Products reorder through the
/// defining relations k e k^-1 = q e, k f k^-1 = q^-1 f and
/// [e, f] = (k^2 - k^-2)/(q - q^-1).
class AlgebraElement {
public:
    explicit AlgebraElement(const QContext& ctx) : ctx_(ctx) {}

    static AlgebraElement zero(const QContext& ctx) { return AlgebraElement(ctx); }

    static AlgebraElement one(const QContext& ctx) {
        return monomial(ctx, PBWMono{}, ctx.one());
    }

    static AlgebraElement monomial(const QContext& ctx, PBWMono m, QValue coeff) {
        AlgebraElement x(ctx);
        if (!coeff.is_zero()) x.terms_[m] = std::move(coeff);
        return x;
    }

    static AlgebraElement generator(const QContext& ctx, GenKind g) {
        switch (g) {
            case GenKind::e: return monomial(ctx, PBWMono{0, 1, 0}, ctx.one());
            case GenKind::f: return monomial(ctx, PBWMono{1, 0, 0}, ctx.one());
            case GenKind::k: return monomial(ctx, PBWMono{0, 0, 1}, ctx.one());
            case GenKind::kinv: return monomial(ctx, PBWMono{0, 0, -1}, ctx.one());
        }
        throw error("unknown generator");
    }

    const QContext& ctx() const { return ctx_; }
    const std::map<PBWMono, QValue>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    AlgebraElement& operator+=(const AlgebraElement& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    AlgebraElement& operator-=(const AlgebraElement& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator-(const AlgebraElement& a) {
        AlgebraElement r(a.ctx_);
        for (const auto& [m, c] : a.terms_) r.terms_[m] = -c;
        return r;
    }
    friend AlgebraElement operator*(const QValue& s, const AlgebraElement& a) {
        AlgebraElement r(a.ctx_);
        if (s.is_zero()) return r;
        for (const auto& [m, c] : a.terms_) r.terms_[m] = s * c;
        return r;
    }

    friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
        AlgebraElement r(x.ctx_);
        for (const auto& [my, cy] : y.terms_) {
            AlgebraElement part = x;
            for (int i = 0; i < my.a; ++i) part = part.right_mul_f();
            for (int i = 0; i < my.b; ++i) part = part.right_mul_e();
            part = part.right_mul_kpow(my.c);
            r += cy * part;
        }
        return r;
    }

    AlgebraElement& operator*=(const AlgebraElement& o) { return *this = *this * o; }

    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
        return (a - b).is_zero();
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")*" + m.str();
        }
        return s;
    }

private:
    friend class HopfStructure;

    void add_term(const PBWMono& m, const QValue& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_[m] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    AlgebraElement right_mul_e() const {
        AlgebraElement r(ctx_);
        for (const auto& [m, c] : terms_)
            r.add_term(PBWMono{m.a, m.b + 1, m.c}, ctx_.qpow(HalfInt::whole(m.c)) * c);
        return r;
    }

    // e^b f = f e^b + [b] e^{b-1} (q^{b-1} k^2 - q^{1-b} k^-2)/(q - q^-1)
    AlgebraElement right_mul_f() const {
        AlgebraElement r(ctx_);
        QValue lambda = ctx_.lambda();
        for (const auto& [m, c] : terms_) {
            QValue qc = ctx_.qpow(HalfInt::whole(-m.c)) * c;
            r.add_term(PBWMono{m.a + 1, m.b, m.c}, qc);
            if (m.b > 0) {
                QValue base = qc * qint(long(m.b), ctx_) / lambda;
                r.add_term(PBWMono{m.a, m.b - 1, m.c + 2},
                           base * ctx_.qpow(HalfInt::whole(m.b - 1)));
                r.add_term(PBWMono{m.a, m.b - 1, m.c - 2},
                           -(base * ctx_.qpow(HalfInt::whole(1 - m.b))));
            }
        }
        return r;
    }

    AlgebraElement right_mul_kpow(int p) const {
        if (p == 0) return *this;
        AlgebraElement r(ctx_);
        for (const auto& [m, c] : terms_) r.add_term(PBWMono{m.a, m.b, m.c + p}, c);
        return r;
    }

    QContext ctx_;
    std::map<PBWMono, QValue> terms_;
};

/// Element of U_q ⊗ U_q, used for coproducts.
class TensorElement {
public:
    explicit TensorElement(const QContext& ctx) : ctx_(ctx) {}

    static TensorElement of(const AlgebraElement& x, const AlgebraElement& y) {
        TensorElement t(x.ctx());
        for (const auto& [mx, cx] : x.terms())
            for (const auto& [my, cy] : y.terms()) t.add_term(mx, my, cx * cy);
        return t;
    }

    const QContext& ctx() const { return ctx_; }
    const std::map<std::pair<PBWMono, PBWMono>, QValue>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    TensorElement& operator+=(const TensorElement& o) {
        for (const auto& [m, c] : o.terms_) add_term(m.first, m.second, c);
        return *this;
    }
    friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
    friend TensorElement operator-(const TensorElement& a) {
        TensorElement r(a.ctx_);
        for (const auto& [m, c] : a.terms_) r.terms_[m] = -c;
        return r;
    }
    friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a += -b; }

    friend TensorElement operator*(const TensorElement& x, const TensorElement& y) {
        TensorElement r(x.ctx_);
        for (const auto& [mx, cx] : x.terms_)
            for (const auto& [my, cy] : y.terms_) {
                AlgebraElement left =
                    AlgebraElement::monomial(x.ctx_, mx.first, x.ctx_.one()) *
                    AlgebraElement::monomial(x.ctx_, my.first, x.ctx_.one());
                AlgebraElement right =
                    AlgebraElement::monomial(x.ctx_, mx.second, x.ctx_.one()) *
                    AlgebraElement::monomial(x.ctx_, my.second, x.ctx_.one());
                TensorElement prod = of(left, right);
                QValue scale = cx * cy;
                for (const auto& [mp, cp] : prod.terms_)
                    r.add_term(mp.first, mp.second, scale * cp);
            }
        return r;
    }

    TensorElement flip() const {
        TensorElement r(ctx_);
        for (const auto& [m, c] : terms_) r.add_term(m.second, m.first, c);
        return r;
    }

    void add_term(const PBWMono& m1, const PBWMono& m2, const QValue& c) {
        auto key = std::make_pair(m1, m2);
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_[key] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

private:
    QContext ctx_;
    std::map<std::pair<PBWMono, PBWMono>, QValue> terms_;
};

/// Element with n Sweedler legs (iterated coproduct expansion).
class NLegElement {
public:
    NLegElement(const QContext& ctx, int legs) : ctx_(ctx), legs_(legs) {}

    const std::map<std::vector<PBWMono>, QValue>& terms() const { return terms_; }
    int legs() const { return legs_; }

    void add_term(std::vector<PBWMono> key, const QValue& c) {
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_[std::move(key)] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend NLegElement operator-(NLegElement a, const NLegElement& b) {
        for (const auto& [m, c] : b.terms_) a.add_term(m, -c);
        return a;
    }

    bool is_zero() const { return terms_.empty(); }

private:
    QContext ctx_;
    int legs_;
    std::map<std::vector<PBWMono>, QValue> terms_;
};

/// The two Hopf-algebra structures of U_q(su(2)) used in this library.
///
/// primary:   Δ(e) = e⊗k + k^-1⊗e, S(e) = -q e, S(f) = -q^-1 f, S(k) = k^-1
/// opposite:  Δ^op = flip ∘ Δ,     S^op(e) = -q^-1 e, S^op(f) = -q f
class HopfStructure {
public:
    explicit HopfStructure(HopfVariant v) : variant_(v) {}

    static HopfStructure primary() { return HopfStructure(HopfVariant::primary); }
    static HopfStructure opposite() { return HopfStructure(HopfVariant::opposite); }

    HopfVariant variant() const { return variant_; }

    /// Antipode on generators, extended as an algebra anti-homomorphism.
    AlgebraElement antipode(const AlgebraElement& x) const {
        const QContext& ctx = x.ctx();
        AlgebraElement r(ctx);
        for (const auto& [m, c] : x.terms()) {
            // S(f^a e^b k^c) = S(k)^c S(e)^b S(f)^a
            AlgebraElement t = AlgebraElement::monomial(ctx, PBWMono{0, 0, -m.c}, ctx.one());
            QValue se = variant_ == HopfVariant::primary ? -ctx.qpow(HalfInt::whole(1))
                                                         : -ctx.qpow(HalfInt::whole(-1));
            QValue sf = variant_ == HopfVariant::primary ? -ctx.qpow(HalfInt::whole(-1))
                                                         : -ctx.qpow(HalfInt::whole(1));
            for (int i = 0; i < m.b; ++i)
                t *= se * AlgebraElement::generator(ctx, GenKind::e);
            for (int i = 0; i < m.a; ++i)
                t *= sf * AlgebraElement::generator(ctx, GenKind::f);
            r += c * t;
        }
        return r;
    }

    /// Counit: k^c -> 1, anything with e or f -> 0.
    QValue counit(const AlgebraElement& x) const {
        QValue s = x.ctx().zero();
        for (const auto& [m, c] : x.terms())
            if (m.a == 0 && m.b == 0) s += c;
        return s;
    }

    TensorElement coproduct(const AlgebraElement& x) const {
        const QContext& ctx = x.ctx();
        TensorElement r(ctx);
        TensorElement de = gen_coproduct(ctx, GenKind::e);
        TensorElement df = gen_coproduct(ctx, GenKind::f);
        for (const auto& [m, c] : x.terms()) {
            TensorElement t = TensorElement::of(AlgebraElement::one(ctx), AlgebraElement::one(ctx));
            for (int i = 0; i < m.a; ++i) t = t * df;
            for (int i = 0; i < m.b; ++i) t = t * de;
            TensorElement dk = TensorElement::of(
                AlgebraElement::monomial(ctx, PBWMono{0, 0, m.c}, ctx.one()),
                AlgebraElement::monomial(ctx, PBWMono{0, 0, m.c}, ctx.one()));
            t = t * dk;
            for (const auto& [mp, cp] : t.terms()) r.add_term(mp.first, mp.second, c * cp);
        }
        return r;
    }

    /// Iterated coproduct with `legs` Sweedler legs (legs >= 1), expanding the
    /// leftmost leg at each step; the library only ever needs depth <= 6.
    NLegElement sweedler_expand(const AlgebraElement& x, int legs) const {
        if (legs < 1 || legs > 6) throw error("sweedler_expand supports 1..6 legs");
        const QContext& ctx = x.ctx();
        NLegElement cur(ctx, 1);
        for (const auto& [m, c] : x.terms()) cur.add_term({m}, c);
        for (int n = 1; n < legs; ++n) {
            NLegElement next(ctx, n + 1);
            for (const auto& [key, c] : cur.terms()) {
                AlgebraElement head = AlgebraElement::monomial(ctx, key[0], ctx.one());
                TensorElement dh = coproduct(head);
                for (const auto& [mp, cp] : dh.terms()) {
                    std::vector<PBWMono> nk;
                    nk.push_back(mp.first);
                    nk.push_back(mp.second);
                    for (size_t i = 1; i < key.size(); ++i) nk.push_back(key[i]);
                    next.add_term(std::move(nk), c * cp);
                }
            }
            cur = std::move(next);
        }
        return cur;
    }

    /// Adjoint action of a generator: x ▷ y = x' y S(x'') for the primary
    /// structure, x ⊵ y = x'' y S^op(x') for the opposite one.
    AlgebraElement adjoint(GenKind g, const AlgebraElement& y) const {
        const QContext& ctx = y.ctx();
        AlgebraElement E = AlgebraElement::generator(ctx, GenKind::e);
        AlgebraElement F = AlgebraElement::generator(ctx, GenKind::f);
        AlgebraElement K = AlgebraElement::generator(ctx, GenKind::k);
        AlgebraElement Ki = AlgebraElement::generator(ctx, GenKind::kinv);
        QValue q1 = ctx.qpow(HalfInt::whole(1)), qm1 = ctx.qpow(HalfInt::whole(-1));
        if (variant_ == HopfVariant::primary) {
            switch (g) {
                case GenKind::e: return E * y * Ki - q1 * (Ki * y * E);
                case GenKind::f: return F * y * Ki - qm1 * (Ki * y * F);
                case GenKind::k: return K * y * Ki;
                case GenKind::kinv: return Ki * y * K;
            }
        } else {
            switch (g) {
                case GenKind::e: return E * y * K - qm1 * (K * y * E);
                case GenKind::f: return F * y * K - q1 * (K * y * F);
                case GenKind::k: return K * y * Ki;
                case GenKind::kinv: return Ki * y * K;
            }
        }
        throw error("unknown generator");
    }

private:
    TensorElement gen_coproduct(const QContext& ctx, GenKind g) const {
        AlgebraElement E = AlgebraElement::generator(ctx, GenKind::e);
        AlgebraElement F = AlgebraElement::generator(ctx, GenKind::f);
        AlgebraElement K = AlgebraElement::generator(ctx, GenKind::k);
        AlgebraElement Ki = AlgebraElement::generator(ctx, GenKind::kinv);
        TensorElement t(ctx);
        switch (g) {
            case GenKind::e: t = TensorElement::of(E, K) + TensorElement::of(Ki, E); break;
            case GenKind::f: t = TensorElement::of(F, K) + TensorElement::of(Ki, F); break;
            case GenKind::k: t = TensorElement::of(K, K); break;
            case GenKind::kinv: t = TensorElement::of(Ki, Ki); break;
        }
        return variant_ == HopfVariant::primary ? t : t.flip();
    }

    HopfVariant variant_;
};

} // namespace qdirac
