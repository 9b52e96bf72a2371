#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qdirac/rational.hpp"

namespace qdirac {

/// Sparse Laurent polynomial over Q in the variable u = q^{1/2}.
///
/// Exponents are stored in half-units of q, so every power q^{n/2} that the
/// representation theory produces is an honest monomial.  Invariant: the
/// term map never holds a zero coefficient.
class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly zero() { return LaurentPoly(); }

    static LaurentPoly constant(const Rational& c) {
        LaurentPoly p;
        if (c != 0) p.terms_[0] = c;
        return p;
    }

    static LaurentPoly one() { return constant(1); }

    // coeff * u^exp  (exp counts powers of q^{1/2})
    static LaurentPoly monomial(int exp, const Rational& coeff = Rational(1)) {
        LaurentPoly p;
        if (coeff != 0) p.terms_[exp] = coeff;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        auto it = terms_.find(0);
        if (it == terms_.end() || terms_.size() != 1)
            throw error("LaurentPoly is not constant");
        return it->second;
    }

    int min_deg() const {
        if (terms_.empty()) throw error("degree of zero polynomial");
        return terms_.begin()->first;
    }

    int max_deg() const {
        if (terms_.empty()) throw error("degree of zero polynomial");
        return terms_.rbegin()->first;
    }

    const std::map<int, Rational>& terms() const { return terms_; }

    Rational coeff(int exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational leading_coeff() const { return terms_.rbegin()->second; }
    Rational trailing_coeff() const { return terms_.begin()->second; }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly r;
        for (const auto& [e, c] : a.terms_) r.terms_[e] = -c;
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }

    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    LaurentPoly& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, v] : terms_) v *= c;
        return *this;
    }

    friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
    friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }

    LaurentPoly shifted(int k) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e + k] = c;
        return r;
    }

    LaurentPoly pow(int n) const {
        if (n < 0) throw error("LaurentPoly::pow with negative exponent");
        LaurentPoly r = one(), base = *this;
        while (n) {
            if (n & 1) r *= base;
            base *= base;
            n >>= 1;
        }
        return r;
    }

    LaurentPoly derivative() const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_)
            if (e != 0) r.terms_[e - 1] = c * e;
        return r;
    }

    long double eval_u(long double u) const {
        long double s = 0;
        for (const auto& [e, c] : terms_)
            s += static_cast<long double>(c.get_d()) * std::pow(u, static_cast<long double>(e));
        return s;
    }

    Rational eval_at_one() const {
        Rational s(0);
        for (const auto& [e, c] : terms_) s += c;
        return s;
    }

    // Ordinary-polynomial division, both arguments with min_deg >= 0.
    static void divmod(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& q,
                       LaurentPoly& r) {
        if (b.is_zero()) throw error("polynomial division by zero");
        if ((!a.is_zero() && a.min_deg() < 0) || b.min_deg() < 0)
            throw error("divmod expects ordinary polynomials");
        q = zero();
        r = a;
        int db = b.max_deg();
        Rational lb = b.leading_coeff();
        while (!r.is_zero() && r.max_deg() >= db) {
            int shift = r.max_deg() - db;
            Rational factor = r.leading_coeff() / lb;
            q.add_term(shift, factor);
            r -= b.shifted(shift) * factor;
        }
    }

    static LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
        // Laurent shifts are allowed here; normalize both before dividing.
        if (a.is_zero()) return zero();
        int sa = a.min_deg(), sb = b.min_deg();
        LaurentPoly q, r;
        divmod(a.shifted(-sa), b.shifted(-sb), q, r);
        if (!r.is_zero()) throw error("exact_div: nonzero remainder");
        return q.shifted(sa - sb);
    }

    // Monic gcd of the associated ordinary polynomials (Laurent shifts dropped).
    static LaurentPoly gcd(LaurentPoly a, LaurentPoly b) {
        if (a.is_zero()) return b.is_zero() ? zero() : b.monic();
        if (b.is_zero()) return a.monic();
        a = a.shifted(-a.min_deg());
        b = b.shifted(-b.min_deg());
        while (!b.is_zero()) {
            LaurentPoly q, r;
            divmod(a, b, q, r);
            a = std::move(b);
            b = std::move(r);
            if (!b.is_zero()) b = b.shifted(-b.min_deg()).monic();
        }
        return a.monic();
    }

    LaurentPoly monic() const {
        if (is_zero()) return *this;
        LaurentPoly r = *this;
        Rational inv = 1 / leading_coeff();
        for (auto& [e, c] : r.terms_) c *= inv;
        return r;
    }

    // Positive content: gcd of coefficient numerators over lcm of denominators.
    Rational content() const {
        if (is_zero()) return Rational(0);
        Integer g = 0, l = 1;
        for (const auto& [e, c] : terms_) {
            Integer num = abs(c.get_num());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
        }
        Rational r(g, l);
        r.canonicalize();
        return r;
    }

    // Yun's squarefree decomposition: *this = square^2 * radicand with the
    // radicand squarefree.  Expects an ordinary polynomial with min_deg 0.
    void square_decompose(LaurentPoly& square, LaurentPoly& radicand) const {
        if (is_zero()) throw error("square_decompose of zero");
        square = one();
        radicand = one();
        LaurentPoly p = monic();
        if (p.max_deg() == 0) return;
        LaurentPoly g = gcd(p, p.derivative());
        if (g.max_deg() == 0) {
            radicand = p;
            return;
        }
        LaurentPoly c = exact_div(p, g);
        LaurentPoly d = exact_div(p.derivative(), g) - c.derivative();
        int i = 1;
        while (!(c.max_deg() == 0)) {
            LaurentPoly f = gcd(c, d);
            if (f.max_deg() > 0) {
                for (int k = 0; k < i / 2; ++k) square *= f;
                if (i % 2) radicand *= f;
            }
            c = exact_div(c, f);
            d = exact_div(d, f) - c.derivative();
            ++i;
        }
        radicand = radicand.monic();
        square = square.monic();
    }

    std::string str() const;

private:
    void add_term(int e, const Rational& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_[e] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<int, Rational> terms_;
};

namespace detail {

inline std::string q_power_str(int uexp) {
    if (uexp == 0) return "1";
    if (uexp == 2) return "q";
    if (uexp == -2) return "q^-1";
    if (uexp % 2 == 0) return "q^" + std::to_string(uexp / 2);
    return "q^(" + std::to_string(uexp) + "/2)";
}

} // namespace detail

inline std::string LaurentPoly::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = abs(c);
        std::string term;
        if (e == 0) {
            term = to_string(a);
        } else if (a == 1) {
            term = detail::q_power_str(e);
        } else {
            term = to_string(a) + "*" + detail::q_power_str(e);
        }
        if (out.empty())
            out = (sign(c) < 0 ? "-" : "") + term;
        else
            out += (sign(c) < 0 ? "-" : "+") + term;
    }
    return out;
}

/// Reduced ratio of Laurent polynomials.  Canonical form: numerator and
/// denominator coprime, denominator an ordinary polynomial with nonzero
/// constant term normalized to 1; any Laurent shift lives in the numerator.
class LaurentRational {
public:
    LaurentRational() : num_(LaurentPoly::zero()), den_(LaurentPoly::one()) {}

    LaurentRational(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
        reduce();
    }

    static LaurentRational of(const LaurentPoly& p) { return LaurentRational(p, LaurentPoly::one()); }
    static LaurentRational constant(const Rational& c) { return of(LaurentPoly::constant(c)); }
    static LaurentRational zero() { return LaurentRational(); }
    static LaurentRational one() { return constant(1); }
    static LaurentRational monomial(int uexp, const Rational& c = Rational(1)) {
        return of(LaurentPoly::monomial(uexp, c));
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == LaurentPoly::one() && den_ == LaurentPoly::one(); }

    bool is_constant() const { return num_.is_constant() && den_ == LaurentPoly::one(); }
    Rational constant_value() const {
        if (!is_constant()) throw error("LaurentRational is not constant");
        return num_.is_zero() ? Rational(0) : num_.constant_value();
    }

    friend LaurentRational operator+(const LaurentRational& a, const LaurentRational& b) {
        return LaurentRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend LaurentRational operator-(const LaurentRational& a, const LaurentRational& b) {
        return LaurentRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }

    friend LaurentRational operator-(const LaurentRational& a) {
        LaurentRational r = a;
        r.num_ = -r.num_;
        return r;
    }

    friend LaurentRational operator*(const LaurentRational& a, const LaurentRational& b) {
        return LaurentRational(a.num_ * b.num_, a.den_ * b.den_);
    }

    friend LaurentRational operator/(const LaurentRational& a, const LaurentRational& b) {
        if (b.is_zero()) throw error("division by zero LaurentRational");
        return LaurentRational(a.num_ * b.den_, a.den_ * b.num_);
    }

    LaurentRational& operator+=(const LaurentRational& o) { return *this = *this + o; }
    LaurentRational& operator-=(const LaurentRational& o) { return *this = *this - o; }
    LaurentRational& operator*=(const LaurentRational& o) { return *this = *this * o; }
    LaurentRational& operator/=(const LaurentRational& o) { return *this = *this / o; }

    friend bool operator==(const LaurentRational& a, const LaurentRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    LaurentRational inverse() const {
        if (is_zero()) throw error("inverse of zero");
        return LaurentRational(den_, num_);
    }

    long double eval_u(long double u) const {
        long double d = den_.eval_u(u);
        if (d == 0.0L) throw pole_error("denominator vanishes at evaluation point");
        return num_.eval_u(u) / d;
    }

    // Value of the reduced function at q = 1 (u = 1).
    Rational eval_at_one() const {
        Rational d = den_.eval_at_one();
        if (d == 0) throw pole_error("pole at q = 1");
        return num_.eval_at_one() / d;
    }

    std::string str() const {
        if (den_ == LaurentPoly::one()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void reduce() {
        if (den_.is_zero()) throw error("LaurentRational with zero denominator");
        if (num_.is_zero()) {
            den_ = LaurentPoly::one();
            return;
        }
        int shift = num_.min_deg() - den_.min_deg();
        LaurentPoly n = num_.shifted(-num_.min_deg());
        LaurentPoly d = den_.shifted(-den_.min_deg());
        LaurentPoly g = LaurentPoly::gcd(n, d);
        if (!(g == LaurentPoly::one())) {
            n = LaurentPoly::exact_div(n, g);
            d = LaurentPoly::exact_div(d, g);
        }
        // trailing coefficient of the denominator pinned to 1
        Rational t = d.trailing_coeff();
        d *= 1 / t;
        n *= 1 / t;
        num_ = n.shifted(shift);
        den_ = d;
    }

    LaurentPoly num_, den_;
};

// Writes x = coeff^2-free normal form: x = (coeff)^2 * radicand as used for
// formal square roots, i.e. sqrt(x) = coeff * sqrt(radicand).  The radicand
// returned is a canonical Laurent polynomial: squarefree primitive integer
// polynomial times a squarefree integer content, possibly times u and a sign.
inline void radicand_split(const LaurentRational& x, LaurentRational& coeff,
                           LaurentPoly& radicand) {
    if (x.is_zero()) {
        coeff = LaurentRational::zero();
        radicand = LaurentPoly::one();
        return;
    }
    // clear the denominator: n/d = (n*d)/d^2
    LaurentPoly p = x.num() * x.den();
    coeff = LaurentRational::one() / LaurentRational::of(x.den());

    int t = p.min_deg();
    int half = (t >= 0) ? t / 2 : -((-t + 1) / 2); // floor division
    int parity = t - 2 * half;                     // 0 or 1
    p = p.shifted(-t);
    coeff *= LaurentRational::monomial(half);

    LaurentPoly sq, rad;
    p.square_decompose(sq, rad);
    coeff *= LaurentRational::of(sq);

    // content of p relative to monic pieces: p = c * sq^2 * rad with the
    // monic normalization above, c = trailing sign/content of original p
    LaurentRational residual = LaurentRational(p, sq * sq * rad);
    if (!residual.is_constant()) throw error("radicand_split: residual not constant");
    Rational c = residual.constant_value();
    int sgn_c = sign(c);
    Rational s;
    Integer f;
    square_split(abs(c), s, f);
    coeff *= LaurentRational::constant(s);

    radicand = rad * Rational(f * sgn_c);
    radicand = radicand.shifted(parity);
    // canonical: if the radicand is the constant 1, fold it away entirely
    if (radicand == LaurentPoly::one()) radicand = LaurentPoly::one();
}

} // namespace qdirac
