#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <utility>

#include "qdirac/half_int.hpp"
#include "qdirac/laurent.hpp"

namespace qdirac {

enum class QMode { exact, numeric };

/// Scalar of the deformation parameter q.
///
/// Exact mode holds a + b*sqrt(r) with a, b reduced Laurent-rational
/// functions of q^{1/2} and r a canonical radicand; a value carries at most
/// one formal square root, and sums that would require two distinct
/// radicands throw incompatible_radical_error.  Numeric mode holds a double
/// together with the evaluation point q0 > 0, q0 != 1; numeric values with
/// different q0 never mix.
class QValue {
public:
    QValue() : mode_(QMode::exact) {}

    static QValue exact(LaurentRational a) {
        QValue v;
        v.a_ = std::move(a);
        return v;
    }

    static QValue exact_radical(LaurentRational a, LaurentRational b, const LaurentPoly& rad) {
        QValue v;
        v.a_ = std::move(a);
        if (!b.is_zero()) {
            LaurentRational c;
            LaurentPoly r;
            radicand_split(LaurentRational::of(rad), c, r);
            if (r == LaurentPoly::one()) {
                v.a_ += b * c;
            } else {
                v.b_ = b * c;
                v.rad_ = r;
            }
        }
        return v;
    }

    static QValue numeric(long double value, double q0) {
        QValue v;
        v.mode_ = QMode::numeric;
        v.v_ = value;
        v.q0_ = q0;
        return v;
    }

    static QValue integer(long n) { return exact(LaurentRational::constant(Rational(n))); }
    static QValue rational(const Rational& r) { return exact(LaurentRational::constant(r)); }

    QMode mode() const { return mode_; }
    bool is_exact() const { return mode_ == QMode::exact; }

    const LaurentRational& rational_part() const { return a_; }
    const LaurentRational& radical_coeff() const { return b_; }
    const LaurentPoly& radicand() const { return rad_; }
    bool has_radical() const { return is_exact() && !b_.is_zero(); }

    double numeric_value() const {
        if (is_exact()) throw error("numeric_value of an exact QValue");
        return static_cast<double>(v_);
    }
    double q0() const {
        if (is_exact()) throw error("q0 of an exact QValue");
        return q0_;
    }

    bool is_zero() const {
        return is_exact() ? (a_.is_zero() && b_.is_zero()) : v_ == 0.0L;
    }

    double eval(double q0) const { return static_cast<double>(eval_ld(q0)); }

    long double eval_ld(double q0) const {
        if (!is_exact()) {
            if (q0_ != q0) throw mode_mismatch_error("numeric QValue pinned at a different q0");
            return v_;
        }
        long double u = std::sqrt(static_cast<long double>(q0));
        long double r = a_.eval_u(u);
        if (!b_.is_zero()) {
            long double rv = rad_.eval_u(u);
            if (rv < 0) throw error("radicand negative at evaluation point");
            r += b_.eval_u(u) * std::sqrt(rv);
        }
        return r;
    }

    friend QValue operator+(const QValue& x, const QValue& y) {
        if (x.mode_ != y.mode_) return promote(x, y, [](double a, double b) { return a + b; });
        if (!x.is_exact()) {
            check_q0(x, y);
            return numeric(x.v_ + y.v_, x.q0_);
        }
        QValue r;
        r.a_ = x.a_ + y.a_;
        if (x.b_.is_zero()) {
            r.b_ = y.b_;
            r.rad_ = y.rad_;
        } else if (y.b_.is_zero()) {
            r.b_ = x.b_;
            r.rad_ = x.rad_;
        } else if (x.rad_ == y.rad_) {
            r.b_ = x.b_ + y.b_;
            r.rad_ = r.b_.is_zero() ? LaurentPoly::one() : x.rad_;
        } else {
            throw incompatible_radical_error("sum of distinct radicands: sqrt(" + x.rad_.str() +
                                             ") vs sqrt(" + y.rad_.str() + ")");
        }
        return r;
    }

    friend QValue operator-(const QValue& x) {
        if (!x.is_exact()) return numeric(-x.v_, x.q0_);
        QValue r = x;
        r.a_ = -r.a_;
        r.b_ = -r.b_;
        return r;
    }

    friend QValue operator-(const QValue& x, const QValue& y) { return x + (-y); }

    friend QValue operator*(const QValue& x, const QValue& y) {
        if (x.mode_ != y.mode_) return promote(x, y, [](double a, double b) { return a * b; });
        if (!x.is_exact()) {
            check_q0(x, y);
            return numeric(x.v_ * y.v_, x.q0_);
        }
        // collect products by radicand
        LaurentRational rational_acc = x.a_ * y.a_;
        std::map<std::string, std::pair<LaurentPoly, LaurentRational>> radical_acc;
        auto add_radical = [&](const LaurentPoly& rad, const LaurentRational& c) {
            if (c.is_zero()) return;
            if (rad == LaurentPoly::one()) {
                rational_acc += c;
                return;
            }
            auto key = rad.str();
            auto it = radical_acc.find(key);
            if (it == radical_acc.end())
                radical_acc[key] = {rad, c};
            else {
                it->second.second += c;
                if (it->second.second.is_zero()) radical_acc.erase(it);
            }
        };
        add_radical(y.rad_, x.a_ * y.b_);
        add_radical(x.rad_, x.b_ * y.a_);
        if (!x.b_.is_zero() && !y.b_.is_zero()) {
            if (x.rad_ == y.rad_) {
                rational_acc += x.b_ * y.b_ * LaurentRational::of(x.rad_);
            } else {
                LaurentRational c;
                LaurentPoly r;
                radicand_split(LaurentRational::of(x.rad_ * y.rad_), c, r);
                add_radical(r, x.b_ * y.b_ * c);
            }
        }
        if (radical_acc.size() > 1)
            throw incompatible_radical_error("product produced two distinct radicands");
        QValue r;
        r.a_ = rational_acc;
        if (!radical_acc.empty()) {
            r.rad_ = radical_acc.begin()->second.first;
            r.b_ = radical_acc.begin()->second.second;
        }
        return r;
    }

    QValue inverse() const {
        if (!is_exact()) {
            if (v_ == 0.0L) throw error("inverse of numeric zero");
            return numeric(1.0L / v_, q0_);
        }
        if (is_zero()) throw error("inverse of zero QValue");
        if (b_.is_zero()) return exact(a_.inverse());
        // (a + b sqrt r)^-1 = (a - b sqrt r) / (a^2 - b^2 r)
        LaurentRational d = a_ * a_ - b_ * b_ * LaurentRational::of(rad_);
        if (d.is_zero()) throw error("inverse: radicand turned out to be a square");
        QValue r;
        r.a_ = a_ / d;
        r.b_ = -b_ / d;
        r.rad_ = rad_;
        return r;
    }

    friend QValue operator/(const QValue& x, const QValue& y) { return x * y.inverse(); }

    QValue& operator+=(const QValue& o) { return *this = *this + o; }
    QValue& operator-=(const QValue& o) { return *this = *this - o; }
    QValue& operator*=(const QValue& o) { return *this = *this * o; }
    QValue& operator/=(const QValue& o) { return *this = *this / o; }

    friend bool operator==(const QValue& x, const QValue& y) {
        if (x.mode_ != y.mode_) return false;
        if (!x.is_exact()) return x.v_ == y.v_ && x.q0_ == y.q0_;
        return x.a_ == y.a_ && x.b_ == y.b_ && x.rad_ == y.rad_;
    }

    QValue pow(long n) const {
        if (n < 0) return inverse().pow(-n);
        QValue r = is_exact() ? integer(1) : numeric(1.0, q0_);
        QValue base = *this;
        while (n) {
            if (n & 1) r *= base;
            base *= base;
            n >>= 1;
        }
        return r;
    }

    QValue sqrt() const {
        if (!is_exact()) {
            if (v_ < 0) throw error("sqrt of a negative numeric value");
            return numeric(std::sqrt(v_), q0_);
        }
        if (!b_.is_zero()) throw error("sqrt of a radical-carrying value is unsupported");
        if (a_.is_zero()) return QValue();
        LaurentRational c;
        LaurentPoly r;
        radicand_split(a_, c, r);
        if (r == LaurentPoly::one()) return exact(c);
        QValue v;
        v.b_ = c;
        v.rad_ = r;
        return v;
    }

    std::string str() const {
        if (!is_exact()) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.12g", static_cast<double>(v_));
            return buf;
        }
        if (b_.is_zero()) return a_.str();
        std::string rs = "sqrt(" + rad_.str() + ")";
        std::string bs = b_.is_one() ? rs : "(" + b_.str() + ")*" + rs;
        if (a_.is_zero()) return bs;
        return "(" + a_.str() + ")+" + bs;
    }

private:
    template <class F>
    static QValue promote(const QValue& x, const QValue& y, F op) {
        // exact values evaluate at the numeric operand's q0
        const QValue& n = x.is_exact() ? y : x;
        long double a = x.is_exact() ? x.eval_ld(n.q0_) : x.v_;
        long double b = y.is_exact() ? y.eval_ld(n.q0_) : y.v_;
        return numeric(op(a, b), n.q0_);
    }

    static void check_q0(const QValue& x, const QValue& y) {
        if (x.q0_ != y.q0_)
            throw mode_mismatch_error("numeric QValues with different q0 cannot mix");
    }

    QMode mode_ = QMode::exact;
    LaurentRational a_, b_;
    LaurentPoly rad_ = LaurentPoly::one();
    long double v_ = 0;
    double q0_ = 0;
};

/// Evaluation mode shared by a whole construction: exact or numeric at q0.
struct QContext {
    QMode mode = QMode::exact;
    double q0_value = 0;

    static QContext exact() { return QContext{QMode::exact, 0}; }

    static QContext numeric(double q0) {
        if (!(q0 > 0) || q0 == 1.0)
            throw error("numeric mode requires q0 > 0 and q0 != 1");
        return QContext{QMode::numeric, q0};
    }

    bool is_exact() const { return mode == QMode::exact; }

    QValue zero() const { return is_exact() ? QValue() : QValue::numeric(0.0, q0_value); }
    QValue one() const { return integer(1); }

    QValue integer(long n) const {
        return is_exact() ? QValue::integer(n) : QValue::numeric((long double)(n), q0_value);
    }

    QValue rational(const Rational& r) const {
        if (is_exact()) return QValue::rational(r);
        long double num = r.get_num().get_d(), den = r.get_den().get_d();
        return QValue::numeric(num / den, q0_value);
    }

    // q^m for half-integer m
    QValue qpow(HalfInt m) const { return qpow_u(m.twice); }

    // u^e = q^{e/2}
    QValue qpow_u(int e) const {
        if (is_exact()) return QValue::exact(LaurentRational::monomial(e));
        return QValue::numeric(std::pow(static_cast<long double>(q0_value), e / 2.0L), q0_value);
    }

    // q - q^{-1}
    QValue lambda() const { return qpow_u(2) - qpow_u(-2); }
};

/// q-integer [n] = (q^n - q^-n)/(q - q^-1), exact as a Laurent polynomial.
inline QValue qint(long n, const QContext& ctx) {
    if (!ctx.is_exact()) {
        long double q = ctx.q0_value;
        long double v =
            n == 0 ? 0.0L
                   : (std::pow(q, (long double)(n)) - std::pow(q, (long double)(-n))) / (q - 1.0L / q);
        return QValue::numeric(v, ctx.q0_value);
    }
    if (n == 0) return QValue();
    if (n < 0) return -qint(-n, ctx);
    LaurentPoly p;
    for (long i = 0; i < n; ++i) p += LaurentPoly::monomial(int(2 * (n - 1 - 2 * i)));
    return QValue::exact(LaurentRational::of(p));
}

// [n] with half-integer n (used by the Hilbert-space block formulas)
inline QValue qint(HalfInt n, const QContext& ctx) {
    if (n.twice % 2 == 0) return qint(long(n.twice / 2), ctx);
    if (!ctx.is_exact()) {
        long double q = ctx.q0_value;
        long double nv = n.twice / 2.0L;
        long double v = (std::pow(q, nv) - std::pow(q, -nv)) / (q - 1.0L / q);
        return QValue::numeric(v, ctx.q0_value);
    }
    LaurentRational num = LaurentRational::monomial(n.twice) - LaurentRational::monomial(-n.twice);
    LaurentRational den = LaurentRational::monomial(2) - LaurentRational::monomial(-2);
    return QValue::exact(num / den);
}

/// q-binomial [m over n]_{q_i} with q_i = q^d, via the factorial products
/// (m)_{q_i} = (q_i - q_i^-1)(q_i^2 - q_i^-2) ... (q_i^m - q_i^-m).
inline QValue qbinomial(long m, long n, long d, const QContext& ctx) {
    if (n < 0 || n > m) throw error("qbinomial requires 0 <= n <= m");
    if (d < 1) throw error("qbinomial requires d >= 1");
    auto factorial = [&](long t) {
        LaurentPoly p = LaurentPoly::one();
        for (long i = 1; i <= t; ++i)
            p *= LaurentPoly::monomial(int(2 * d * i)) - LaurentPoly::monomial(int(-2 * d * i));
        return p;
    };
    LaurentRational ratio =
        LaurentRational(factorial(m), factorial(n) * factorial(m - n));
    if (!(ratio.den() == LaurentPoly::one()))
        throw error("qbinomial did not reduce to a Laurent polynomial");
    QValue v = QValue::exact(ratio);
    if (!ctx.is_exact()) return QValue::numeric(v.eval(ctx.q0_value), ctx.q0_value);
    return v;
}

/// Value of a reduced exact scalar at q = 1.  Throws pole_error if the
/// denominator vanishes there, and error if a formal square root does not
/// close to a rational.
inline Rational limit_q_to_1(const QValue& v) {
    if (!v.is_exact()) throw error("limit_q_to_1 requires an exact QValue");
    Rational r = v.rational_part().eval_at_one();
    if (v.has_radical()) {
        Rational rho = LaurentRational::of(v.radicand()).eval_at_one();
        if (sign(rho) < 0) throw error("radicand negative at q = 1");
        Rational s;
        Integer f;
        if (rho != 0) {
            square_split(rho, s, f);
            if (f != 1) throw error("radical does not close to a rational at q = 1");
        } else {
            s = 0;
        }
        r += v.radical_coeff().eval_at_one() * s;
    }
    return r;
}

/// Same limit but as a double, accepting radicals that stay irrational.
inline double limit_q_to_1_double(const QValue& v) {
    if (!v.is_exact()) throw error("limit_q_to_1 requires an exact QValue");
    double r = v.rational_part().eval_at_one().get_d();
    if (v.has_radical()) {
        double rho = LaurentRational::of(v.radicand()).eval_at_one().get_d();
        if (rho < 0) throw error("radicand negative at q = 1");
        r += v.radical_coeff().eval_at_one().get_d() * std::sqrt(rho);
    }
    return r;
}

/// Parses the bracket shorthand "[n]" (and plain integers) into a QValue.
inline QValue parse_qint_shorthand(const std::string& text, const QContext& ctx) {
    std::string t = text;
    bool neg = false;
    if (!t.empty() && t[0] == '-') {
        neg = true;
        t = t.substr(1);
    }
    QValue v;
    if (t.size() >= 3 && t.front() == '[' && t.back() == ']') {
        long n = std::strtol(t.substr(1, t.size() - 2).c_str(), nullptr, 10);
        v = qint(n, ctx);
    } else {
        char* end = nullptr;
        long n = std::strtol(t.c_str(), &end, 10);
        if (end == t.c_str() || *end != '\0') throw error("cannot parse q-scalar: " + text);
        v = ctx.integer(n);
    }
    return neg ? -v : v;
}

} // namespace qdirac
