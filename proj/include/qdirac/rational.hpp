#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

#include "qdirac/errors.hpp"

namespace qdirac {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline int sign(const Rational& r) { return sgn(r); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

// n = s^2 * f with f squarefree; requires n > 0.  Trial division is fine at
// the coefficient sizes produced by q-combinatorics on desk-scale inputs.
inline void square_split(const Integer& n, Integer& s, Integer& f) {
    if (n <= 0) throw error("square_split requires a positive integer");
    Integer rest = n;
    s = 1;
    f = 1;
    for (Integer p = 2; p * p <= rest; ++p) {
        if (rest % p != 0) continue;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) s *= p;
        if (e % 2) f *= p;
    }
    f *= rest; // leftover prime (or 1)
}

// Rational c > 0 as s^2 * f with f = a*b for squarefree coprime a, b;
// returns (s, f) with s rational and f a squarefree positive integer
// over a square denominator folded into s.
inline void square_split(const Rational& c, Rational& s, Integer& f) {
    if (sign(c) <= 0) throw error("square_split requires a positive rational");
    Integer ns, nf, ds, df;
    square_split(c.get_num(), ns, nf);
    square_split(c.get_den(), ds, df);
    // sqrt(nf/df) = sqrt(nf*df)/df
    s = Rational(ns, ds * df);
    s.canonicalize();
    f = nf * df;
}

} // namespace qdirac
