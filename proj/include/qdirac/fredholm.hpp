#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qdirac/half_int.hpp"
#include "qdirac/qvalue.hpp"

namespace qdirac {

/// One block of the truncated Hilbert space: a spin-j level contributes
/// W↑_j of module dimension 2j+2 and W↓_j of module dimension 2j (absent
/// at j = 0), each repeated 2j+1 times.  The Dirac operator is the scalar
/// [2j] resp. -[2j+2] on a block, so blocks are stored as
/// (module dimension, multiplicity, scalar) and never materialized.
struct FredholmBlock {
    HalfInt j;
    bool up = true;
    int module_dim = 0;
    int multiplicity = 0;
    double d_eigenvalue = 0;
    double f_value = 0; // d / sqrt(1 + d^2)

    long total_states() const { return long(module_dim) * multiplicity; }
};

struct TruncatedHilbert {
    double q0 = 0;
    HalfInt jmax;
    std::vector<FredholmBlock> blocks;
    long total_dimension = 0;
};

namespace detail {

inline long double qnum(HalfInt n, long double q0) {
    long double nv = n.twice / 2.0L;
    return (std::pow(q0, nv) - std::pow(q0, -nv)) / (q0 - 1.0L / q0);
}

inline long double sign_coefficient(long double d) { return d / std::sqrt(1.0L + d * d); }

} // namespace detail

/// Block table for the left-action decomposition up to the cutoff.
inline TruncatedHilbert build_truncation(HalfInt jmax, double q0) {
    if (!(q0 > 0) || q0 == 1.0) throw error("build_truncation requires q0 > 0, q0 != 1");
    if (jmax.twice < 0 || jmax.twice > 400)
        throw error("build_truncation supports 0 <= jmax <= 200");
    TruncatedHilbert H;
    H.q0 = q0;
    H.jmax = jmax;
    for (int t = 0; t <= jmax.twice; ++t) {
        HalfInt j(t);
        FredholmBlock up;
        up.j = j;
        up.up = true;
        up.module_dim = t + 2;
        up.multiplicity = t + 1;
        up.d_eigenvalue = double(detail::qnum(HalfInt(2 * t), q0));
        up.f_value = double(detail::sign_coefficient(detail::qnum(HalfInt(2 * t), q0)));
        H.total_dimension += up.total_states();
        H.blocks.push_back(up);
        if (t > 0) {
            FredholmBlock down;
            down.j = j;
            down.up = false;
            down.module_dim = t;
            down.multiplicity = t + 1;
            down.d_eigenvalue = -double(detail::qnum(HalfInt(2 * t + 4), q0));
            down.f_value =
                double(detail::sign_coefficient(-detail::qnum(HalfInt(2 * t + 4), q0)));
            H.total_dimension += down.total_states();
            H.blocks.push_back(down);
        }
    }
    return H;
}

/// Partial sums of tr(1 - F^2) = tr (1 + D^2)^{-1} over the block table,
/// with a geometric-tail estimate for the remainder.
struct TraceTailResult {
    std::vector<HalfInt> levels;
    std::vector<double> increments;   // contribution of each level
    std::vector<double> partial_sums; // running sums, monotone increasing
    double total = 0;
    double tail_estimate = 0;  // geometric bound for the part beyond jmax
    double fitted_C = 0;       // increments <= C q0^{-4j} over computed levels
    bool ratios_below_one_beyond_2 = true;
};

inline TraceTailResult trace_tail(HalfInt jmax, double q0) {
    if (q0 == 1.0) throw error("trace_tail diverges at q0 = 1");
    if (!(q0 > 0)) throw error("trace_tail requires q0 > 0");
    if (q0 < 1) q0 = 1.0 / q0; // [n] is invariant under q -> 1/q
    TraceTailResult out;
    long double running = 0;
    for (int t = 0; t <= jmax.twice; ++t) {
        HalfInt j(t);
        long double d_up = detail::qnum(HalfInt(2 * t), q0);
        long double inc = (long double)(t + 2) * (t + 1) / (1.0L + d_up * d_up);
        if (t > 0) {
            long double d_dn = detail::qnum(HalfInt(2 * t + 4), q0);
            inc += (long double)(t) * (t + 1) / (1.0L + d_dn * d_dn);
        }
        running += inc;
        out.levels.push_back(j);
        out.increments.push_back(double(inc));
        out.partial_sums.push_back(double(running));
        double bound = double(inc) * std::pow(q0, 4.0 * j.value());
        out.fitted_C = std::max(out.fitted_C, bound);
        if (t >= 4 && out.increments.size() >= 2) {
            double ratio = out.increments.back() / out.increments[out.increments.size() - 2];
            if (ratio >= 1.0) out.ratios_below_one_beyond_2 = false;
        }
    }
    out.total = double(running);
    if (out.increments.size() >= 2) {
        double r = out.increments.back() / out.increments[out.increments.size() - 2];
        out.tail_estimate = r < 1.0 ? out.increments.back() * r / (1.0 - r)
                                    : std::numeric_limits<double>::infinity();
    }
    return out;
}

/// The diagonal-block commutator coefficients
/// c_j(k) = [j+k]/sqrt(1+[j+k]^2) - [j]/sqrt(1+[j]^2), together with an
/// exponential-rate fit |c_j| <= C q0^{-2j} and the multiplicity-weighted
/// sum that controls the trace norm.
struct CommutatorDecayResult {
    HalfInt shift;
    std::vector<std::pair<HalfInt, double>> coefficients; // (j, c_j)
    double fitted_C = 0;       // |c_j| <= C q0^{-2j} over computed levels
    double weighted_sum = 0;   // Σ (2j+2)(2j+1) |c_j|
    bool monotone_beyond_2 = true;
};

inline CommutatorDecayResult commutator_decay(HalfInt shift, HalfInt jmax, double q0) {
    if (std::abs(shift.twice) > 8) throw error("commutator_decay supports |k| <= 4");
    if (!(q0 > 0) || q0 == 1.0) throw error("commutator_decay requires q0 > 0, q0 != 1");
    double qfit = q0 < 1 ? 1.0 / q0 : q0;
    CommutatorDecayResult out;
    out.shift = shift;
    double prev_abs = -1;
    for (int t = 0; t <= jmax.twice; ++t) {
        HalfInt j(t);
        if (j.twice + shift.twice < 0) continue; // j + k must be a valid level
        long double cj = detail::sign_coefficient(detail::qnum(j + shift, q0)) -
                         detail::sign_coefficient(detail::qnum(j, q0));
        double a = std::abs(double(cj));
        out.coefficients.emplace_back(j, double(cj));
        out.weighted_sum += double(t + 2) * (t + 1) * a;
        out.fitted_C = std::max(out.fitted_C, a * std::pow(qfit, 2.0 * j.value()));
        if (t >= 4 && prev_abs >= 0 && a > prev_abs + 1e-18) out.monotone_beyond_2 = false;
        if (t >= 4) prev_abs = a;
    }
    return out;
}

} // namespace qdirac
