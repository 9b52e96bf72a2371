#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "qdirac/qvalue.hpp"

namespace qdirac {

/// Dense matrix over QValue.  Row-major, value-semantic, immutable in
/// practice once built.
class QMat {
public:
    QMat() = default;
    QMat(int rows, int cols) : r_(rows), c_(cols), d_(size_t(rows) * cols) {}

    static QMat identity(int n, const QContext& ctx) {
        QMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = ctx.one();
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }

    QValue& at(int i, int j) { return d_[size_t(i) * c_ + j]; }
    const QValue& at(int i, int j) const { return d_[size_t(i) * c_ + j]; }

    friend QMat operator+(const QMat& a, const QMat& b) {
        check_shape(a, b);
        QMat r(a.r_, a.c_);
        for (size_t i = 0; i < a.d_.size(); ++i) r.d_[i] = a.d_[i] + b.d_[i];
        return r;
    }

    friend QMat operator-(const QMat& a, const QMat& b) {
        check_shape(a, b);
        QMat r(a.r_, a.c_);
        for (size_t i = 0; i < a.d_.size(); ++i) r.d_[i] = a.d_[i] - b.d_[i];
        return r;
    }

    friend QMat operator-(const QMat& a) {
        QMat r(a.r_, a.c_);
        for (size_t i = 0; i < a.d_.size(); ++i) r.d_[i] = -a.d_[i];
        return r;
    }

    friend QMat operator*(const QMat& a, const QMat& b) {
        if (a.c_ != b.r_) throw error("matrix product shape mismatch");
        QMat r(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                const QValue& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < b.c_; ++j) {
                    const QValue& bkj = b.at(k, j);
                    if (bkj.is_zero()) continue;
                    r.at(i, j) += aik * bkj;
                }
            }
        return r;
    }

    friend QMat operator*(const QValue& s, const QMat& a) {
        QMat r(a.r_, a.c_);
        for (size_t i = 0; i < a.d_.size(); ++i) r.d_[i] = s * a.d_[i];
        return r;
    }

    QMat transpose() const {
        QMat r(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    QValue trace() const {
        if (r_ != c_) throw error("trace of a non-square matrix");
        QValue t;
        for (int i = 0; i < r_; ++i) t += at(i, i);
        return t;
    }

    bool is_zero() const {
        for (const auto& v : d_)
            if (!v.is_zero()) return false;
        return true;
    }

    // Kronecker product; index (i1*n2+i2, j1*m2+j2).
    friend QMat kron(const QMat& a, const QMat& b) {
        QMat r(a.r_ * b.r_, a.c_ * b.c_);
        for (int i1 = 0; i1 < a.r_; ++i1)
            for (int j1 = 0; j1 < a.c_; ++j1) {
                const QValue& v = a.at(i1, j1);
                if (v.is_zero()) continue;
                for (int i2 = 0; i2 < b.r_; ++i2)
                    for (int j2 = 0; j2 < b.c_; ++j2) {
                        const QValue& w = b.at(i2, j2);
                        if (w.is_zero()) continue;
                        r.at(i1 * b.r_ + i2, j1 * b.c_ + j2) = v * w;
                    }
            }
        return r;
    }

    Eigen::MatrixXd to_eigen(double q0) const {
        Eigen::MatrixXd m(r_, c_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(i, j) = at(i, j).eval(q0);
        return m;
    }

    Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> to_eigen_ld(double q0) const {
        Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> m(r_, c_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(i, j) = at(i, j).eval_ld(q0);
        return m;
    }

    // Largest |entry| after evaluation at q0.
    double max_abs(double q0) const {
        double m = 0;
        for (const auto& v : d_) m = std::max(m, std::abs(v.eval(q0)));
        return m;
    }

private:
    static void check_shape(const QMat& a, const QMat& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw error("matrix shape mismatch");
    }

    int r_ = 0, c_ = 0;
    std::vector<QValue> d_;
};

using QVec = std::vector<QValue>;

inline QVec apply_matrix(const QMat& m, const QVec& v) {
    if (m.cols() != int(v.size())) throw error("matrix-vector shape mismatch");
    QVec r(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        QValue s;
        for (int j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero() && !v[j].is_zero()) s += m.at(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

// --- exact linear algebra ------------------------------------------------
//
// Gaussian elimination over the scalar field.  In exact mode zero tests are
// structural; in numeric mode an entry counts as zero below `tol` relative
// to the largest entry of its matrix.

namespace detail {

inline bool entry_zero(const QValue& v, double scale_tol) {
    if (v.is_exact()) return v.is_zero();
    return std::abs(v.numeric_value()) <= scale_tol;
}

} // namespace detail

/// Reduced row echelon form in place; returns pivot column indices.
inline std::vector<int> rref(QMat& m, double tol = 1e-10) {
    double scale_tol = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_exact())
                scale_tol = std::max(scale_tol, std::abs(m.at(i, j).numeric_value()));
    scale_tol = scale_tol > 0 ? scale_tol * tol : 0;

    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        // pick the numerically largest candidate (first nonzero in exact mode)
        int best = -1;
        double best_mag = 0;
        for (int i = row; i < m.rows(); ++i) {
            const QValue& v = m.at(i, col);
            if (detail::entry_zero(v, scale_tol)) continue;
            if (v.is_exact()) {
                best = i;
                break;
            }
            double mag = std::abs(v.numeric_value());
            if (mag > best_mag) {
                best_mag = mag;
                best = i;
            }
        }
        if (best < 0) continue;
        if (best != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(row, j), m.at(best, j));
        QValue inv = m.at(row, col).inverse();
        for (int j = 0; j < m.cols(); ++j) m.at(row, j) = inv * m.at(row, j);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row) continue;
            QValue f = m.at(i, col);
            if (detail::entry_zero(f, scale_tol)) continue;
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) - f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline int rank(QMat m, double tol = 1e-10) { return int(rref(m, tol).size()); }

/// Basis of the right kernel, one QVec per free column.  Numeric-mode
/// vectors are polished by iterative refinement against the original
/// system, which keeps downstream matrix identities at the 1e-10 scale
/// even after long construction chains.
inline std::vector<QVec> nullspace(QMat m, const QContext& ctx, double tol = 1e-10) {
    QMat original = m;
    std::vector<int> pivots = rref(m, tol);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<QVec> basis;
    for (int col = 0; col < m.cols(); ++col) {
        if (is_pivot[col]) continue;
        QVec v(m.cols(), ctx.zero());
        v[col] = ctx.one();
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m.at(int(k), col);
        basis.push_back(std::move(v));
    }
    if (!ctx.is_exact() && !basis.empty()) {
        Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> Al =
            original.to_eigen_ld(ctx.q0_value);
        Eigen::MatrixXd A = Al.cast<double>();
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
        for (auto& v : basis) {
            Eigen::Matrix<long double, Eigen::Dynamic, 1> x(original.cols());
            for (int i = 0; i < original.cols(); ++i)
                x[i] = v[size_t(i)].eval_ld(ctx.q0_value);
            for (int pass = 0; pass < 2; ++pass) {
                Eigen::VectorXd r = (Al * x).cast<double>();
                Eigen::VectorXd delta = cod.solve(r);
                x -= delta.cast<long double>();
            }
            for (int i = 0; i < original.cols(); ++i)
                v[size_t(i)] = QValue::numeric(x[i], ctx.q0_value);
        }
    }
    return basis;
}

inline QValue det(QMat m) {
    if (m.rows() != m.cols()) throw error("det of a non-square matrix");
    QValue d = QValue::integer(1);
    bool flip = false;
    int n = m.rows();
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i)
            if (!m.at(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) return QValue();
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(col, j), m.at(piv, j));
            flip = !flip;
        }
        d *= m.at(col, col);
        QValue inv = m.at(col, col).inverse();
        for (int i = col + 1; i < n; ++i) {
            QValue f = m.at(i, col) * inv;
            if (f.is_zero()) continue;
            for (int j = col; j < n; ++j) m.at(i, j) = m.at(i, j) - f * m.at(col, j);
        }
    }
    return flip ? -d : d;
}

inline QMat inverse(const QMat& m, const QContext& ctx, double tol = 1e-10) {
    if (m.rows() != m.cols()) throw error("inverse of a non-square matrix");
    int n = m.rows();
    QMat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = ctx.one();
    }
    auto pivots = rref(aug, tol);
    if (int(pivots.size()) != n) throw error("inverse of a singular matrix");
    QMat r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = aug.at(i, n + j);
    return r;
}

// Frobenius-type max norm of a numeric evaluation, for residual reporting.
inline double residual_norm(const QMat& m, double q0) { return m.max_abs(q0); }

} // namespace qdirac
