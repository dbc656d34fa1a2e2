#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

// Exact integer / rational linear algebra. Everything here is
// arbitrary-precision; no floating point enters any computation.
// All functions are pure and safe to call concurrently.

namespace latidx {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVector = std::vector<Rat>;

/// Dense matrix of arbitrary-precision integers, row-major, value semantics.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<IntVec>& rows) {
        if (rows.empty()) return IntMatrix();
        IntMatrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw dimension_error("from_rows: ragged input");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_ && rows_ > 0; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    IntVec row(std::size_t i) const {
        return IntVec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }

    IntMatrix transposed() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

inline IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols() != y.rows()) throw dimension_error("matrix product shape mismatch");
    IntMatrix z(x.rows(), y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t k = 0; k < x.cols(); ++k) {
            const Int& xik = x(i, k);
            if (xik == 0) continue;
            for (std::size_t j = 0; j < y.cols(); ++j) z(i, j) += xik * y(k, j);
        }
    return z;
}

inline IntVec mul(const IntMatrix& m, const IntVec& v) {
    if (m.cols() != v.size()) throw dimension_error("matrix-vector shape mismatch");
    IntVec r(m.rows(), Int(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

/// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
inline Int det_exact(IntMatrix m) {
    if (!m.square()) throw dimension_error("det_exact: matrix is not square");
    const std::size_t n = m.rows();
    Int prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return Int(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : Int(-m(n - 1, n - 1));
}

/// Leading principal minors det(m[0..k][0..k]) for k = 0..n-1, computed by a
/// swap-free Bareiss sweep. Stops early and returns a short vector if a zero
/// pivot makes the remaining minors start from a zero determinant; callers
/// that certify positive definiteness reject at the first non-positive entry
/// anyway.
inline std::vector<Int> leading_principal_minors(IntMatrix m) {
    if (!m.square()) throw dimension_error("leading_principal_minors: not square");
    const std::size_t n = m.rows();
    std::vector<Int> minors;
    minors.reserve(n);
    Int prev(1);
    for (std::size_t k = 0; k < n; ++k) {
        minors.push_back(m(k, k));
        if (k + 1 == n) break;
        if (m(k, k) == 0) break;
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return minors;
}

/// Rank over the rationals, fraction-free row echelon with column scanning.
inline std::size_t rank_exact(IntMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    Int prev(1);
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(p, j));
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                Int t = m(i, j) * m(r, c) - m(i, c) * m(r, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, c) = 0;
        }
        prev = m(r, c);
        ++r;
    }
    return r;
}

namespace detail {

// Row/column reduction step for the Smith form: makes m(t,t) divide every
// entry of row t and column t, accumulating gcds the classical way.
inline void smith_clear_cross(IntMatrix& m, std::size_t t) {
    const std::size_t n = m.rows();
    bool again = true;
    while (again) {
        again = false;
        // move a nonzero of minimal |.| in the trailing block to (t,t)
        std::size_t bi = t, bj = t;
        bool found = false;
        for (std::size_t i = t; i < n; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (m(i, j) != 0) {
                    if (!found || cmp(abs(m(i, j)), abs(m(bi, bj))) < 0) {
                        bi = i; bj = j; found = true;
                    }
                }
        if (!found) return;
        if (bi != t)
            for (std::size_t j = 0; j < n; ++j) std::swap(m(t, j), m(bi, j));
        if (bj != t)
            for (std::size_t i = 0; i < n; ++i) std::swap(m(i, t), m(i, bj));
        // clear column t
        for (std::size_t i = t + 1; i < n; ++i) {
            if (m(i, t) == 0) continue;
            Int q = m(i, t) / m(t, t); // truncated division keeps remainders small
            for (std::size_t j = t; j < n; ++j) m(i, j) -= q * m(t, j);
            if (m(i, t) != 0) { again = true; }
        }
        if (again) continue;
        // clear row t
        for (std::size_t j = t + 1; j < n; ++j) {
            if (m(t, j) == 0) continue;
            Int q = m(t, j) / m(t, t);
            for (std::size_t i = t; i < n; ++i) m(i, j) -= q * m(i, t);
            if (m(t, j) != 0) { again = true; }
        }
        if (again) continue;
        // enforce divisibility of the trailing block by the pivot
        for (std::size_t i = t + 1; i < n && !again; ++i)
            for (std::size_t j = t + 1; j < n && !again; ++j)
                if (m(i, j) % m(t, t) != 0) {
                    for (std::size_t jj = t; jj < n; ++jj) m(t, jj) += m(i, jj);
                    again = true;
                }
    }
}

} // namespace detail

/// Elementary divisors d1 | d2 | ... | dn of a nonsingular square integer
/// matrix (diagonal of the Smith normal form, all positive).
inline std::vector<Int> smith_invariants(IntMatrix m) {
    if (!m.square()) throw dimension_error("smith_invariants: matrix is not square");
    const std::size_t n = m.rows();
    if (det_exact(m) == 0)
        throw singular_matrix_error("smith_invariants: singular input");
    for (std::size_t t = 0; t < n; ++t) detail::smith_clear_cross(m, t);
    std::vector<Int> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = abs(m(i, i));
    return d;
}

/// Exact rational solution x of basis * x = v for a nonsingular square basis.
inline RatVector solve_rational(const IntMatrix& basis, const IntVec& v) {
    if (!basis.square()) throw dimension_error("solve_rational: basis is not square");
    const std::size_t n = basis.rows();
    if (v.size() != n) throw dimension_error("solve_rational: vector length mismatch");

    // fraction-free forward elimination on the augmented system
    IntMatrix m(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = basis(i, j);
        m(i, n) = v[i];
    }
    Int prev(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k) == 0) ++p;
        if (p == n) throw singular_matrix_error("solve_rational: singular basis");
        if (p != k)
            for (std::size_t j = 0; j <= n; ++j) std::swap(m(k, j), m(p, j));
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j <= n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }

    RatVector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Rat s(m(ii, n));
        for (std::size_t j = ii + 1; j < n; ++j) s -= Rat(m(ii, j)) * x[j];
        x[ii] = s / Rat(m(ii, ii));
        x[ii].canonicalize();
    }
    return x;
}

/// True iff every coordinate is an even integer (membership in 2L for a
/// vector given in basis coordinates).
inline bool all_even(const IntVec& v) {
    for (const Int& c : v)
        if (mpz_odd_p(c.get_mpz_t())) return false;
    return true;
}

} // namespace latidx
