#pragma once

#include <cstddef>
#include <utility>

#include "errors.hpp"
#include "exact.hpp"

namespace latidx {

/// Symmetric positive definite integer Gram matrix, certified at construction
/// by exact leading principal minors. Immutable after validation.
class GramMatrix {
public:
    std::size_t dim() const { return m_.rows(); }
    const IntMatrix& matrix() const { return m_; }
    const Int& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    /// Norm x^T G x of an integer coordinate vector.
    Int norm(const IntVec& x) const {
        Int q(0);
        const std::size_t n = dim();
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            q += m_(i, i) * x[i] * x[i];
            for (std::size_t j = i + 1; j < n; ++j)
                if (x[j] != 0) q += 2 * m_(i, j) * x[i] * x[j];
        }
        return q;
    }

    Int inner(const IntVec& x, const IntVec& y) const {
        Int q(0);
        const std::size_t n = dim();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (x[i] != 0 && y[j] != 0) q += m_(i, j) * x[i] * y[j];
        return q;
    }

    friend GramMatrix validate_gram(IntMatrix m);

private:
    explicit GramMatrix(IntMatrix m) : m_(std::move(m)) {}
    IntMatrix m_;
};

/// Certify a candidate Gram matrix: square, symmetric, n >= 1, and positive
/// definite by the sign of every leading principal minor (exact).
inline GramMatrix validate_gram(IntMatrix m) {
    if (m.rows() == 0 || m.rows() != m.cols())
        throw dimension_error("gram matrix must be square with positive dimension");
    if (!m.is_symmetric())
        throw not_symmetric_error("gram matrix is not symmetric");
    auto minors = leading_principal_minors(m);
    if (minors.size() != m.rows())
        throw not_positive_definite_error("gram matrix is not positive definite");
    for (const Int& d : minors)
        if (d <= 0)
            throw not_positive_definite_error("gram matrix is not positive definite");
    return GramMatrix(std::move(m));
}

} // namespace latidx
