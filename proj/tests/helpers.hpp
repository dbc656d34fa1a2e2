#pragma once

// Test-only oracles and generators. These stay independent of the library
// code paths they cross-check (Laplace expansion vs Bareiss, coordinate-box
// enumeration vs the pruned enumerator, ...).

#include <random>
#include <vector>

#include <latidx/exact.hpp>

namespace oracle {

using latidx::Int;
using latidx::IntMatrix;
using latidx::IntVec;

/// Brute-force determinant by Laplace expansion along the first row.
inline Int det_laplace(const IntMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    Int acc(0);
    for (std::size_t j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        IntMatrix sub(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                sub(r - 1, cc++) = m(r, c);
            }
        }
        Int term = m(0, j) * det_laplace(sub);
        if (j % 2 == 0) acc += term; else acc -= term;
    }
    return acc;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
    return m;
}

/// Random unimodular matrix: a product of elementary row operations.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 24) {
    IntMatrix u = IntMatrix::identity(n);
    std::uniform_int_distribution<int> pick(0, int(n) - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_int_distribution<int> kind(0, 2);
    for (int s = 0; s < steps; ++s) {
        int i = pick(rng), j = pick(rng);
        switch (kind(rng)) {
        case 0: { // row_i += c * row_j
            if (i == j) break;
            int c = coef(rng);
            for (std::size_t k = 0; k < n; ++k) u(i, k) += c * u(j, k);
            break;
        }
        case 1: // swap
            if (i != j)
                for (std::size_t k = 0; k < n; ++k) std::swap(u(i, k), u(j, k));
            break;
        default: // negate
            for (std::size_t k = 0; k < n; ++k) u(i, k) = -u(i, k);
        }
    }
    return u;
}

/// Random symmetric positive definite integer matrix with |entries| <= cap,
/// certified by exact leading minors (rejection sampling).
inline IntMatrix random_pd_gram(std::mt19937_64& rng, std::size_t n, long cap) {
    std::uniform_int_distribution<long> diag(1, cap);
    std::uniform_int_distribution<long> off(-cap, cap);
    for (;;) {
        IntMatrix g(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            g(i, i) = diag(rng);
            for (std::size_t j = i + 1; j < n; ++j) g(i, j) = g(j, i) = off(rng);
        }
        auto minors = latidx::leading_principal_minors(g);
        if (minors.size() != n) continue;
        bool pd = true;
        for (const Int& m : minors)
            if (m <= 0) { pd = false; break; }
        if (pd) return g;
    }
}

/// All vectors x in the integer box prod [-b_i, b_i] with 0 < x^T g x <= bound,
/// canonical sign (first nonzero coordinate positive). Returns (vector, norm).
inline std::vector<std::pair<IntVec, Int>>
box_vectors(const IntMatrix& g, const std::vector<long>& box, const Int& bound) {
    const std::size_t n = g.rows();
    std::vector<std::pair<IntVec, Int>> out;
    IntVec x(n, Int(0));
    std::vector<long> cur(n, 0);
    // odometer over the box
    for (std::size_t i = 0; i < n; ++i) cur[i] = -box[i];
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) x[i] = cur[i];
        bool zero = true;
        int first_sign = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (cur[i] != 0) { zero = false; first_sign = cur[i] > 0 ? 1 : -1; break; }
        if (!zero && first_sign > 0) {
            Int q(0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) q += g(i, j) * x[i] * x[j];
            if (q > 0 && q <= bound) out.emplace_back(x, q);
        }
        std::size_t k = 0;
        while (k < n && cur[k] == box[k]) { cur[k] = -box[k]; ++k; }
        if (k == n) break;
        ++cur[k];
    }
    return out;
}

/// Minimal nonzero norm and the set of canonical minimal vectors inside the
/// given box (the caller must supply a box large enough to contain them).
inline std::pair<Int, std::vector<IntVec>>
box_minimal(const IntMatrix& g, const std::vector<long>& box, const Int& bound) {
    auto all = box_vectors(g, box, bound);
    Int best(-1);
    for (auto& [v, q] : all)
        if (best < 0 || q < best) best = q;
    std::vector<IntVec> vecs;
    for (auto& [v, q] : all)
        if (q == best) vecs.push_back(v);
    std::sort(vecs.begin(), vecs.end());
    return {best, vecs};
}

} // namespace oracle
