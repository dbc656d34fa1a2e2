#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "exact.hpp"
#include "gram.hpp"

// Complete enumeration of the minimal vectors of a lattice given by its Gram
// matrix. The search is the classical ellipsoid walk over an exact rational
// Cholesky factorization; every comparison happens in mpq, so completeness is
// a certificate, not a numerical hope.

namespace latidx {

/// One canonical representative per pair +-x of minimal vectors, sorted
/// lexicographically; the canonical sign makes the first nonzero coordinate
/// positive.
struct MinimalVectorSet {
    Int min_norm;
    std::vector<IntVec> vectors; // coordinates w.r.t. the input basis
    std::size_t pair_count() const { return vectors.size(); }
};

namespace detail {

/// Unit-upper-triangular U and positive diagonal D with G = U^T D U over Q,
/// so that x^T G x = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2.
struct RationalCholesky {
    std::vector<Rat> d;
    std::vector<std::vector<Rat>> u;
};

inline RationalCholesky rational_cholesky(const GramMatrix& g) {
    const std::size_t n = g.dim();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) a[i][j] = Rat(g(i, j));
    RationalCholesky ch;
    ch.d.resize(n);
    ch.u.assign(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t k = 0; k < n; ++k) {
        ch.d[k] = a[k][k];
        for (std::size_t j = k + 1; j < n; ++j) {
            ch.u[k][j] = a[k][j] / a[k][k];
            ch.u[k][j].canonicalize();
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                a[i][j] -= a[k][i] * a[k][j] / a[k][k];
                a[i][j].canonicalize();
            }
    }
    return ch;
}

inline long ceil_rat(const Rat& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q.get_si();
}

struct MinEnumState {
    const RationalCholesky* ch = nullptr;
    int n = 0;
    Rat bound;               // current search radius; shrinks on improvement
    std::vector<long> x;     // coordinates, filled from level n-1 down to 0
    std::vector<Rat> center; // c_i of the active branch
    std::vector<Rat> spent;  // norm contributed by levels above i
    Int best = -1;           // smallest nonzero norm seen
    std::vector<IntVec> found;

    Rat term(int i) const {
        Rat t = Rat(x[i]) + center[i];
        return ch->d[i] * t * t;
    }

    void leaf() {
        bool zero = true;
        for (int i = 0; i < n; ++i)
            if (x[i] != 0) { zero = false; break; }
        if (zero) return;
        Rat q = spent[0] + term(0);
        if (q == 0 || q.get_den() != 1) return; // PD Gram: never happens
        Int norm = q.get_num();
        if (best < 0 || norm < best) {
            best = norm;
            bound = Rat(norm);
            found.clear();
        }
        if (norm == best) {
            for (int i = 0; i < n; ++i) {
                if (x[i] == 0) continue;
                if (x[i] < 0) return; // keep the mirror representative instead
                break;
            }
            IntVec v(n);
            for (int i = 0; i < n; ++i) v[i] = x[i];
            found.push_back(std::move(v));
        }
    }

    void descend(int level) {
        if (level < 0) { leaf(); return; }
        Rat c(0);
        for (int j = level + 1; j < n; ++j)
            if (x[j] != 0) c += ch->u[level][j] * Rat(x[j]);
        c.canonicalize();
        center[level] = c;
        const long start = ceil_rat(-c);
        // walk outward from the center on both sides; each side's term grows
        // monotonically, and the bound is re-read every step because leaves
        // may have shrunk it
        for (long xv = start;; ++xv) {
            x[level] = xv;
            Rat here = term(level);
            if (here > bound - spent[level]) break;
            if (level > 0) spent[level - 1] = spent[level] + here;
            descend(level - 1);
        }
        for (long xv = start - 1;; --xv) {
            x[level] = xv;
            Rat here = term(level);
            if (here > bound - spent[level]) break;
            if (level > 0) spent[level - 1] = spent[level] + here;
            descend(level - 1);
        }
        x[level] = 0;
    }
};

} // namespace detail

/// All pairs +-x achieving the lattice minimum, found by staged search: the
/// smallest diagonal entry opens the radius, and the radius shrinks each time
/// a shorter vector turns up. Exact and complete.
inline MinimalVectorSet minimal_vectors(const GramMatrix& g) {
    const int n = int(g.dim());
    detail::RationalCholesky ch = detail::rational_cholesky(g);

    Int diag_min = g(0, 0);
    for (int i = 1; i < n; ++i) diag_min = std::min(diag_min, Int(g(i, i)));

    detail::MinEnumState st;
    st.ch = &ch;
    st.n = n;
    st.bound = Rat(diag_min);
    st.x.assign(n, 0);
    st.center.assign(n, Rat(0));
    st.spent.assign(n, Rat(0));

    st.descend(n - 1);

    MinimalVectorSet out;
    out.min_norm = st.best;
    out.vectors = std::move(st.found);
    std::sort(out.vectors.begin(), out.vectors.end());
    return out;
}

/// Matrix whose rows are the canonical minimal vectors.
inline IntMatrix minimal_vector_matrix(const MinimalVectorSet& s) {
    return IntMatrix::from_rows(s.vectors);
}

/// True iff the minimal vectors span the whole space.
inline bool is_well_rounded(const GramMatrix& g) {
    MinimalVectorSet s = minimal_vectors(g);
    return rank_exact(minimal_vector_matrix(s)) == g.dim();
}

} // namespace latidx
