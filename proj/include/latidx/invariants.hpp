#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "exact.hpp"
#include "gram.hpp"
#include "minvec.hpp"

// Invariants attached to the sublattices spanned by n independent minimal
// vectors: maximal index, quotient group structure, length, the index-2
// frame with its type profile, and the perfection rank.

namespace latidx {

struct MaximalIndexResult {
    Int index;
    std::vector<std::size_t> witness; // positions into the canonical minimal vector list
};

/// A sublattice L0 of index 2 spanned by minimal vectors e_1..e_n, with glue
/// vector e = (e_1+...+e_n)/2 and every minimal vector outside +-{e_i}
/// written as e - sum_{i in I} e_i. Masks require n <= 31.
struct Index2Frame {
    std::size_t n = 0;
    IntMatrix basis;   // rows e_1..e_n in input-basis coordinates, signs normalized
    IntVec glue;       // e in input-basis coordinates
    bool glue_minimal = false; // whether e itself is a minimal vector (t_0 = 1)
    std::vector<std::uint32_t> index_sets; // one mask per minimal vector outside +-{e_i}
    Int min_norm;
};

struct TypeProfile {
    std::size_t n = 0;
    std::size_t basis_pairs = 0;       // the n pairs +-e_i, counted separately
    std::vector<long> t;               // t[p], 0 <= p <= floor(n/2)
    long total() const {
        long s = 0;
        for (long v : t) s += v;
        return s;
    }
};

namespace detail {

/// Incremental Gram-Schmidt over the inner products of a fixed candidate
/// list. Tracks the product of squared norms, i.e. the Gram determinant of
/// the chosen vectors; pushes are O(k^2) rational operations and popping is
/// exact backtracking.
class GramGS {
public:
    explicit GramGS(const std::vector<std::vector<Int>>& ip) : ip_(&ip), prod_(1) {}

    std::size_t depth() const { return chosen_.size(); }
    const Rat& gram_det() const { return prod_; }

    bool push(std::size_t idx) {
        const auto& ip = *ip_;
        const std::size_t k = chosen_.size();
        std::vector<Rat> c(k);
        for (std::size_t j = 0; j < k; ++j) {
            Rat dot(0);
            for (std::size_t l = 0; l <= j; ++l)
                if (coef_[j][l] != 0) dot += coef_[j][l] * Rat(ip[idx][chosen_[l]]);
            dot.canonicalize();
            c[j] = dot / norm2_[j];
            c[j].canonicalize();
        }
        std::vector<Rat> nc(k + 1, Rat(0));
        nc[k] = 1;
        for (std::size_t j = 0; j < k; ++j)
            if (c[j] != 0)
                for (std::size_t l = 0; l <= j; ++l) nc[l] -= c[j] * coef_[j][l];
        Rat n2(ip[idx][idx]);
        for (std::size_t l = 0; l < k; ++l)
            if (nc[l] != 0) n2 += nc[l] * Rat(ip[idx][chosen_[l]]);
        n2.canonicalize();
        if (n2 == 0) return false; // linearly dependent
        chosen_.push_back(idx);
        coef_.push_back(std::move(nc));
        norm2_.push_back(n2);
        prods_.push_back(prod_);
        prod_ *= n2;
        prod_.canonicalize();
        return true;
    }

    void pop() {
        chosen_.pop_back();
        coef_.pop_back();
        norm2_.pop_back();
        prod_ = prods_.back();
        prods_.pop_back();
    }

private:
    const std::vector<std::vector<Int>>* ip_;
    std::vector<std::size_t> chosen_;
    std::vector<std::vector<Rat>> coef_;
    std::vector<Rat> norm2_;
    std::vector<Rat> prods_;
    Rat prod_;
};

inline std::vector<std::vector<Int>> pairwise_inner(const GramMatrix& g,
                                                    const std::vector<IntVec>& vs) {
    const std::size_t s = vs.size();
    std::vector<std::vector<Int>> ip(s, std::vector<Int>(s));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i; j < s; ++j) ip[i][j] = ip[j][i] = g.inner(vs[i], vs[j]);
    return ip;
}

/// Exhaustive walk over full-rank n-subsets of the candidate vectors in
/// lexicographic order. `min_interesting` prunes subtrees whose Fischer bound
/// (Gram determinant of the chosen vectors times t^{n-k}) cannot reach an
/// index of that size; the callback returns the new threshold, so a caller
/// maximizing the index tightens it as it goes. A negative return aborts the
/// walk.
inline void for_each_fullrank_subset(
    const GramMatrix& g, const std::vector<IntVec>& vs, const Int& det_g,
    const Int& min_norm, Int min_interesting,
    const std::function<Int(const std::vector<std::size_t>&, const Int&)>& leaf) {
    const std::size_t n = g.dim(), s = vs.size();
    auto ip = pairwise_inner(g, vs);
    GramGS gs(ip);
    std::vector<std::size_t> chosen;
    Int threshold = min_interesting;
    bool stop = false;

    // t^j table for the Fischer bound
    std::vector<Int> tpow(n + 1);
    tpow[0] = 1;
    for (std::size_t j = 1; j <= n; ++j) tpow[j] = tpow[j - 1] * min_norm;

    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        const std::size_t k = chosen.size();
        if (k == n) {
            Rat q = gs.gram_det() / Rat(det_g);
            q.canonicalize();
            // [L:M]^2 = det Gram(M) / det Gram(L), a perfect square integer
            Int idx2 = q.get_num();
            Int idx;
            mpz_sqrt(idx.get_mpz_t(), idx2.get_mpz_t());
            threshold = leaf(chosen, idx);
            if (threshold < 0) stop = true;
            return;
        }
        for (std::size_t i = start; i < s && !stop; ++i) {
            if (s - i < n - k) break;
            if (!gs.push(i)) continue;
            // Fischer: achievable index^2 <= gram_det * t^{n-k-1} / det_g
            Rat cap = gs.gram_det() * Rat(tpow[n - k - 1]);
            if (cap < Rat(threshold * threshold * det_g)) {
                gs.pop();
                continue;
            }
            chosen.push_back(i);
            rec(i + 1);
            chosen.pop_back();
            gs.pop();
        }
    };
    rec(0);
}

} // namespace detail

/// Maximal index over all sublattices spanned by n independent minimal
/// vectors, with the lexicographically first witness subset attaining it.
inline MaximalIndexResult maximal_index(const GramMatrix& g, const MinimalVectorSet& smin) {
    const std::size_t n = g.dim();
    if (rank_exact(minimal_vector_matrix(smin)) != n)
        throw not_well_rounded_error("maximal index requires a well-rounded lattice");
    Int det_g = det_exact(g.matrix());

    MaximalIndexResult best;
    best.index = 0;
    detail::for_each_fullrank_subset(
        g, smin.vectors, det_g, smin.min_norm, Int(1),
        [&](const std::vector<std::size_t>& subset, const Int& idx) -> Int {
            if (idx > best.index) {
                best.index = idx;
                best.witness = subset;
            }
            return best.index + 1; // only strictly better subtrees matter now
        });
    return best;
}

inline MaximalIndexResult maximal_index(const GramMatrix& g) {
    return maximal_index(g, minimal_vectors(g));
}

/// Elementary divisors of L / <subset>, i.e. the Smith invariants of the
/// coordinate matrix of the chosen n minimal vectors.
inline std::vector<Int> quotient_structure(const GramMatrix& g,
                                           const std::vector<IntVec>& subset) {
    if (subset.size() != g.dim())
        throw dimension_error("quotient_structure: need exactly n vectors");
    IntMatrix m = IntMatrix::from_rows(subset);
    if (rank_exact(m) != g.dim())
        throw rank_deficient_error("quotient_structure: subset is not full rank");
    return smith_invariants(m);
}

/// Length: the least k such that some k independent minimal vectors sum to an
/// element of 2L. Defined for lattices of maximal index 2.
inline std::size_t length(const GramMatrix& g, const MinimalVectorSet& smin) {
    const std::size_t n = g.dim();
    auto mi = maximal_index(g, smin);
    if (mi.index != 2)
        throw wrong_maximal_index_error("length is defined for maximal index 2");

    const auto& vs = smin.vectors;
    const std::size_t s = vs.size();
    // parity masks: sum of a subset lies in 2L iff the XOR of masks vanishes
    std::vector<std::uint64_t> parity(s, 0);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (mpz_odd_p(vs[i][j].get_mpz_t())) parity[i] |= (std::uint64_t(1) << j);

    auto ip = detail::pairwise_inner(g, vs);
    std::vector<std::size_t> pick;
    for (std::size_t k = 1; k <= n; ++k) {
        bool found = false;
        std::function<void(std::size_t, std::uint64_t)> rec =
            [&](std::size_t start, std::uint64_t acc) {
                if (found) return;
                if (pick.size() == k) {
                    if (acc != 0) return; // congruence test first (cheap)
                    detail::GramGS gs(ip);
                    for (std::size_t idx : pick)
                        if (!gs.push(idx)) return; // not independent
                    found = true;
                    return;
                }
                for (std::size_t i = start; i < s && !found; ++i) {
                    if (s - i < k - pick.size()) break;
                    pick.push_back(i);
                    rec(i + 1, acc ^ parity[i]);
                    pick.pop_back();
                }
            };
        rec(0, 0);
        if (found) return k;
    }
    throw error("length: no relation found (unreachable for maximal index 2)");
}

inline std::size_t length(const GramMatrix& g) { return length(g, minimal_vectors(g)); }

/// Rank of the projection forms x x^T of the minimal vectors inside the
/// n(n+1)/2-dimensional space of symmetric matrices. The lattice is perfect
/// iff this reaches n(n+1)/2.
inline std::size_t perfection_rank(const GramMatrix& g, const MinimalVectorSet& smin) {
    const std::size_t n = g.dim();
    const std::size_t cols = n * (n + 1) / 2;
    IntMatrix m(smin.vectors.size(), cols);
    for (std::size_t r = 0; r < smin.vectors.size(); ++r) {
        const IntVec& x = smin.vectors[r];
        std::size_t c = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) m(r, c++) = x[i] * x[j];
    }
    return rank_exact(m);
}

inline std::size_t perfection_rank(const GramMatrix& g) {
    return perfection_rank(g, minimal_vectors(g));
}

inline bool is_perfect(const GramMatrix& g, const MinimalVectorSet& smin) {
    return perfection_rank(g, smin) == g.dim() * (g.dim() + 1) / 2;
}

inline bool is_perfect(const GramMatrix& g) { return is_perfect(g, minimal_vectors(g)); }

namespace detail {

/// Glue support of an index-2 witness: coordinates of the nontrivial class of
/// L / L0 over the witness basis have half-integer entries exactly on J.
/// Returns the mask J, or nullopt if something ruled the witness out.
inline std::optional<std::uint32_t> glue_support(const IntMatrix& basis_rows) {
    const std::size_t n = basis_rows.rows();
    IntMatrix bt = basis_rows.transposed();
    for (std::size_t j = 0; j < n; ++j) {
        IntVec f(n, Int(0));
        f[j] = 1;
        RatVector y = solve_rational(bt, f);
        std::uint32_t mask = 0;
        bool half = false, ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (y[i].get_den() == 1) continue;
            if (y[i].get_den() != 2) { ok = false; break; }
            half = true;
            mask |= (std::uint32_t(1) << i);
        }
        if (ok && half) return mask;
    }
    return std::nullopt;
}

} // namespace detail

/// Build the index-2 frame: lexicographically first index-2 witness whose
/// glue class reduces to (e_1+...+e_n)/2, basis signs normalized so that the
/// glue vector is minimal whenever its class contains a minimal vector, and
/// every remaining minimal vector written as an index set with |I| <= n/2
/// (1 in I at equality).
inline Index2Frame index2_frame(const GramMatrix& g, const MinimalVectorSet& smin) {
    const std::size_t n = g.dim();
    if (n < 2 || n > 31) throw out_of_range_error("index2_frame: dimension out of range");
    auto mi = maximal_index(g, smin);
    if (mi.index != 2)
        throw wrong_maximal_index_error("index2_frame requires maximal index 2");
    Int det_g = det_exact(g.matrix());

    const auto& vs = smin.vectors;
    const std::uint32_t full = (n == 32) ? 0xffffffffu : ((std::uint32_t(1) << n) - 1);

    std::optional<std::vector<std::size_t>> witness;
    detail::for_each_fullrank_subset(
        g, vs, det_g, smin.min_norm, Int(2),
        [&](const std::vector<std::size_t>& subset, const Int& idx) -> Int {
            if (idx != 2) return Int(2);
            std::vector<IntVec> rows;
            for (std::size_t i : subset) rows.push_back(vs[i]);
            auto mask = detail::glue_support(IntMatrix::from_rows(rows));
            if (mask && *mask == full) {
                witness = subset;
                return Int(-1); // lexicographically first hit; stop the walk
            }
            return Int(2);
        });
    if (!witness)
        throw wrong_length_error(
            "index2_frame: no index-2 witness has full glue support (length < n)");

    // signed basis rows; start with the canonical representatives
    std::vector<IntVec> basis;
    for (std::size_t i : *witness) basis.push_back(vs[i]);

    // coordinates of every minimal vector over the witness basis
    IntMatrix bt = IntMatrix::from_rows(basis).transposed();
    struct GlueVec { std::size_t pos; std::vector<int> sign; }; // sign[i] = +-1 for coord +-1/2
    std::vector<GlueVec> glue_class;
    for (std::size_t r = 0; r < vs.size(); ++r) {
        RatVector y = solve_rational(bt, vs[r]);
        bool integral = true;
        for (const Rat& c : y)
            if (c.get_den() != 1) { integral = false; break; }
        if (integral) {
            // must be one of +-e_i: anything else contradicts the frame model
            std::size_t nonzero = 0;
            bool unit = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (y[i] == 0) continue;
                ++nonzero;
                if (abs(y[i].get_num()) != 1) unit = false;
            }
            if (nonzero != 1 || !unit)
                throw wrong_length_error(
                    "index2_frame: a minimal vector of L0 is not a basis vector");
            continue;
        }
        GlueVec gv;
        gv.pos = r;
        gv.sign.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (y[i].get_den() != 2 || abs(y[i].get_num()) != 1)
                throw wrong_length_error(
                    "index2_frame: a minimal vector is outside the half-coordinate model");
            gv.sign[i] = y[i] > 0 ? 1 : -1;
        }
        glue_class.push_back(std::move(gv));
    }

    // normalize signs so that the glue vector itself is minimal if possible;
    // the canonically first minimal vector of the glue class decides the flips
    std::vector<int> flip(n, 1);
    bool glue_minimal = false;
    if (!glue_class.empty()) {
        const GlueVec& lead = glue_class.front(); // vs is sorted, glue_class in that order
        for (std::size_t i = 0; i < n; ++i) flip[i] = lead.sign[i];
        glue_minimal = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (flip[i] < 0)
            for (std::size_t j = 0; j < n; ++j) basis[i][j] = -basis[i][j];

    Index2Frame frame;
    frame.n = n;
    frame.basis = IntMatrix::from_rows(basis);
    frame.glue_minimal = glue_minimal;
    frame.min_norm = smin.min_norm;
    frame.glue.assign(n, Int(0));
    for (std::size_t j = 0; j < n; ++j) {
        Int sum(0);
        for (std::size_t i = 0; i < n; ++i) sum += basis[i][j];
        if (mpz_odd_p(sum.get_mpz_t()))
            throw error("index2_frame: glue vector is not in the lattice");
        frame.glue[j] = sum / 2;
    }

    for (const GlueVec& gv : glue_class) {
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (gv.sign[i] * flip[i] < 0) mask |= (std::uint32_t(1) << i);
        // type normalization: |I| <= n/2, and 1 in I at |I| = n/2
        std::size_t p = std::size_t(__builtin_popcount(mask));
        if (2 * p > n || (2 * p == n && !(mask & 1u)))
            mask = full & ~mask;
        frame.index_sets.push_back(mask);
    }
    return frame;
}

inline Index2Frame index2_frame(const GramMatrix& g) {
    return index2_frame(g, minimal_vectors(g));
}

/// Count index sets by size; t[0] is 1 exactly when the glue vector is
/// minimal.
inline TypeProfile type_profile(const Index2Frame& f) {
    TypeProfile tp;
    tp.n = f.n;
    tp.basis_pairs = f.n;
    tp.t.assign(f.n / 2 + 1, 0);
    for (std::uint32_t mask : f.index_sets)
        ++tp.t[std::size_t(__builtin_popcount(mask))];
    return tp;
}

} // namespace latidx
