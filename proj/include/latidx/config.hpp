#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "errors.hpp"

// The combinatorial model of index-set families: weights, the similarity
// graph on sets sharing a weight-2 index, the equivalence graph on indices,
// the admissibility predicates c1..c4 and the closed-form per-type bounds
// T1/T2. Index sets are bitmasks over {1..n}, bit i-1 <-> index i; n <= 31.

namespace latidx {

using SetMask = std::uint32_t;

inline int set_size(SetMask m) { return std::popcount(m); }

/// A subset of {1..n} with the type normalization |I| <= n/2, and 1 in I at
/// |I| = n/2. The empty set (type 0) is a legal member.
struct IndexSet {
    int n = 0;
    SetMask bits = 0;

    IndexSet() = default;
    IndexSet(int n_, SetMask bits_) : n(n_), bits(bits_) {
        if (n < 1 || n > 31) throw out_of_range_error("IndexSet: n out of range");
        if (bits >> n) throw out_of_range_error("IndexSet: member outside {1..n}");
        const int p = set_size(bits);
        if (2 * p > n || (2 * p == n && p > 0 && !(bits & 1u)))
            throw out_of_range_error("IndexSet: violates the |I| <= n/2 normalization");
    }
};

/// Distinct index sets over a common ground set {1..n}.
struct IndexSetFamily {
    int n = 0;
    std::vector<SetMask> sets;

    IndexSetFamily() = default;
    IndexSetFamily(int n_, std::vector<SetMask> sets_) : n(n_), sets(std::move(sets_)) {
        for (std::size_t i = 0; i < sets.size(); ++i) {
            IndexSet check(n, sets[i]); // validates range and normalization
            for (std::size_t j = i + 1; j < sets.size(); ++j)
                if (sets[i] == sets[j])
                    throw out_of_range_error("IndexSetFamily: duplicate set");
        }
    }
    std::size_t size() const { return sets.size(); }
};

/// Per-index weights of a family (or subfamily): w(i) = number of sets
/// containing i, the strata W_k of indices of weight exactly k, their
/// even/odd unions, and m = |union of the sets|.
struct WeightProfile {
    std::vector<int> w;             // w[i-1], 1-based indices
    std::vector<SetMask> wk;        // wk[k] = indices of weight exactly k, k <= r
    SetMask evens = 0, odds = 0;    // weights >= 2 even / odd (W_2 u W_4 u ..., W_1 u W_3 ...)
    SetMask support = 0;            // union of the sets
    int m = 0;

    SetMask w2() const { return wk.size() > 2 ? wk[2] : 0; }
    SetMask w3() const { return wk.size() > 3 ? wk[3] : 0; }
    SetMask w4() const { return wk.size() > 4 ? wk[4] : 0; }
};

template <typename SetRange>
inline WeightProfile weights_of(int n, const SetRange& sets) {
    WeightProfile p;
    p.w.assign(n, 0);
    std::size_t r = 0;
    for (SetMask s : sets) {
        ++r;
        p.support |= s;
        for (int i = 0; i < n; ++i)
            if (s & (SetMask(1) << i)) ++p.w[i];
    }
    p.wk.assign(r + 1, 0);
    for (int i = 0; i < n; ++i) {
        int wi = p.w[i];
        if (wi == 0) continue;
        p.wk[wi] |= (SetMask(1) << i);
        if (wi >= 2 && wi % 2 == 0) p.evens |= (SetMask(1) << i);
        if (wi % 2 == 1) p.odds |= (SetMask(1) << i);
    }
    p.m = set_size(p.support);
    return p;
}

inline WeightProfile weights(const IndexSetFamily& fam) {
    return weights_of(fam.n, fam.sets);
}

/// Adjacency of the similarity relation inside a subfamily: sets are related
/// when they share an index of weight two. Returned as one adjacency mask per
/// member (r <= 31).
inline std::vector<SetMask> sim_graph(const std::vector<SetMask>& sets,
                                      const WeightProfile& p) {
    const std::size_t r = sets.size();
    std::vector<SetMask> adj(r, 0);
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = a + 1; b < r; ++b)
            if (sets[a] & sets[b] & p.w2()) {
                adj[a] |= (SetMask(1) << b);
                adj[b] |= (SetMask(1) << a);
            }
    return adj;
}

namespace graph_shape {

inline bool is_triangle(const std::vector<SetMask>& adj) {
    return adj.size() == 3 && set_size(adj[0]) == 2 && set_size(adj[1]) == 2 &&
           set_size(adj[2]) == 2;
}

/// Exactly the 5-cycle: five vertices, all of degree two, connected.
inline bool is_pentagon(const std::vector<SetMask>& adj) {
    if (adj.size() != 5) return false;
    for (SetMask a : adj)
        if (set_size(a) != 2) return false;
    SetMask seen = 1;
    for (int step = 0; step < 5; ++step)
        for (std::size_t v = 0; v < 5; ++v)
            if (seen & (SetMask(1) << v)) seen |= adj[v];
    return set_size(seen) == 5;
}

/// Star of valency three: one center adjacent to the other three vertices,
/// no other edges.
inline bool is_three_star(const std::vector<SetMask>& adj) {
    if (adj.size() != 4) return false;
    int centers = 0, leaves = 0;
    for (SetMask a : adj) {
        if (set_size(a) == 3) ++centers;
        else if (set_size(a) == 1) ++leaves;
        else return false;
    }
    return centers == 1 && leaves == 3;
}

/// Path on three vertices (exactly two edges).
inline bool is_three_path(const std::vector<SetMask>& adj) {
    if (adj.size() != 3) return false;
    int total = set_size(adj[0]) + set_size(adj[1]) + set_size(adj[2]);
    return total == 4; // degree sequence 1,1,2
}

} // namespace graph_shape

/// At most four singletons in the family.
inline bool c1_type1(const IndexSetFamily& fam, int /*n*/) {
    int singles = 0;
    for (SetMask s : fam.sets)
        if (set_size(s) == 1) ++singles;
    return singles <= 4;
}

/// Weight-one rule for a subfamily of r in {3,4,5} sets: when every set has
/// an index of weight one (and, for r = 3, some index has weight three), the
/// weight-one index of each set must be unique, r must be at most 4, and the
/// heavy strata collapse: |W3| = 1 for r = 3, W3 = W4 = empty for r = 4.
inline bool c2_weight1(const std::vector<SetMask>& sub, int n) {
    const std::size_t r = sub.size();
    if (r < 3 || r > 5) throw out_of_range_error("c2_weight1: subfamily size must be 3..5");
    WeightProfile p = weights_of(n, sub);
    const SetMask w1 = p.wk.size() > 1 ? p.wk[1] : 0;
    for (SetMask s : sub)
        if (!(s & w1)) return true; // hypothesis off: some set has no weight-1 index
    if (r == 3 && p.w3() == 0) return true; // hypothesis off for triples
    if (r == 5) return false;
    for (SetMask s : sub)
        if (set_size(s & w1) != 1) return false; // weight-1 index not unique
    if (r == 3) return set_size(p.w3()) == 1;
    return p.w3() == 0 && p.w4() == 0;
}

/// Cycle/star rule: when the similarity graph of the subfamily is a triangle,
/// a pentagon, or a star of valency three, the ground set cannot be larger
/// than the support plus one; at n = m+1 the weight-two stratum is pinned.
inline bool c3_cycle_star(const std::vector<SetMask>& sub, int n) {
    const std::size_t r = sub.size();
    if (r < 3 || r > 5) throw out_of_range_error("c3_cycle_star: subfamily size must be 3..5");
    WeightProfile p = weights_of(n, sub);
    auto adj = sim_graph(sub, p);
    bool cycle = graph_shape::is_triangle(adj) || graph_shape::is_pentagon(adj);
    bool star = graph_shape::is_three_star(adj);
    if (!cycle && !star) return true;
    if (n != p.m && n != p.m + 1) return false;
    if (n == p.m + 1) {
        int need = cycle ? int(r) : 3;
        if (set_size(p.w2()) != need) return false;
    }
    return true;
}

/// Triple rule for equal-size sets of type p >= 3: when the three sets share
/// an index (and (p,n) is not the excluded (4,8) case), some set must have no
/// weight-one index and the similarity graph must be a path.
inline bool c4_triple(const std::vector<SetMask>& sub, int n) {
    if (sub.size() != 3) throw out_of_range_error("c4_triple: need exactly three sets");
    const int psz = set_size(sub[0]);
    if (psz < 3 || set_size(sub[1]) != psz || set_size(sub[2]) != psz)
        throw out_of_range_error("c4_triple: sets must share a size p >= 3");
    if (psz == 4 && n == 8) return true; // excluded case
    if (!(sub[0] & sub[1] & sub[2])) return true; // W3 empty: hypothesis off
    WeightProfile p = weights_of(n, sub);
    const SetMask w1 = p.wk.size() > 1 ? p.wk[1] : 0;
    bool some_without = false;
    for (SetMask s : sub)
        if (!(s & w1)) { some_without = true; break; }
    if (!some_without) return false;
    return graph_shape::is_three_path(sim_graph(sub, p));
}

namespace detail {

/// Applies c2/c3 to every subfamily of size 3..5 containing the set at
/// position `pivot` (or all subfamilies when pivot = npos), and c4 to every
/// equal-size triple of size >= 3 under the same filter.
inline bool subfamilies_pass(const IndexSetFamily& fam, std::size_t pivot) {
    const std::size_t r = fam.size();
    const bool all = pivot == std::size_t(-1);
    std::vector<std::size_t> idx;
    std::vector<SetMask> sub;
    bool ok = true;

    auto run = [&]() {
        sub.clear();
        for (std::size_t i : idx) sub.push_back(fam.sets[i]);
        if (!c2_weight1(sub, fam.n) || !c3_cycle_star(sub, fam.n)) { ok = false; return; }
        if (sub.size() == 3) {
            int p0 = set_size(sub[0]);
            if (p0 >= 3 && set_size(sub[1]) == p0 && set_size(sub[2]) == p0)
                if (!c4_triple(sub, fam.n)) ok = false;
        }
    };

    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                            std::size_t want) {
        if (!ok) return;
        if (idx.size() == want) {
            if (all || std::find(idx.begin(), idx.end(), pivot) != idx.end()) run();
            return;
        }
        for (std::size_t i = start; i < r && ok; ++i) {
            if (r - i < want - idx.size()) break;
            idx.push_back(i);
            rec(i + 1, want);
            idx.pop_back();
        }
    };

    for (std::size_t want = 3; want <= 5 && want <= r && ok; ++want) rec(0, want);
    return ok;
}

} // namespace detail

/// Full admissibility: c1, plus c2/c3 on every subfamily of size 3..5, plus
/// c4 on every equal-size triple. Hereditary by construction: any subfamily
/// of an admissible family is admissible.
inline bool admissible(const IndexSetFamily& fam, int n) {
    if (fam.n != n) throw out_of_range_error("admissible: ground-set mismatch");
    if (!c1_type1(fam, n)) return false;
    return detail::subfamilies_pass(fam, std::size_t(-1));
}

/// Incremental re-check after appending one set: only subfamilies containing
/// the new member need a fresh look.
inline bool admissible_with_last(const IndexSetFamily& fam) {
    if (!c1_type1(fam, fam.n)) return false;
    if (fam.size() < 3) return true;
    return detail::subfamilies_pass(fam, fam.size() - 1);
}

// ---------------------------------------------------------------------------
// Closed-form per-type bounds.

/// Largest admissible cardinality of a family of p-sets containing no
/// similarity 3-cycle.
inline long bound_T1(int p, int n) {
    if (p < 3 || n < 2 * p) throw out_of_range_error("bound_T1: need p >= 3 and n >= 2p");
    if (p == 4 && n == 8) return 6; // sharper special bound for type n/2 at n = 8
    if (p >= 4 && n >= 2 * p + 2) return p + 6;
    if ((p >= 4 && n == 2 * p + 1) || (p == 3 && n >= 8)) return p + 5;
    if (p == 3 && n == 7) return 7;
    if (p != 4 && n == 2 * p) return p + 1;
    throw out_of_range_error("bound_T1: unreachable case");
}

/// Largest cardinality when the family does contain a similarity 3-cycle;
/// empty when the dimension makes such cycles impossible.
inline std::optional<long> bound_T2(int p, int n) {
    if (p < 3) throw out_of_range_error("bound_T2: need p >= 3");
    if (p == 4 && n == 8) throw out_of_range_error("bound_T2: (4,8) excluded");
    if (n < 2 * p + 1 || n > 3 * p - 2) return std::nullopt;
    if (n == 3 * p - 2 && p >= 4) return p + 2;
    return n;
}

/// Bound on the number of minimal vectors of a given type p >= 3: the larger
/// of the cycle-free and cycle regimes wherever cycles can occur at all.
inline long bound_tp(int p, int n) {
    if (p < 3 || 2 * p > n) throw out_of_range_error("bound_tp: need 3 <= p <= n/2");
    long t1 = bound_T1(p, n);
    // cycles require (n+2)/3 <= p <= (n-1)/2
    if (3 * p < n + 2 || 2 * p > n - 1) return t1;
    auto t2 = bound_T2(p, n);
    if (!t2) return t1;
    return std::max(t1, *t2);
}

// ---------------------------------------------------------------------------
// Equivalence graph on indices: i == j when the 2-set {i,j} is a member.

struct EquivGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges; // 1-based vertex labels, i < j
};

inline EquivGraph equiv_graph(const IndexSetFamily& fam) {
    EquivGraph g;
    g.n = fam.n;
    for (SetMask s : fam.sets) {
        if (set_size(s) != 2) continue;
        int i = std::countr_zero(s);
        SetMask rest = s & (s - 1);
        int j = std::countr_zero(rest);
        g.edges.emplace_back(i + 1, j + 1);
    }
    return g;
}

} // namespace latidx
