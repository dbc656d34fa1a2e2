#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "config.hpp"
#include "errors.hpp"

// Branch-and-bound enumeration of maximum admissible families and exhaustive
// classification of the maximal equivalence graphs. All searches extend in
// canonical (ascending mask) order, so identical inputs explore identical
// trees: node counts and witnesses are reproducible.

namespace latidx {

enum class CycleRegime {
    Any,     // no constraint on similarity 3-cycles
    Forbid,  // reject any triple forming a similarity 3-cycle
    Require, // only families containing at least one such triple count
};

enum class SearchStatus {
    Exhausted,      // the tree was fully explored: max_size is certified
    BudgetExceeded, // partial exploration: max_size is only a lower bound
};

struct SearchBudget {
    std::uint64_t max_nodes = 200'000'000;
};

struct SearchReport {
    int p = 0;
    int n = 0;
    CycleRegime regime = CycleRegime::Any;
    long max_size = 0;
    std::vector<SetMask> witness;
    std::uint64_t nodes = 0;
    SearchStatus status = SearchStatus::Exhausted;
    double seconds = 0.0;
    bool certified() const { return status == SearchStatus::Exhausted; }
};

namespace detail {

/// Similarity 3-cycle test for a bare triple: every pairwise intersection
/// must survive outside the third set.
inline bool triple_is_cycle(SetMask a, SetMask b, SetMask c) {
    return ((a & b) & ~c) && ((a & c) & ~b) && ((b & c) & ~a);
}

inline bool creates_cycle(const std::vector<SetMask>& chosen, SetMask x) {
    for (std::size_t i = 0; i < chosen.size(); ++i)
        for (std::size_t j = i + 1; j < chosen.size(); ++j)
            if (triple_is_cycle(chosen[i], chosen[j], x)) return true;
    return false;
}

/// Raw incremental admissibility: c2/c3 on subfamilies of size 3..5 that
/// contain the last member, c4 on equal-size triples likewise. The caller
/// handles c1 (singleton budget) itself.
inline bool last_member_admissible(int n, const std::vector<SetMask>& fam) {
    const std::size_t r = fam.size();
    if (r < 3) return true;
    const std::size_t last = r - 1;
    std::vector<std::size_t> idx;
    std::vector<SetMask> sub;
    bool ok = true;

    auto run = [&]() {
        sub.clear();
        for (std::size_t i : idx) sub.push_back(fam[i]);
        sub.push_back(fam[last]);
        if (!c2_weight1(sub, n) || !c3_cycle_star(sub, n)) { ok = false; return; }
        if (sub.size() == 3) {
            int p0 = set_size(sub[0]);
            if (p0 >= 3 && set_size(sub[1]) == p0 && set_size(sub[2]) == p0)
                if (!c4_triple(sub, n)) ok = false;
        }
    };

    // choose 2..4 earlier members to accompany the new one
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start,
                                                            std::size_t want) {
        if (!ok) return;
        if (idx.size() == want) { run(); return; }
        for (std::size_t i = start; i < last && ok; ++i) {
            if (last - i < want - idx.size()) break;
            idx.push_back(i);
            rec(i + 1, want);
            idx.pop_back();
        }
    };
    for (std::size_t want = 2; want <= 4 && want < r && ok; ++want) rec(0, want);
    return ok;
}

struct FamilySearchCore {
    int n = 0;
    std::vector<SetMask> universe;
    CycleRegime regime = CycleRegime::Any;
    std::uint64_t max_nodes = 0;
    bool fix_first = false; // symmetry breaking: root must pick universe[0]

    std::uint64_t nodes = 0;
    bool budget_hit = false;
    long best = 0;
    std::vector<SetMask> best_witness;
    std::vector<SetMask> chosen;
    int cycles_present = 0; // count of cycle triples in `chosen`

    bool counts() const {
        switch (regime) {
        case CycleRegime::Require: return cycles_present > 0;
        default: return true;
        }
    }

    void consider_incumbent() {
        if (!counts()) return;
        if (long(chosen.size()) > best) {
            best = long(chosen.size());
            best_witness = chosen;
        }
    }

    void dfs(std::size_t start) {
        if (budget_hit) return;
        consider_incumbent();
        for (std::size_t i = start; i < universe.size(); ++i) {
            if (budget_hit) return;
            if (long(chosen.size()) + long(universe.size() - i) <= best)
                break; // even taking everything left cannot beat the incumbent
            if (fix_first && chosen.empty() && i > 0) break;
            SetMask x = universe[i];
            int new_cycles = 0;
            for (std::size_t a = 0; a < chosen.size(); ++a)
                for (std::size_t b = a + 1; b < chosen.size(); ++b)
                    if (triple_is_cycle(chosen[a], chosen[b], x)) ++new_cycles;
            if (regime == CycleRegime::Forbid && new_cycles > 0) continue;
            chosen.push_back(x);
            if (++nodes > max_nodes) {
                budget_hit = true;
                chosen.pop_back();
                return;
            }
            if (last_member_admissible(n, chosen)) {
                cycles_present += new_cycles;
                dfs(i + 1);
                cycles_present -= new_cycles;
            }
            chosen.pop_back();
        }
    }
};

inline std::vector<SetMask> psubset_universe(int p, int n) {
    std::vector<SetMask> u;
    const SetMask full = (SetMask(1) << n) - 1;
    for (SetMask m = 0; m <= full; ++m) {
        if (set_size(m) != p) continue;
        if (2 * p == n && !(m & 1u)) continue; // type n/2 normalization: 1 in I
        u.push_back(m);
    }
    return u;
}

} // namespace detail

/// Maximum admissible family of p-subsets of {1..n} under the chosen cycle
/// regime. Exhaustive unless the node budget runs out, in which case the
/// result is reported as a lower bound, never as a false optimum.
inline SearchReport max_family(int p, int n, CycleRegime regime,
                               SearchBudget budget = {}) {
    if (p < 3 || 2 * p > n) throw out_of_range_error("max_family: need 3 <= p <= n/2");
    if (n > 31) throw out_of_range_error("max_family: n out of range");

    auto t0 = std::chrono::steady_clock::now();
    detail::FamilySearchCore core;
    core.n = n;
    core.universe = detail::psubset_universe(p, n);
    core.regime = regime;
    core.max_nodes = budget.max_nodes;
    // label symmetry: some witness of the maximum contains {1..p} (it is the
    // smallest mask, so it comes first); for the type-n/2 universe the
    // relabeling argument holds with index 1 fixed
    core.fix_first = true;

    core.dfs(0);

    SearchReport rep;
    rep.p = p;
    rep.n = n;
    rep.regime = regime;
    rep.max_size = core.best;
    rep.witness = core.best_witness;
    rep.nodes = core.nodes;
    rep.status = core.budget_hit ? SearchStatus::BudgetExceeded : SearchStatus::Exhausted;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline SearchReport max_family(int p, int n, bool forbid_cycles,
                               SearchBudget budget = {}) {
    return max_family(p, n, forbid_cycles ? CycleRegime::Forbid : CycleRegime::Require,
                      budget);
}

/// Type n/2 special case at n = 8: maximum admissible family of 4-subsets of
/// {1..8} containing index 1, cycles allowed.
inline SearchReport verify_t4_n8(SearchBudget budget = {}) {
    return max_family(4, 8, CycleRegime::Any, budget);
}

// ---------------------------------------------------------------------------
// Equivalence graph classification.

/// A graph on {1..n} in canonical form: the lexicographically smallest sorted
/// edge list over all vertex relabelings.
struct CanonicalGraph {
    std::vector<std::pair<int, int>> edges;
    bool operator==(const CanonicalGraph& o) const { return edges == o.edges; }
    bool operator<(const CanonicalGraph& o) const { return edges < o.edges; }
};

/// Canonicalize by brute force over vertex permutations, restricted to the
/// vertices that actually occur (isolated vertices do not affect the form).
inline CanonicalGraph canonical_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> verts;
    for (auto& [a, b] : edges) {
        verts.push_back(a);
        verts.push_back(b);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    const int k = int(verts.size());
    std::vector<int> pos(n + 1, -1);
    for (int i = 0; i < k; ++i) pos[verts[i]] = i;

    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    CanonicalGraph best;
    bool first = true;
    do {
        std::vector<std::pair<int, int>> mapped;
        mapped.reserve(edges.size());
        for (auto& [a, b] : edges) {
            int x = perm[pos[a]] + 1, y = perm[pos[b]] + 1;
            if (x > y) std::swap(x, y);
            mapped.emplace_back(x, y);
        }
        std::sort(mapped.begin(), mapped.end());
        if (first || mapped < best.edges) {
            best.edges = std::move(mapped);
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

struct ClassifyReport {
    int n = 0;
    std::vector<CanonicalGraph> maximal; // distinct canonical forms, sorted
    std::uint64_t nodes = 0;
    double seconds = 0.0;
};

/// Exhaustively enumerate admissible families of 2-subsets of {1..n} and
/// collect the maximal ones (no single edge can be added) up to relabeling.
inline ClassifyReport classify_equiv_graphs(int n) {
    if (n < 5 || n > 9) throw out_of_range_error("classify_equiv_graphs: need 5 <= n <= 9");
    auto t0 = std::chrono::steady_clock::now();

    std::vector<SetMask> universe = detail::psubset_universe(2, n);
    std::vector<SetMask> chosen;
    std::vector<CanonicalGraph> found;
    std::uint64_t nodes = 0;

    auto extendable_by = [&](SetMask x) {
        chosen.push_back(x);
        bool ok = detail::last_member_admissible(n, chosen);
        chosen.pop_back();
        return ok;
    };

    std::function<void(std::size_t)> dfs = [&](std::size_t start) {
        bool extendable_above = false;
        for (std::size_t i = start; i < universe.size(); ++i) {
            if (!extendable_by(universe[i])) continue;
            extendable_above = true;
            chosen.push_back(universe[i]);
            ++nodes;
            dfs(i + 1);
            chosen.pop_back();
        }
        if (extendable_above || chosen.empty()) return;
        // no admissible extension with a larger edge; confirm maximality
        // against the smaller ones too
        for (std::size_t i = 0; i < start; ++i) {
            if (std::find(chosen.begin(), chosen.end(), universe[i]) != chosen.end())
                continue;
            if (extendable_by(universe[i])) return; // extendable: not maximal
        }
        std::vector<std::pair<int, int>> edges;
        for (SetMask s : chosen) {
            int a = std::countr_zero(s);
            int b = std::countr_zero(s & (s - 1));
            edges.emplace_back(a + 1, b + 1);
        }
        found.push_back(canonical_graph(n, edges));
    };
    dfs(0);

    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());

    ClassifyReport rep;
    rep.n = n;
    rep.maximal = std::move(found);
    rep.nodes = nodes;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ---------------------------------------------------------------------------
// Mixed singleton / 2-set search (the t1 + t2 maximum).

struct MixedReport {
    int n = 0;
    long max_total = 0; // maximum of t1 + t2
    // every family attaining the maximum, as (singleton mask targets, edges)
    struct Attainer {
        int t1 = 0, t2 = 0;
        SetMask singletons = 0;
        std::vector<SetMask> edges;
    };
    std::vector<Attainer> attainers;
    std::uint64_t nodes = 0;
    double seconds = 0.0;
};

/// Maximize t1 + t2 over admissible families mixing singletons and 2-sets;
/// collects every family attaining the maximum.
inline MixedReport max_mixed_t1_t2(int n) {
    if (n < 5 || n > 9) throw out_of_range_error("max_mixed_t1_t2: need 5 <= n <= 9");
    auto t0 = std::chrono::steady_clock::now();

    std::vector<SetMask> universe = detail::psubset_universe(1, n);
    for (SetMask s : detail::psubset_universe(2, n)) universe.push_back(s);

    MixedReport rep;
    rep.n = n;
    std::vector<SetMask> chosen;
    int singles = 0;

    std::function<void(std::size_t)> dfs = [&](std::size_t start) {
        long total = long(chosen.size());
        if (total > rep.max_total) {
            rep.max_total = total;
            rep.attainers.clear();
        }
        if (total == rep.max_total) {
            MixedReport::Attainer at;
            for (SetMask s : chosen) {
                if (set_size(s) == 1) { ++at.t1; at.singletons |= s; }
                else { ++at.t2; at.edges.push_back(s); }
            }
            rep.attainers.push_back(std::move(at));
        }
        for (std::size_t i = start; i < universe.size(); ++i) {
            SetMask x = universe[i];
            if (set_size(x) == 1 && singles == 4) continue; // c1 cap
            chosen.push_back(x);
            ++rep.nodes;
            if (detail::last_member_admissible(n, chosen)) {
                if (set_size(x) == 1) ++singles;
                dfs(i + 1);
                if (set_size(x) == 1) --singles;
            }
            chosen.pop_back();
        }
    };
    dfs(0);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace latidx
