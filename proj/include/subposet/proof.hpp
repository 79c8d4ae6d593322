#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <unordered_set>
#include <vector>

#include "subposet/copies.hpp"
#include "subposet/digraph.hpp"
#include "subposet/family.hpp"

namespace subposet {

struct BipartiteGraph {
    std::size_t a_count = 0;
    std::size_t b_count = 0;
    std::vector<std::vector<std::uint32_t>> b_adj;  // neighbours in A per B vertex
};

namespace detail {

// Hopcroft–Karp maximum matching, B side driving the augmentation.
inline std::vector<std::int32_t> hopcroft_karp(const BipartiteGraph& g) {
    const std::int32_t NIL = -1;
    std::vector<std::int32_t> match_b(g.b_count, NIL), match_a(g.a_count, NIL);
    std::vector<std::int32_t> dist(g.b_count);
    auto bfs = [&]() {
        std::queue<std::uint32_t> q;
        bool reachable_free = false;
        for (std::uint32_t b = 0; b < g.b_count; ++b) {
            if (match_b[b] == NIL) {
                dist[b] = 0;
                q.push(b);
            } else {
                dist[b] = INT32_MAX;
            }
        }
        while (!q.empty()) {
            std::uint32_t b = q.front();
            q.pop();
            for (std::uint32_t a : g.b_adj[b]) {
                std::int32_t nb = match_a[a];
                if (nb == NIL) {
                    reachable_free = true;
                } else if (dist[static_cast<std::size_t>(nb)] == INT32_MAX) {
                    dist[static_cast<std::size_t>(nb)] = dist[b] + 1;
                    q.push(static_cast<std::uint32_t>(nb));
                }
            }
        }
        return reachable_free;
    };
    std::vector<std::uint8_t> visited;
    auto dfs = [&](auto&& self, std::uint32_t b) -> bool {
        for (std::uint32_t a : g.b_adj[b]) {
            std::int32_t nb = match_a[a];
            if (nb == NIL ||
                (dist[static_cast<std::size_t>(nb)] == dist[b] + 1 &&
                 self(self, static_cast<std::uint32_t>(nb)))) {
                match_b[b] = static_cast<std::int32_t>(a);
                match_a[a] = static_cast<std::int32_t>(b);
                return true;
            }
        }
        dist[b] = INT32_MAX;
        return false;
    };
    while (bfs()) {
        for (std::uint32_t b = 0; b < g.b_count; ++b)
            if (match_b[b] == NIL) dfs(dfs, b);
    }
    return match_b;
}

}  // namespace detail

struct AverageHallResult {
    enum class Status {
        Matched,                  // both conditions hold, matching covers B
        IsolatedVertex,           // condition 1 fails at violating_b
        AverageDegreeViolation,   // condition 2 fails at violating_b
        MatchingIncomplete,       // conditions hold yet B is uncovered (never
                                  // expected; would contradict the claim)
    };
    Status status;
    std::uint32_t violating_b = 0;
    std::vector<std::int32_t> matching;  // A index per B vertex, -1 if uncovered
};

/// Average version of Hall's theorem, run as a checkable procedure: verify
/// that no B vertex is isolated and that every x in B satisfies
/// d(x)^2 >= Σ_{y in N(x)} d(y) (exact integer arithmetic), then produce a
/// matching covering B by augmenting paths.
inline AverageHallResult average_hall(const BipartiteGraph& g) {
    AverageHallResult out{AverageHallResult::Status::Matched, 0, {}};
    std::vector<std::uint64_t> deg_a(g.a_count, 0);
    for (const auto& nb : g.b_adj)
        for (auto a : nb) ++deg_a[a];
    for (std::uint32_t b = 0; b < g.b_count; ++b) {
        if (g.b_adj[b].empty()) {
            out.status = AverageHallResult::Status::IsolatedVertex;
            out.violating_b = b;
            return out;
        }
        std::uint64_t d = g.b_adj[b].size();
        std::uint64_t neighbour_sum = 0;
        for (auto a : g.b_adj[b]) neighbour_sum += deg_a[a];
        if (d * d < neighbour_sum) {
            out.status = AverageHallResult::Status::AverageDegreeViolation;
            out.violating_b = b;
            return out;
        }
    }
    out.matching = detail::hopcroft_karp(g);
    for (std::uint32_t b = 0; b < g.b_count; ++b) {
        if (out.matching[b] < 0) {
            out.status = AverageHallResult::Status::MatchingIncomplete;
            out.violating_b = b;
            return out;
        }
    }
    return out;
}

namespace detail {

inline ComparabilityDigraph require_wedge_vee_free(const Family& fam, int k, int l) {
    if (k < 2 || l < 2) throw DomainError("k and l must be at least 2");
    ComparabilityDigraph g = build_digraph(fam);
    for (std::size_t v = 0; v < fam.size(); ++v) {
        if (static_cast<int>(g.outdeg[v]) > k - 1)
            throw DomainError("family is not wedge_k-free");
        if (static_cast<int>(g.indeg[v]) > l - 1)
            throw DomainError("family is not vee_l-free");
    }
    return g;
}

}  // namespace detail

/// Members whose weighted degree passes the problematic threshold
/// (k-1)(l-1) < (l-1) d+(F) + (k-1) d-(F). The input must be
/// {∧_k, ∨_l}-free, which is checked.
inline Family problematic_sets(const Family& fam, int k, int l) {
    ComparabilityDigraph g = detail::require_wedge_vee_free(fam, k, l);
    std::vector<SetWord> out;
    for (std::size_t v = 0; v < fam.size(); ++v) {
        long long w = static_cast<long long>(l - 1) * g.outdeg[v] +
                      static_cast<long long>(k - 1) * g.indeg[v];
        if (w > static_cast<long long>(k - 1) * (l - 1)) out.push_back(fam.sets[v]);
    }
    return make_family(fam.n, std::move(out));
}

/// The augmentation sets N(F) = { (U \ F) ∪ D : U, D in the family,
/// D ⊊ F ⊊ U }. Requires at least one superset and one subset neighbour; the
/// result has exactly d+(F) d-(F) members and avoids all U_i and D_j.
inline Family neighborhood_family(const Family& fam, SetWord f) {
    ComparabilityDigraph g = build_digraph(fam);
    std::size_t v = fam.index_of(f);
    if (g.outdeg[v] == 0 || g.indeg[v] == 0)
        throw DomainError("degenerate member: both a subset and a superset "
                          "neighbour are required");
    std::vector<SetWord> out;
    for (std::uint32_t ui : g.in[v])
        for (std::uint32_t di : g.out[v])
            out.push_back(SetWord{(fam.sets[ui].bits & ~f.bits) | fam.sets[di].bits});
    return make_family(fam.n, std::move(out));
}

struct AugmentationReport {
    Family f1;     // problematic members
    Family added;  // (∪ N(F)) \ F
    bool lemma51_ok = true;  // augmented family is {∧_{k²l²}, ∨_{k²l²}}-free
    bool lemma52_ok = true;  // |F_1| <= |added|
    std::optional<bool> g1_conditions_ok;  // average-Hall conditions, P4 runs only
    std::optional<bool> matching_ok;       // matching of G_1 covering F_1
    std::optional<SetWord> counterexample;  // violating set, when a check fails
};

/// Runs the augmentation lemmas as checks: builds F ∪ ∪N(F) over the
/// problematic members, then recomputes (a) the k²l² degree bounds, (b) the
/// counting inequality, and, for P4-free inputs, (c) the two average-Hall
/// conditions on the auxiliary bipartite graph G_1 and (d) a matching
/// covering F_1. Any failure is reported verbatim, never repaired.
inline AugmentationReport augment_and_verify(const Family& fam, int k, int l,
                                             bool require_p4_free) {
    detail::require_wedge_vee_free(fam, k, l);
    if (require_p4_free && longest_chain(fam) >= 4)
        throw DomainError("family is not P4-free");
    AugmentationReport rep;
    rep.f1 = problematic_sets(fam, k, l);

    std::vector<Family> hoods;
    std::vector<SetWord> union_sets;
    for (SetWord f : rep.f1.sets) {
        hoods.push_back(neighborhood_family(fam, f));
        for (SetWord h : hoods.back().sets) union_sets.push_back(h);
    }
    std::vector<SetWord> added_sets;
    for (SetWord h : union_sets)
        if (!fam.member(h)) added_sets.push_back(h);
    rep.added = make_family(fam.n, added_sets);

    std::vector<SetWord> g_sets = fam.sets;
    g_sets.insert(g_sets.end(), union_sets.begin(), union_sets.end());
    Family g = make_family(fam.n, std::move(g_sets));
    ComparabilityDigraph dg = build_digraph(g);
    long long bound = static_cast<long long>(k) * k * l * l - 1;
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (static_cast<long long>(dg.outdeg[v]) > bound ||
            static_cast<long long>(dg.indeg[v]) > bound) {
            rep.lemma51_ok = false;
            rep.counterexample = g.sets[v];
            break;
        }
    }
    rep.lemma52_ok = rep.f1.size() <= rep.added.size();

    if (require_p4_free) {
        BipartiteGraph g1;
        g1.a_count = rep.added.size();
        g1.b_count = rep.f1.size();
        g1.b_adj.assign(g1.b_count, {});
        for (std::size_t b = 0; b < rep.f1.size(); ++b)
            for (SetWord h : hoods[b].sets)
                if (!fam.member(h))
                    g1.b_adj[b].push_back(
                        static_cast<std::uint32_t>(rep.added.index_of(h)));
        AverageHallResult hall = average_hall(g1);
        rep.g1_conditions_ok =
            hall.status != AverageHallResult::Status::IsolatedVertex &&
            hall.status != AverageHallResult::Status::AverageDegreeViolation;
        rep.matching_ok = hall.status == AverageHallResult::Status::Matched;
        if (!*rep.g1_conditions_ok || !*rep.matching_ok)
            rep.counterexample = rep.f1.sets[hall.violating_b];
    }
    return rep;
}

struct RepairedComponent {
    std::vector<SetWord> members;   // original component, canonical order
    std::size_t edge_count = 0;     // edges of the original component; these
                                    // are what the 3/2 bound counts, against
                                    // the grown vertex count
    bool is_s_component = false;
    std::optional<SetWord> added;

    std::size_t repaired_size() const { return members.size() + (added ? 1 : 0); }
};

struct RepairReport {
    Family repaired;
    std::vector<RepairedComponent> components;
};

/// Finds every component isomorphic to the 5-vertex, 8-edge pattern
/// a, b < v < d, e and adds one set strictly between the canonical-least
/// lower and upper members (never the middle one), growing the component to
/// 6 vertices. The result stays {∧_5, ∨_5}-free and every component's
/// original edge count is at most (3/2) times its grown size.
inline RepairReport s_component_repair(const Family& fam) {
    ComparabilityDigraph g = detail::require_wedge_vee_free(fam, 4, 4);
    RepairReport rep;
    std::vector<std::vector<std::uint32_t>> comps(g.component_count);
    for (std::size_t v = 0; v < fam.size(); ++v)
        comps[g.comp_id[v]].push_back(static_cast<std::uint32_t>(v));
    std::vector<SetWord> additions;
    for (const auto& comp : comps) {
        RepairedComponent rc;
        for (auto v : comp) rc.members.push_back(fam.sets[v]);
        for (auto v : comp) rc.edge_count += g.outdeg[v];
        if (comp.size() == 5) {
            std::uint32_t middle = UINT32_MAX;
            int lowers = 0, uppers = 0;
            for (auto v : comp) {
                if (g.outdeg[v] == 2 && g.indeg[v] == 2) middle = v;
                if (g.outdeg[v] == 0 && g.indeg[v] == 3) ++lowers;
                if (g.outdeg[v] == 3 && g.indeg[v] == 0) ++uppers;
            }
            if (middle != UINT32_MAX && lowers == 2 && uppers == 2) {
                rc.is_s_component = true;
                SetWord v_set = fam.sets[middle];
                // canonical-least lower and upper members of the component
                SetWord lower{}, upper{};
                bool have_lower = false, have_upper = false;
                for (auto u : g.out[middle]) {
                    if (!have_lower || canonical_less(fam.sets[u], lower)) {
                        lower = fam.sets[u];
                        have_lower = true;
                    }
                }
                for (auto u : g.in[middle]) {
                    if (!have_upper || canonical_less(fam.sets[u], upper)) {
                        upper = fam.sets[u];
                        have_upper = true;
                    }
                }
                // smallest set strictly between: add one element of D \ A,
                // lowest element first, skipping the middle set
                std::optional<SetWord> pick;
                for (std::uint64_t m = upper.bits & ~lower.bits; m;) {
                    int e = std::countr_zero(m);
                    m &= m - 1;
                    SetWord cand{lower.bits | (std::uint64_t{1} << e)};
                    if (cand == v_set || cand == upper) continue;
                    pick = cand;
                    break;
                }
                if (!pick)
                    throw DomainError(
                        "no set available strictly between the component's "
                        "lower and upper members other than its middle");
                rc.added = *pick;
                additions.push_back(*pick);
            }
        }
        rep.components.push_back(std::move(rc));
    }
    std::vector<SetWord> all = fam.sets;
    all.insert(all.end(), additions.begin(), additions.end());
    rep.repaired = make_family(fam.n, std::move(all));
    return rep;
}

struct TopLayerReport {
    Family top;               // members with out-degree exactly k-1
    bool indegrees_zero = true;
    bool independent = true;
    bool edge_bound = true;   // (k-1)|A| <= (l-1)(|F|-|A|)
    BigCount fan_count = 0;   // c(∧_{k-1}, F), equals |A|
};

/// The top-layer argument as a check: collect A = {v : d+(v) = k-1} and
/// verify that every member of A has in-degree 0, that A is independent, and
/// that (k-1)|A| <= (l-1)(|F|-|A|). Also reports c(∧_{k-1}, F) = |A|.
inline TopLayerReport top_layer_bound_check(const Family& fam, int k, int l) {
    ComparabilityDigraph g = detail::require_wedge_vee_free(fam, k, l);
    TopLayerReport rep;
    std::vector<SetWord> top;
    std::vector<std::size_t> top_idx;
    for (std::size_t v = 0; v < fam.size(); ++v) {
        if (static_cast<int>(g.outdeg[v]) == k - 1) {
            top.push_back(fam.sets[v]);
            top_idx.push_back(v);
        }
    }
    rep.top = make_family(fam.n, top);
    for (std::size_t v : top_idx)
        if (g.indeg[v] != 0) rep.indegrees_zero = false;
    for (std::size_t i = 0; i < top_idx.size() && rep.independent; ++i)
        for (std::size_t j = i + 1; j < top_idx.size() && rep.independent; ++j)
            if (fam.sets[top_idx[i]].proper_subset_of(fam.sets[top_idx[j]]) ||
                fam.sets[top_idx[j]].proper_subset_of(fam.sets[top_idx[i]]))
                rep.independent = false;
    long long a = static_cast<long long>(rep.top.size());
    long long rest = static_cast<long long>(fam.size()) - a;
    rep.edge_bound = static_cast<long long>(k - 1) * a <=
                     static_cast<long long>(l - 1) * rest;
    rep.fan_count = count_fan_copies(g, k - 1, FanDirection::Down);
    return rep;
}

/// Seeded random {∧_k, ∨_l, P4}-free family: propose random sets at the three
/// middle sizes ⌊n/2⌋-1 .. ⌊n/2⌋+1 and accept a proposal iff freeness is
/// preserved. Same seed, same family.
inline Family random_free_family(int n, int k, int l, std::uint64_t seed,
                                 int proposals = 200) {
    if (n < 2 || n > 64) throw DomainError("n must be in 2..64");
    if (k < 2 || l < 2) throw DomainError("k and l must be at least 2");
    std::mt19937_64 rng(seed);
    std::vector<SetWord> members;
    std::vector<int> outdeg, indeg;
    int sizes[3] = {std::max(0, n / 2 - 1), n / 2, std::min(n, n / 2 + 1)};
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    for (int t = 0; t < proposals; ++t) {
        int want = sizes[rng() % 3];
        // partial Fisher-Yates draw of `want` distinct elements
        SetWord cand;
        for (int i = 0; i < want; ++i) {
            std::size_t j = static_cast<std::size_t>(i) +
                            rng() % static_cast<std::uint64_t>(n - i);
            std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
            cand.bits |= std::uint64_t{1} << (pool[static_cast<std::size_t>(i)] - 1);
        }
        bool duplicate = false;
        int cand_out = 0, cand_in = 0;
        bool ok = true;
        for (std::size_t v = 0; v < members.size() && ok; ++v) {
            if (members[v] == cand) {
                duplicate = true;
                break;
            }
            if (members[v].proper_subset_of(cand)) {
                ++cand_out;
                if (cand_out > k - 1 || indeg[v] + 1 > l - 1) ok = false;
            } else if (cand.proper_subset_of(members[v])) {
                ++cand_in;
                if (cand_in > l - 1 || outdeg[v] + 1 > k - 1) ok = false;
            }
        }
        if (duplicate || !ok) continue;
        for (std::size_t v = 0; v < members.size(); ++v) {
            if (members[v].proper_subset_of(cand)) ++indeg[v];
            if (cand.proper_subset_of(members[v])) ++outdeg[v];
        }
        members.push_back(cand);
        outdeg.push_back(cand_out);
        indeg.push_back(cand_in);
    }
    return make_family(n, std::move(members));
}

}  // namespace subposet
