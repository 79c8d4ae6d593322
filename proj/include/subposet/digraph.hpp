#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "subposet/bignum.hpp"
#include "subposet/family.hpp"

namespace subposet {

/// Directed comparability graph of a family: an arc (F, F') for every proper
/// containment F' ⊊ F, so out-neighbours are subsets and in-neighbours are
/// supersets. Components label the undirected version.
struct ComparabilityDigraph {
    Family family;
    std::vector<std::vector<std::uint32_t>> out;  // out[v]: proper subsets of v
    std::vector<std::vector<std::uint32_t>> in;   // in[v]: proper supersets of v
    std::vector<std::uint32_t> outdeg;
    std::vector<std::uint32_t> indeg;
    std::vector<std::uint32_t> comp_id;  // numbered by first vertex occurrence
    std::size_t component_count = 0;

    std::size_t arc_count() const {
        std::size_t c = 0;
        for (auto d : outdeg) c += d;
        return c;
    }
};

namespace detail {

struct Dsu {
    std::vector<std::uint32_t> parent;
    explicit Dsu(std::size_t m) : parent(m) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace detail

/// Builds arcs, degree tables and component labels. Sets are bucketed by
/// cardinality and only pairs from distinct buckets are tested, O(|F|^2)
/// worst case.
inline ComparabilityDigraph build_digraph(const Family& fam) {
    const std::size_t m = fam.size();
    ComparabilityDigraph g;
    g.family = fam;
    g.out.assign(m, {});
    g.in.assign(m, {});
    g.outdeg.assign(m, 0);
    g.indeg.assign(m, 0);

    // canonical order groups equal cardinalities into contiguous runs
    std::vector<std::pair<std::size_t, std::size_t>> buckets;  // [begin, end)
    for (std::size_t i = 0; i < m;) {
        std::size_t j = i;
        int c = fam.sets[i].count();
        while (j < m && fam.sets[j].count() == c) ++j;
        buckets.emplace_back(i, j);
        i = j;
    }

    detail::Dsu dsu(m);
    for (std::size_t bl = 0; bl < buckets.size(); ++bl) {
        for (std::size_t bu = bl + 1; bu < buckets.size(); ++bu) {
            for (std::size_t lo = buckets[bl].first; lo < buckets[bl].second; ++lo) {
                for (std::size_t hi = buckets[bu].first; hi < buckets[bu].second; ++hi) {
                    if (!fam.sets[lo].subset_of(fam.sets[hi])) continue;
                    g.out[hi].push_back(static_cast<std::uint32_t>(lo));
                    g.in[lo].push_back(static_cast<std::uint32_t>(hi));
                    dsu.unite(static_cast<std::uint32_t>(lo),
                              static_cast<std::uint32_t>(hi));
                }
            }
        }
    }
    for (std::size_t v = 0; v < m; ++v) {
        g.outdeg[v] = static_cast<std::uint32_t>(g.out[v].size());
        g.indeg[v] = static_cast<std::uint32_t>(g.in[v].size());
    }

    g.comp_id.assign(m, 0);
    std::vector<std::uint32_t> label(m, UINT32_MAX);
    for (std::size_t v = 0; v < m; ++v) {
        std::uint32_t r = dsu.find(static_cast<std::uint32_t>(v));
        if (label[r] == UINT32_MAX)
            label[r] = static_cast<std::uint32_t>(g.component_count++);
        g.comp_id[v] = label[r];
    }
    return g;
}

/// Number of k-element subfamilies totally ordered by proper containment,
/// via a path DP over the containment DAG in canonical order (never by
/// subset enumeration). k = 1 counts the members themselves.
inline BigCount count_k_chains(const Family& fam, int k) {
    if (k < 1) throw DomainError("chain length must be positive");
    if (k == 1) return BigCount(fam.size());
    ComparabilityDigraph g = build_digraph(fam);
    const std::size_t m = fam.size();
    // ending[v] = number of chains of the current length with top v
    std::vector<BigCount> ending(m, 1);
    BigCount total = 0;
    for (int t = 2; t <= k; ++t) {
        std::vector<BigCount> next(m, 0);
        for (std::size_t v = 0; v < m; ++v)
            for (std::uint32_t u : g.out[v]) next[v] += ending[u];
        ending = std::move(next);
    }
    for (std::size_t v = 0; v < m; ++v) total += ending[v];
    return total;
}

enum class FanDirection { Down, Up };

/// c(∧_s, F) = Σ_v C(d+(v), s) for Down; the dual in-degree sum counts
/// c(∨_s, F). For s = 1 both give the number of containment pairs.
inline BigCount count_fan_copies(const ComparabilityDigraph& g, int s,
                                 FanDirection direction) {
    if (s < 1) throw DomainError("fan arm count must be positive");
    BigCount total = 0;
    const auto& deg = direction == FanDirection::Down ? g.outdeg : g.indeg;
    for (auto d : deg) total += binomial(d, s);
    return total;
}

/// Canonical antichain partition: block i is the set of minimal members of
/// what is left after removing blocks 1..i-1. The number of blocks equals the
/// longest chain length.
inline std::vector<Family> antichain_partition(const Family& fam) {
    ComparabilityDigraph g = build_digraph(fam);
    const std::size_t m = fam.size();
    std::vector<int> depth(m, 1);
    int blocks = m == 0 ? 0 : 1;
    for (std::size_t v = 0; v < m; ++v) {  // canonical order topologically sorts
        for (std::uint32_t u : g.out[v]) depth[v] = std::max(depth[v], depth[u] + 1);
        blocks = std::max(blocks, depth[v]);
    }
    std::vector<Family> out(static_cast<std::size_t>(blocks));
    for (auto& b : out) b.n = fam.n;
    for (std::size_t v = 0; v < m; ++v)
        out[static_cast<std::size_t>(depth[v] - 1)].sets.push_back(fam.sets[v]);
    return out;
}

/// Length of the longest chain (0 for the empty family).
inline int longest_chain(const Family& fam) {
    return static_cast<int>(antichain_partition(fam).size());
}

}  // namespace subposet
