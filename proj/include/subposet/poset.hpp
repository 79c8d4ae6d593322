#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subposet/digraph.hpp"
#include "subposet/errors.hpp"

namespace subposet {

/// Finite strict partial order on elements 0..size-1, stored as bitmask rows
/// of the full (transitively closed) relation.
struct Poset {
    int size = 0;
    std::vector<std::uint64_t> above;  // above[i]: mask of j with i <_P j
    std::vector<std::uint64_t> below;  // below[i]: mask of j with j <_P i

    bool less(int i, int j) const { return above[i] >> j & 1u; }
    bool comparable(int i, int j) const { return less(i, j) || less(j, i); }
};

namespace detail {

inline Poset poset_from_above(int size, std::vector<std::uint64_t> above) {
    // transitive closure, then irreflexivity = no directed cycle
    for (bool changed = true; changed;) {
        changed = false;
        for (int i = 0; i < size; ++i) {
            std::uint64_t acc = above[i];
            for (std::uint64_t m = above[i]; m;) {
                int j = std::countr_zero(m);
                m &= m - 1;
                acc |= above[j];
            }
            if (acc != above[i]) {
                above[i] = acc;
                changed = true;
            }
        }
    }
    for (int i = 0; i < size; ++i)
        if (above[i] >> i & 1u) throw ParseError("cover list contains a cycle");
    Poset p;
    p.size = size;
    p.above = std::move(above);
    p.below.assign(size, 0);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            if (p.less(i, j)) p.below[j] |= std::uint64_t{1} << i;
    return p;
}

inline int parse_positive(std::string_view s, const char* what) {
    if (s.empty()) throw ParseError(std::string("missing ") + what);
    long v = 0;
    for (char c : s) {
        if (c < '0' || c > '9')
            throw ParseError(std::string("malformed ") + what);
        v = v * 10 + (c - '0');
        if (v > 64) throw ParseError(std::string(what) + " out of range 1..64");
    }
    if (v < 1) throw ParseError(std::string(what) + " must be at least 1");
    return static_cast<int>(v);
}

}  // namespace detail

/// Complete multilevel poset K_{a_1,...,a_s}: every level-j element below
/// every level-j' element for j < j'. Levels are listed bottom first.
inline Poset levels_poset(const std::vector<int>& level_sizes) {
    long long total = 0;
    for (int a : level_sizes) {
        if (a < 1) throw ParseError("level sizes must be positive");
        total += a;
    }
    if (level_sizes.empty()) throw ParseError("at least one level required");
    if (total > 64) throw ParseError("poset too large (more than 64 elements)");
    int size = static_cast<int>(total);
    std::vector<std::uint64_t> above(size, 0);
    int offset = 0;
    for (std::size_t lv = 0; lv < level_sizes.size(); ++lv) {
        int upper_begin = offset + level_sizes[lv];
        std::uint64_t upper_mask = 0;
        for (int j = upper_begin; j < size; ++j) upper_mask |= std::uint64_t{1} << j;
        for (int i = offset; i < upper_begin; ++i) above[i] = upper_mask;
        offset = upper_begin;
    }
    return detail::poset_from_above(size, std::move(above));
}

/// Totally ordered pattern P_k.
inline Poset chain_poset(int k) {
    return levels_poset(std::vector<int>(static_cast<std::size_t>(k), 1));
}

/// ∧_r: one apex above r pairwise-incomparable elements.
inline Poset wedge_poset(int r) { return levels_poset({r, 1}); }

/// ∨_r: one element below r pairwise-incomparable elements.
inline Poset vee_poset(int r) { return levels_poset({1, r}); }

/// Builds a poset from semicolon-separated cover pairs `i<j` over elements
/// 1..size (size inferred from the largest element); the relation is
/// transitively closed on load.
inline Poset custom_poset(std::string_view covers) {
    std::vector<std::pair<int, int>> pairs;
    int size = 0;
    std::size_t pos = 0;
    while (pos <= covers.size()) {
        std::size_t semi = covers.find(';', pos);
        std::string_view item = covers.substr(
            pos, semi == std::string_view::npos ? covers.size() - pos : semi - pos);
        pos = semi == std::string_view::npos ? covers.size() + 1 : semi + 1;
        if (item.empty()) continue;
        std::size_t lt = item.find('<');
        if (lt == std::string_view::npos)
            throw ParseError("cover pair must look like i<j");
        int a = detail::parse_positive(item.substr(0, lt), "cover element");
        int b = detail::parse_positive(item.substr(lt + 1), "cover element");
        if (a == b) throw ParseError("cover list contains a cycle");
        pairs.emplace_back(a, b);
        size = std::max({size, a, b});
    }
    if (pairs.empty()) throw ParseError("empty cover list");
    std::vector<std::uint64_t> above(static_cast<std::size_t>(size), 0);
    for (auto [a, b] : pairs) above[a - 1] |= std::uint64_t{1} << (b - 1);
    return detail::poset_from_above(size, std::move(above));
}

/// Textual constructor: one of `chain:k`, `wedge:r`, `vee:r`,
/// `levels:a1,...,as`, `custom:<cover pairs>`.
inline Poset make_poset(std::string_view spec) {
    std::size_t colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw ParseError("poset spec must look like kind:args");
    std::string_view kind = spec.substr(0, colon);
    std::string_view args = spec.substr(colon + 1);
    if (kind == "chain") return chain_poset(detail::parse_positive(args, "chain length"));
    if (kind == "wedge") return wedge_poset(detail::parse_positive(args, "arm count"));
    if (kind == "vee") return vee_poset(detail::parse_positive(args, "arm count"));
    if (kind == "levels") {
        std::vector<int> sizes;
        std::size_t pos = 0;
        while (pos <= args.size()) {
            std::size_t comma = args.find(',', pos);
            std::string_view item = args.substr(
                pos, comma == std::string_view::npos ? args.size() - pos : comma - pos);
            pos = comma == std::string_view::npos ? args.size() + 1 : comma + 1;
            sizes.push_back(detail::parse_positive(item, "level size"));
        }
        return levels_poset(sizes);
    }
    if (kind == "custom") return custom_poset(args);
    throw ParseError("unknown poset kind '" + std::string(kind) + "'");
}

/// Maximum cardinality of a totally ordered subset.
inline int height(const Poset& p) {
    std::vector<int> h(static_cast<std::size_t>(p.size), 0);
    int best = 0;
    // process elements in nondecreasing number of predecessors: any element's
    // strict lower set is fully processed before it under this order
    std::vector<int> order(static_cast<std::size_t>(p.size));
    for (int i = 0; i < p.size; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::popcount(p.below[a]) < std::popcount(p.below[b]);
    });
    for (int i : order) {
        int m = 0;
        for (std::uint64_t mask = p.below[i]; mask;) {
            int j = std::countr_zero(mask);
            mask &= mask - 1;
            m = std::max(m, h[j]);
        }
        h[i] = m + 1;
        best = std::max(best, h[i]);
    }
    return best;
}

/// Chain classification: the size when the pattern is a total order.
inline std::optional<int> as_chain(const Poset& p) {
    for (int i = 0; i < p.size; ++i)
        for (int j = i + 1; j < p.size; ++j)
            if (!p.comparable(i, j)) return std::nullopt;
    return p.size;
}

struct FanShape {
    int arms;
    FanDirection direction;  // Down: apex above the arms (∧), Up: apex below (∨)
};

/// Fan classification: ∧_s / ∨_s patterns, used for degree-based fast paths.
inline std::optional<FanShape> as_fan(const Poset& p) {
    if (p.size < 2) return std::nullopt;
    std::uint64_t all = p.size == 64 ? ~std::uint64_t{0}
                                     : (std::uint64_t{1} << p.size) - 1;
    for (int apex = 0; apex < p.size; ++apex) {
        std::uint64_t others = all & ~(std::uint64_t{1} << apex);
        if (p.below[apex] == others && p.above[apex] == 0) {
            bool ok = true;
            for (int i = 0; i < p.size && ok; ++i)
                if (i != apex)
                    ok = p.above[i] == (std::uint64_t{1} << apex) && p.below[i] == 0;
            if (ok) return FanShape{p.size - 1, FanDirection::Down};
        }
        if (p.above[apex] == others && p.below[apex] == 0) {
            bool ok = true;
            for (int i = 0; i < p.size && ok; ++i)
                if (i != apex)
                    ok = p.below[i] == (std::uint64_t{1} << apex) && p.above[i] == 0;
            if (ok) return FanShape{p.size - 1, FanDirection::Up};
        }
    }
    return std::nullopt;
}

}  // namespace subposet
