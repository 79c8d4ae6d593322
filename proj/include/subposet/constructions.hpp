#pragma once

#include <cstdint>
#include <vector>

#include "subposet/bignum.hpp"
#include "subposet/digraph.hpp"
#include "subposet/family.hpp"
#include "subposet/formulas.hpp"

namespace subposet {

namespace detail {

/// Calls fn for every p-element subset of [n], ascending numeric value.
template <typename Fn>
inline void for_each_level_set(int n, int p, Fn&& fn) {
    if (p < 0 || p > n) return;
    if (p == 0) {
        fn(SetWord{});
        return;
    }
    std::uint64_t limit = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    if (p == n) {
        fn(SetWord{limit});
        return;
    }
    std::uint64_t v = (std::uint64_t{1} << p) - 1;
    while (true) {
        fn(SetWord{v});
        std::uint64_t t = v | (v - 1);  // Gosper's hack
        std::uint64_t next =
            (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
        if (next > limit) break;
        v = next;
    }
}

}  // namespace detail

/// Parameters of the block construction F_{n,k,l}: the ground set is split
/// into consecutive blocks of size k+l-3, the last partial block carries no
/// constraint.
struct KnlParams {
    int n = 0;
    int k = 0;
    int l = 0;

    int block_size() const { return k + l - 3; }          // w
    int block_count() const { return n / block_size(); }  // m

    void validate() const {
        if (k < 2 || l < 2) throw DomainError("k and l must be at least 2");
        if (n < block_size() || n > 64)
            throw DomainError("n must satisfy k+l-3 <= n <= 64");
    }
    std::uint64_t block_mask(int j) const {  // 1-based block index
        int w = block_size();
        std::uint64_t m = (w == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1;
        return m << ((j - 1) * w);
    }
    /// Block index of a member: the first block whose intersection size is
    /// k-1 (upper level) or k-2 (lower level); 0 if none.
    int member_block(SetWord f) const {
        for (int j = 1; j <= block_count(); ++j) {
            int c = std::popcount(f.bits & block_mask(j));
            if (c == k - 2 || c == k - 1) return j;
        }
        return 0;
    }
};

struct KnlConstruction {
    Family family;
    Family upper;  // the ⌊n/2⌋+1 level, |F ∩ A_j| = k-1 at the member block
    Family lower;  // the ⌊n/2⌋ level, |F ∩ A_j| = k-2 at the member block
};

namespace detail {

/// Members of one level: sets of the given size whose first block with an
/// intersection in {k-2, k-1} hits block_hit there. The distribution of the
/// prefix-intersection size is a product of per-block polynomials.
inline BigCount knl_level_size_dp(const KnlParams& p, int block_hit,
                                  int member_size) {
    const int w = p.block_size(), m = p.block_count();
    BigCount total = 0;
    for (int j = 1; j <= m; ++j) {
        // coeff[s] = number of H ⊆ A_1..A_j with |H ∩ A_j| = block_hit and
        // every earlier block intersection outside {k-2, k-1}, |H| = s
        std::vector<BigCount> coeff(1, 1);
        for (int i = 1; i < j; ++i) {
            std::vector<BigCount> next(coeff.size() + static_cast<std::size_t>(w), 0);
            for (int t = 0; t <= w; ++t) {
                if (t == p.k - 2 || t == p.k - 1) continue;
                BigCount ways = binomial(w, t);
                for (std::size_t s = 0; s < coeff.size(); ++s)
                    next[s + static_cast<std::size_t>(t)] += coeff[s] * ways;
            }
            coeff = std::move(next);
        }
        BigCount pick = binomial(w, block_hit);
        for (std::size_t s = 0; s < coeff.size(); ++s) {
            long long rest = member_size - static_cast<long long>(s) - block_hit;
            total += coeff[s] * pick * binomial(p.n - j * w, rest);
        }
    }
    return total;
}

}  // namespace detail

/// Exact size of the upper level, computed by a generating-function DP over
/// blocks (per-block admissible intersection sizes), never materializing.
inline BigCount knl_plus_size_exact(const KnlParams& p) {
    p.validate();
    return detail::knl_level_size_dp(p, p.k - 1, p.n / 2 + 1);
}

/// Materializes F_{n,k,l} = ∪_j F+_{n,k,l,j} ∪ ∪_j F-_{n,k,l,j}. Every member
/// has size ⌊n/2⌋ or ⌊n/2⌋+1; the cap guards the output size and is checked
/// against the exact DP counts before any enumeration.
inline KnlConstruction knl_construction_parts(const KnlParams& p,
                                              std::uint64_t cap = 10'000'000) {
    p.validate();
    const int half = p.n / 2;
    {
        // predict |F+| + |F-| with the block DP before enumerating anything
        BigCount predicted = detail::knl_level_size_dp(p, p.k - 1, half + 1) +
                             detail::knl_level_size_dp(p, p.k - 2, half);
        if (predicted > cap)
            throw CapError("construction would exceed the materialization cap");
    }

    KnlConstruction out;
    std::vector<SetWord> upper, lower;
    auto classify = [&](SetWord f, int want, std::vector<SetWord>& dst) {
        for (int j = 1; j <= p.block_count(); ++j) {
            int c = std::popcount(f.bits & p.block_mask(j));
            if (c == p.k - 2 || c == p.k - 1) {
                if (c == want) dst.push_back(f);
                return;
            }
        }
    };
    detail::for_each_level_set(p.n, half + 1,
                               [&](SetWord f) { classify(f, p.k - 1, upper); });
    detail::for_each_level_set(p.n, half,
                               [&](SetWord f) { classify(f, p.k - 2, lower); });
    out.upper = make_family(p.n, upper);
    out.lower = make_family(p.n, lower);
    std::vector<SetWord> all = upper;
    all.insert(all.end(), lower.begin(), lower.end());
    out.family = make_family(p.n, std::move(all));
    return out;
}

inline Family knl_construction(const KnlParams& p, std::uint64_t cap = 10'000'000) {
    return knl_construction_parts(p, cap).family;
}

/// The Katona–Tarján family: the middle level of 2^[n-1] together with each
/// of its members extended by the element n. All comparability components
/// have exactly two vertices.
inline Family katona_tarjan_family(int n) {
    if (n < 2 || n > 64) throw DomainError("n must be in 2..64");
    std::vector<SetWord> sets;
    detail::for_each_level_set(n - 1, (n - 1) / 2, [&](SetWord f) {
        sets.push_back(f);
        sets.push_back(SetWord{f.bits | (std::uint64_t{1} << (n - 1))});
    });
    return make_family(n, std::move(sets));
}

/// Union of the named full levels of 2^[n].
inline Family level_family(int n, const std::vector<int>& sizes) {
    if (n < 1 || n > 64) throw DomainError("n must be in 1..64");
    if (sizes.empty()) throw DomainError("at least one level required");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 0 || sizes[i] > n)
            throw DomainError("level sizes must lie in 0..n");
        if (i > 0 && sizes[i] <= sizes[i - 1])
            throw DomainError("level sizes must be strictly increasing");
    }
    std::vector<SetWord> sets;
    for (int s : sizes)
        detail::for_each_level_set(n, s, [&](SetWord f) { sets.push_back(f); });
    return make_family(n, std::move(sets));
}

/// The k-1 level sizes whose k gaps differ by at most one, maximizing the
/// number of full chains through the levels; ties go to the lexicographically
/// smallest ascending size list.
inline std::vector<int> balanced_levels(int n, int k) {
    if (k < 2 || k - 1 > n + 1)
        throw DomainError("need 1 <= k-1 <= n+1");
    std::vector<int> pick(static_cast<std::size_t>(k - 1));
    std::vector<int> best_levels;
    BigCount best_value = -1;
    auto consider = [&]() {
        // gaps: pick[0], pick[1]-pick[0], ..., n-pick[k-2]
        int gmin = pick[0], gmax = pick[0];
        for (std::size_t i = 1; i < pick.size(); ++i) {
            int g = pick[i] - pick[i - 1];
            gmin = std::min(gmin, g);
            gmax = std::max(gmax, g);
        }
        gmin = std::min(gmin, n - pick.back());
        gmax = std::max(gmax, n - pick.back());
        if (gmax - gmin > 1) return;
        std::vector<int> desc(pick.rbegin(), pick.rend());
        BigCount v = chain_count_levels(n, desc);
        if (v > best_value || (v == best_value && pick < best_levels)) {
            best_value = v;
            best_levels = pick;
        }
    };
    // enumerate ascending (k-1)-subsets of 0..n
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = static_cast<int>(i);
    while (true) {
        consider();
        int i = static_cast<int>(pick.size()) - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] ==
                             n - (static_cast<int>(pick.size()) - 1 - i))
            --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < pick.size(); ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return best_levels;
}

struct DanialtConstruction {
    Family family;
    Family base;                  // the l-1 balanced levels of 2^[n - (k-l+1)]
    std::vector<int> base_levels;
    int reduced_n = 0;
};

/// Balanced (l-1)-level family on a reduced ground set, plus k-l+1 nested
/// tail extensions of each member of the largest level, using the fresh tail
/// elements. Every full chain of the base extends through the whole tail, so
/// the k-chain count equals the (l-1)-chain count of the base, and K_{s,..,s}
/// stays excluded for s > k-l+1.
inline DanialtConstruction danialt_construction_parts(int n, int k, int l) {
    if (l < 2 || l > k) throw DomainError("need 2 <= l <= k");
    if (n <= k - l + 1 + l || n > 64)
        throw DomainError("need k-l+1+l < n <= 64");
    DanialtConstruction out;
    out.reduced_n = n - (k - l + 1);
    out.base_levels = balanced_levels(out.reduced_n, l);
    Family base_small = level_family(out.reduced_n, out.base_levels);
    std::vector<SetWord> sets = base_small.sets;
    out.base = make_family(n, sets);
    int attach = out.base_levels.back();
    std::uint64_t tail_bits = 0;
    for (int j = 1; j <= k - l + 1; ++j) {
        tail_bits |= std::uint64_t{1} << (out.reduced_n + j - 1);
        detail::for_each_level_set(out.reduced_n, attach, [&](SetWord g) {
            sets.push_back(SetWord{g.bits | tail_bits});
        });
    }
    out.family = make_family(n, std::move(sets));
    return out;
}

inline Family danialt_construction(int n, int k, int l) {
    return danialt_construction_parts(n, k, l).family;
}

struct CodeFamilyConstruction {
    Family family;
    Family code;  // the kept (⌊n/2⌋+i)-sets, pairwise symmetric difference >= 2i
};

/// The middle level plus a greedily built constant-weight code at level
/// ⌊n/2⌋+i: scan the level in canonical order and keep a set iff its
/// symmetric difference with every kept set is at least 2i. Any two code
/// members then meet in at most ⌊n/2⌋ elements, so the family is K_{2,2}-free.
inline CodeFamilyConstruction code_family_k22_parts(int n, int i) {
    if (i < 1) throw DomainError("i must be at least 1");
    if (n < 2 * i + 2 || n > 64) throw DomainError("need 2i+2 <= n <= 64");
    CodeFamilyConstruction out;
    std::vector<SetWord> kept;
    detail::for_each_level_set(n, n / 2 + i, [&](SetWord f) {
        for (SetWord g : kept)
            if (std::popcount(f.bits ^ g.bits) < 2 * i) return;
        kept.push_back(f);
    });
    out.code = make_family(n, kept);
    std::vector<SetWord> sets = kept;
    detail::for_each_level_set(n, n / 2, [&](SetWord f) { sets.push_back(f); });
    out.family = make_family(n, std::move(sets));
    return out;
}

inline Family code_family_k22(int n, int i) {
    return code_family_k22_parts(n, i).family;
}

}  // namespace subposet
