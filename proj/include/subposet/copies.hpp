#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "subposet/digraph.hpp"
#include "subposet/poset.hpp"

namespace subposet {

struct CopyOptions {
    std::uint64_t node_budget = 100'000'000;
    bool force_generic = false;  // bypass closed-form fast paths (used by tests)
};

namespace detail {

// Pairwise proper-containment relation as bitset rows over family indices.
struct ContainmentRows {
    std::size_t m = 0;
    std::size_t words = 0;
    std::vector<std::uint64_t> sub;  // row i: mask of j with sets[j] ⊊ sets[i]
    std::vector<std::uint64_t> sup;  // row i: mask of j with sets[i] ⊊ sets[j]

    const std::uint64_t* sub_row(std::size_t i) const { return sub.data() + i * words; }
    const std::uint64_t* sup_row(std::size_t i) const { return sup.data() + i * words; }
};

inline ContainmentRows build_rows(const Family& fam) {
    ContainmentRows r;
    r.m = fam.size();
    r.words = (r.m + 63) / 64;
    r.sub.assign(r.m * r.words, 0);
    r.sup.assign(r.m * r.words, 0);
    for (std::size_t i = 0; i < r.m; ++i) {
        for (std::size_t j = i + 1; j < r.m; ++j) {
            if (fam.sets[i].proper_subset_of(fam.sets[j])) {
                r.sub[j * r.words + i / 64] |= std::uint64_t{1} << (i % 64);
                r.sup[i * r.words + j / 64] |= std::uint64_t{1} << (j % 64);
            }
        }
    }
    return r;
}

// Static search order: most-connected pattern element first, then greedily
// the element with the most already-placed comparable neighbours. Elements
// that are interchangeable by a pattern automorphism (equal relation rows,
// mutually incomparable) get an increasing-image constraint so that each
// image subfamily is generated close to once.
struct PatternPlan {
    std::vector<int> order;
    std::vector<int> class_pred;  // order position of previous class member, or -1
};

inline PatternPlan plan_pattern(const Poset& p) {
    const int s = p.size;
    std::vector<int> done;
    std::vector<bool> placed(static_cast<std::size_t>(s), false);
    auto degree = [&](int i) {
        return std::popcount(p.above[i] | p.below[i]);
    };
    PatternPlan plan;
    for (int step = 0; step < s; ++step) {
        int best = -1, best_placed_nbrs = -1, best_degree = -1;
        for (int i = 0; i < s; ++i) {
            if (placed[i]) continue;
            int pn = 0;
            for (int q : done)
                if (p.comparable(i, q)) ++pn;
            int d = degree(i);
            if (pn > best_placed_nbrs ||
                (pn == best_placed_nbrs && (d > best_degree ||
                                            (d == best_degree && i < best)))) {
                best = i;
                best_placed_nbrs = pn;
                best_degree = d;
            }
        }
        placed[static_cast<std::size_t>(best)] = true;
        done.push_back(best);
    }
    plan.order = done;
    plan.class_pred.assign(static_cast<std::size_t>(s), -1);
    auto interchangeable = [&](int a, int b) {
        if (p.comparable(a, b)) return false;
        std::uint64_t ab = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
        return (p.above[a] & ~ab) == (p.above[b] & ~ab) &&
               (p.below[a] & ~ab) == (p.below[b] & ~ab);
    };
    for (int t = 0; t < s; ++t)
        for (int u = t - 1; u >= 0; --u)
            if (interchangeable(plan.order[t], plan.order[u])) {
                plan.class_pred[t] = u;
                break;
            }
    return plan;
}

struct ImageKey {
    std::uint64_t hi = 0, lo = 0;
    friend bool operator==(ImageKey, ImageKey) = default;
};

struct ImageKeyHash {
    std::size_t operator()(ImageKey k) const {
        std::uint64_t x = k.hi * 0x9e3779b97f4a7c15ull ^ k.lo;
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdull;
        x ^= x >> 33;
        return static_cast<std::size_t>(x);
    }
};

// Backtracking over plan.order; counts distinct image subfamilies (dedup by
// image, not by embedding). With exists=true stops at the first full
// embedding. forced (family index, or -1) requires the image to contain a
// given member.
class CopySearch {
  public:
    CopySearch(const Poset& p, const Family& fam, const CopyOptions& opts,
               std::ptrdiff_t forced)
        : p_(p), rows_(build_rows(fam)), plan_(plan_pattern(p)), opts_(opts),
          forced_(forced) {
        img_.assign(static_cast<std::size_t>(p.size), 0);
        used_.assign(rows_.words, 0);
        cand_buf_.assign(static_cast<std::size_t>(p.size) * rows_.words, 0);
    }

    BigCount count() {
        if (static_cast<std::size_t>(p_.size) > rows_.m) return 0;
        exists_mode_ = false;
        recurse(0);
        return BigCount(images_.size());
    }

    bool exists() {
        if (static_cast<std::size_t>(p_.size) > rows_.m) return false;
        exists_mode_ = true;
        found_ = false;
        recurse(0);
        return found_;
    }

    std::uint64_t nodes() const { return nodes_; }

  private:
    void recurse(int t) {
        if (found_) return;
        if (t == p_.size) {
            if (forced_ >= 0 && !forced_placed_) return;
            if (exists_mode_) {
                found_ = true;
                return;
            }
            ImageKey key;
            std::uint64_t sorted[8];
            int s = p_.size;
            for (int i = 0; i < s; ++i) sorted[i] = img_[static_cast<std::size_t>(i)];
            std::sort(sorted, sorted + s);
            for (int i = 0; i < s; ++i) {
                if (i < 4)
                    key.lo |= sorted[i] << (16 * i);
                else
                    key.hi |= sorted[i] << (16 * (i - 4));
            }
            images_.insert(key);
            return;
        }
        const int pe = plan_.order[static_cast<std::size_t>(t)];
        std::uint64_t* cand = cand_buf_.data() + static_cast<std::size_t>(t) * rows_.words;
        bool any_constraint = false;
        for (int u = 0; u < t; ++u) {
            const int qe = plan_.order[static_cast<std::size_t>(u)];
            const std::uint64_t* row = nullptr;
            if (p_.less(qe, pe))
                row = rows_.sup_row(img_[static_cast<std::size_t>(u)]);
            else if (p_.less(pe, qe))
                row = rows_.sub_row(img_[static_cast<std::size_t>(u)]);
            else
                continue;
            if (!any_constraint) {
                for (std::size_t w = 0; w < rows_.words; ++w) cand[w] = row[w];
                any_constraint = true;
            } else {
                for (std::size_t w = 0; w < rows_.words; ++w) cand[w] &= row[w];
            }
        }
        if (!any_constraint)
            for (std::size_t w = 0; w < rows_.words; ++w) cand[w] = ~std::uint64_t{0};
        for (std::size_t w = 0; w < rows_.words; ++w) cand[w] &= ~used_[w];
        if (rows_.m % 64)
            cand[rows_.words - 1] &= (std::uint64_t{1} << (rows_.m % 64)) - 1;
        // interchangeable elements are assigned strictly increasing images
        if (int pred = plan_.class_pred[static_cast<std::size_t>(t)]; pred >= 0) {
            std::uint64_t lowest = img_[static_cast<std::size_t>(pred)];
            std::size_t w0 = static_cast<std::size_t>(lowest / 64);
            for (std::size_t w = 0; w < w0; ++w) cand[w] = 0;
            cand[w0] &= ~((std::uint64_t{2} << (lowest % 64)) - 1);
        }
        // a forced member still missing must take the last free slot
        if (forced_ >= 0 && !forced_placed_ && t == p_.size - 1) {
            std::uint64_t keep = cand[static_cast<std::size_t>(forced_) / 64] >>
                                 (static_cast<std::size_t>(forced_) % 64) & 1u;
            for (std::size_t w = 0; w < rows_.words; ++w) cand[w] = 0;
            if (keep)
                cand[static_cast<std::size_t>(forced_) / 64] =
                    std::uint64_t{1} << (static_cast<std::size_t>(forced_) % 64);
        }
        for (std::size_t w = 0; w < rows_.words && !found_; ++w) {
            std::uint64_t m = cand[w];
            while (m) {
                std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(m));
                m &= m - 1;
                if (++nodes_ > opts_.node_budget)
                    throw BudgetError("copy search exceeded its node budget", nodes_);
                img_[static_cast<std::size_t>(t)] = c;
                used_[c / 64] |= std::uint64_t{1} << (c % 64);
                bool was_forced = forced_placed_;
                if (static_cast<std::ptrdiff_t>(c) == forced_) forced_placed_ = true;
                recurse(t + 1);
                forced_placed_ = was_forced;
                used_[c / 64] &= ~(std::uint64_t{1} << (c % 64));
                if (found_) return;
            }
        }
    }

    const Poset& p_;
    ContainmentRows rows_;
    PatternPlan plan_;
    CopyOptions opts_;
    std::ptrdiff_t forced_;
    std::vector<std::uint64_t> img_;   // order position -> family index
    std::vector<std::uint64_t> used_;
    std::vector<std::uint64_t> cand_buf_;
    std::unordered_set<ImageKey, ImageKeyHash> images_;
    std::uint64_t nodes_ = 0;
    bool exists_mode_ = false;
    bool found_ = false;
    bool forced_placed_ = false;
};

inline void check_generic_limits(const Poset& p, const Family& fam) {
    if (p.size < 1) throw DomainError("pattern must have at least one element");
    if (p.size > 8)
        throw DomainError("generic copy counting is capped at 8 pattern elements");
    if (fam.size() >= 65536)
        throw DomainError("generic copy counting is capped at 65535 family members");
}

}  // namespace detail

/// Number of |P|-element subfamilies admitting an order-preserving bijection
/// from the pattern (weak copies; each subfamily counted once no matter how
/// many bijections exist). Chains and fans use the closed forms; everything
/// else goes through the backtracking engine.
inline BigCount count_copies(const Poset& p, const Family& fam,
                             const CopyOptions& opts = {}) {
    if (p.size < 1) throw DomainError("pattern must have at least one element");
    if (!opts.force_generic) {
        if (auto k = as_chain(p)) return count_k_chains(fam, *k);
        if (auto f = as_fan(p))
            return count_fan_copies(build_digraph(fam), f->arms, f->direction);
    }
    detail::check_generic_limits(p, fam);
    detail::CopySearch search(p, fam, opts, -1);
    return search.count();
}

/// True iff the family contains at least one weak copy of the pattern.
inline bool contains_copy(const Poset& p, const Family& fam,
                          const CopyOptions& opts = {}) {
    if (p.size < 1) throw DomainError("pattern must have at least one element");
    if (!opts.force_generic) {
        if (auto k = as_chain(p)) return longest_chain(fam) >= *k;
        if (auto f = as_fan(p)) {
            ComparabilityDigraph g = build_digraph(fam);
            const auto& deg =
                f->direction == FanDirection::Down ? g.outdeg : g.indeg;
            for (auto d : deg)
                if (static_cast<int>(d) >= f->arms) return true;
            return false;
        }
    }
    detail::check_generic_limits(p, fam);
    detail::CopySearch search(p, fam, opts, -1);
    return search.exists();
}

/// Copies whose image contains a designated member (generic engine only).
inline BigCount count_copies_including(const Poset& p, const Family& fam,
                                       std::size_t member,
                                       const CopyOptions& opts = {}) {
    detail::check_generic_limits(p, fam);
    detail::CopySearch search(p, fam, opts, static_cast<std::ptrdiff_t>(member));
    return search.count();
}

inline bool contains_copy_including(const Poset& p, const Family& fam,
                                    std::size_t member,
                                    const CopyOptions& opts = {}) {
    detail::check_generic_limits(p, fam);
    detail::CopySearch search(p, fam, opts, static_cast<std::ptrdiff_t>(member));
    return search.exists();
}

/// True iff count_copies(P, fam) = 0 for every forbidden pattern, with the
/// degree and longest-chain fast paths applied where the pattern allows.
inline bool is_free(const Family& fam, const std::vector<Poset>& forbidden,
                    const CopyOptions& opts = {}) {
    for (const Poset& p : forbidden)
        if (contains_copy(p, fam, opts)) return false;
    return true;
}

}  // namespace subposet
