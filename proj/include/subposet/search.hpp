#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "subposet/copies.hpp"
#include "subposet/digraph.hpp"
#include "subposet/poset.hpp"

namespace subposet {

/// Maximize c(target, F) over forbidden-free families F ⊆ 2^[n].
struct SearchProblem {
    int n = 3;
    std::vector<Poset> forbidden;
    Poset target;
    std::uint64_t node_budget = 4'000'000'000ull;
    int workers = 1;
    std::optional<bool> symmetry_reduction;  // defaults to on for n >= 5
};

struct SearchResult {
    BigCount value = 0;
    Family witness;
    std::uint64_t nodes_explored = 0;
    bool exhausted = true;  // false when the node budget cut the search short
};

namespace detail {

// One classified constraint; generic patterns fall back to the copy engine.
struct ForbidKind {
    enum class Type { Chain, FanDown, FanUp, Generic } type;
    int limit = 0;  // max chain length / max out- or in-degree allowed
    const Poset* pattern = nullptr;
};

struct TargetKind {
    enum class Type { Chain, FanDown, FanUp, Generic } type;
    int k = 0;
    const Poset* pattern = nullptr;
};

class LaSearch {
  public:
    explicit LaSearch(const SearchProblem& prob) : prob_(prob) {
        if (prob.n < 1 || prob.n > 6)
            throw DomainError("exact search is capped at n <= 6");
        if (prob.target.size < 1) throw DomainError("target pattern is empty");
        symmetry_ = prob.symmetry_reduction.value_or(prob.n >= 5);
        universe_ = [&] {
            std::vector<SetWord> all;
            for (std::uint64_t b = 0; b < (std::uint64_t{1} << prob.n); ++b)
                all.push_back(SetWord{b});
            std::sort(all.begin(), all.end(), canonical_less);
            return all;
        }();
        const std::size_t N = universe_.size();
        usub_.assign(N, 0);
        usup_.assign(N, 0);
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                if (universe_[j].proper_subset_of(universe_[i]))
                    usub_[i] |= std::uint64_t{1} << j;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                if (usub_[j] >> i & 1u) usup_[i] |= std::uint64_t{1} << j;
        for (const Poset& p : prob.forbidden) {
            ForbidKind f;
            if (auto k = as_chain(p)) {
                f.type = ForbidKind::Type::Chain;
                f.limit = *k - 1;  // longest chain allowed
            } else if (auto fan = as_fan(p)) {
                f.type = fan->direction == FanDirection::Down
                             ? ForbidKind::Type::FanDown
                             : ForbidKind::Type::FanUp;
                f.limit = fan->arms - 1;  // degree bound
            } else {
                f.type = ForbidKind::Type::Generic;
                f.pattern = &p;
            }
            forbids_.push_back(f);
        }
        if (auto k = as_chain(prob.target)) {
            target_ = TargetKind{TargetKind::Type::Chain, *k, nullptr};
        } else if (auto fan = as_fan(prob.target)) {
            target_ = TargetKind{fan->direction == FanDirection::Down
                                     ? TargetKind::Type::FanDown
                                     : TargetKind::Type::FanUp,
                                 fan->arms, nullptr};
        } else {
            target_ = TargetKind{TargetKind::Type::Generic, 0, &prob.target};
        }
    }

    SearchResult run() {
        const std::size_t N = universe_.size();
        best_value_.store(-1);
        stop_.store(false);
        nodes_total_.store(0);
        // root tasks: index of the first included set, plus the empty family
        std::vector<std::size_t> roots;
        for (std::size_t i = 0; i < N; ++i)
            if (!symmetry_ || is_prefix_set(universe_[i])) roots.push_back(i);
        roots.push_back(N);  // the empty family
        next_root_.store(0);
        int workers = std::max(1, prob_.workers);
        std::vector<Local> locals(static_cast<std::size_t>(workers));
        if (workers == 1) {
            worker(roots, locals[0]);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < workers; ++t)
                pool.emplace_back([this, &roots, &locals, t] {
                    worker(roots, locals[static_cast<std::size_t>(t)]);
                });
            for (auto& th : pool) th.join();
        }
        // deterministic reduction: value descending, encoding ascending
        SearchResult out;
        out.nodes_explored = nodes_total_.load();
        out.exhausted = !stop_.load();
        bool have = false;
        for (const Local& lc : locals) {
            if (!lc.has_best) continue;
            if (!have || BigCount(lc.best_value) > out.value ||
                (BigCount(lc.best_value) == out.value &&
                 encoding_less(lc.best_family, out.witness))) {
                out.value = lc.best_value;
                out.witness = family_from(lc.best_family);
                have = true;
            }
        }
        if (!have) {
            out.value = 0;
            out.witness = Family{prob_.n, {}};
        }
        return out;
    }

  private:
    struct Local {
        bool has_best = false;
        long long best_value = -1;
        std::vector<std::uint8_t> best_family;
        // mutable search state
        std::vector<std::uint8_t> chosen;
        std::uint64_t chosen_mask = 0;
        std::vector<int> indeg, outdeg, downlen;
        std::vector<std::vector<long long>> chain_end;  // chains ending at u, by length
        long long value = 0;
        std::vector<long long> value_stack;
    };

    static bool is_prefix_set(SetWord w) {
        return (w.bits & (w.bits + 1)) == 0;  // 0, 1, 11, 111, ...
    }

    bool encoding_less(const std::vector<std::uint8_t>& a,
                       const Family& b_fam) const {
        std::vector<std::uint8_t> b;
        for (SetWord w : b_fam.sets) {
            auto it = std::lower_bound(universe_.begin(), universe_.end(), w,
                                       canonical_less);
            b.push_back(static_cast<std::uint8_t>(it - universe_.begin()));
        }
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }

    Family family_from(const std::vector<std::uint8_t>& idx) const {
        std::vector<SetWord> sets;
        for (auto i : idx) sets.push_back(universe_[i]);
        return make_family(prob_.n, std::move(sets));
    }

    void worker(const std::vector<std::size_t>& roots, Local& lc) {
        const std::size_t N = universe_.size();
        lc.indeg.assign(N, 0);
        lc.outdeg.assign(N, 0);
        lc.downlen.assign(N, 0);
        if (target_.type == TargetKind::Type::Chain)
            lc.chain_end.assign(N, std::vector<long long>(
                                       static_cast<std::size_t>(target_.k) + 1, 0));
        while (true) {
            std::size_t r = next_root_.fetch_add(1);
            if (r >= roots.size() || stop_.load(std::memory_order_relaxed)) break;
            std::size_t root = roots[r];
            if (root == N) {
                offer(lc, 0, {});  // the empty family
                continue;
            }
            if (!try_add(lc, root)) continue;
            dfs(lc, root + 1);
            remove_last(lc, root);
        }
    }

    void offer(Local& lc, long long value, const std::vector<std::uint8_t>& fam) {
        if (value > lc.best_value ||
            (value == lc.best_value &&
             std::lexicographical_compare(fam.begin(), fam.end(),
                                          lc.best_family.begin(),
                                          lc.best_family.end()))) {
            lc.best_value = value;
            lc.best_family = fam;
            lc.has_best = true;
            long long cur = best_value_.load(std::memory_order_relaxed);
            while (cur < value &&
                   !best_value_.compare_exchange_weak(cur, value)) {
            }
        }
    }

    void dfs(Local& lc, std::size_t pos) {
        if (stop_.load(std::memory_order_relaxed)) return;
        std::uint64_t n = nodes_total_.fetch_add(1, std::memory_order_relaxed);
        if (n >= prob_.node_budget) {
            stop_.store(true);
            return;
        }
        const std::size_t N = universe_.size();
        if (pos == N) {
            offer(lc, lc.value, lc.chosen);
            return;
        }
        // admissible bound: copies of the target in chosen ∪ all remaining
        // candidates; copy counts are monotone, so no completion can beat it
        long long ub = upper_bound(lc, pos);
        if (ub < best_value_.load(std::memory_order_relaxed)) return;
        if (try_add(lc, pos)) {
            dfs(lc, pos + 1);
            remove_last(lc, pos);
        }
        dfs(lc, pos + 1);
    }

    long long upper_bound(Local& lc, std::size_t pos) {
        const std::size_t N = universe_.size();
        std::uint64_t gmask = lc.chosen_mask;
        for (std::size_t i = pos; i < N; ++i) gmask |= std::uint64_t{1} << i;
        switch (target_.type) {
            case TargetKind::Type::Chain: {
                const int k = target_.k;
                if (k == 1) return std::popcount(gmask);
                std::vector<long long> ending(N, 1), next(N, 0);
                long long total = 0;
                for (int t = 2; t <= k; ++t) {
                    for (std::size_t v = 0; v < N; ++v) {
                        long long acc = 0;
                        if (gmask >> v & 1u) {
                            std::uint64_t m = usub_[v] & gmask;
                            while (m) {
                                int u = std::countr_zero(m);
                                m &= m - 1;
                                acc += ending[static_cast<std::size_t>(u)];
                            }
                        }
                        next[v] = acc;
                    }
                    ending.swap(next);
                }
                for (std::size_t v = 0; v < N; ++v)
                    if (gmask >> v & 1u) total += ending[v];
                return total;
            }
            case TargetKind::Type::FanDown:
            case TargetKind::Type::FanUp: {
                long long total = 0;
                for (std::size_t v = 0; v < N; ++v) {
                    if (!(gmask >> v & 1u)) continue;
                    std::uint64_t rel = target_.type == TargetKind::Type::FanDown
                                            ? usub_[v]
                                            : usup_[v];
                    int d = std::popcount(rel & gmask);
                    total += binomial(d, target_.k).convert_to<long long>();
                }
                return total;
            }
            case TargetKind::Type::Generic: {
                Family g = family_from_mask(gmask);
                CopyOptions opts;
                return count_copies(*target_.pattern, g, opts)
                    .convert_to<long long>();
            }
        }
        return 0;
    }

    Family family_from_mask(std::uint64_t mask) const {
        std::vector<SetWord> sets;
        for (std::size_t i = 0; i < universe_.size(); ++i)
            if (mask >> i & 1u) sets.push_back(universe_[i]);
        return make_family(prob_.n, std::move(sets));
    }

    // Adds the candidate at universe index c if every forbidden pattern stays
    // absent; updates the degree, chain and value trackers. Candidates arrive
    // in canonical order, so a new set is never below an existing one.
    bool try_add(Local& lc, std::size_t c) {
        std::uint64_t subs = usub_[c] & lc.chosen_mask;
        int down = 0;
        for (std::uint64_t m = subs; m;) {
            int u = std::countr_zero(m);
            m &= m - 1;
            down = std::max(down, lc.downlen[static_cast<std::size_t>(u)]);
        }
        down += 1;
        for (const ForbidKind& f : forbids_) {
            switch (f.type) {
                case ForbidKind::Type::Chain:
                    if (down > f.limit) return false;
                    break;
                case ForbidKind::Type::FanDown:
                    if (std::popcount(subs) > f.limit) return false;
                    break;
                case ForbidKind::Type::FanUp:
                    for (std::uint64_t m = subs; m;) {
                        int u = std::countr_zero(m);
                        m &= m - 1;
                        if (lc.indeg[static_cast<std::size_t>(u)] + 1 > f.limit)
                            return false;
                    }
                    break;
                case ForbidKind::Type::Generic:
                    break;  // handled below, it needs the family built
            }
        }
        for (const ForbidKind& f : forbids_) {
            if (f.type != ForbidKind::Type::Generic) continue;
            Family g = family_from_mask(lc.chosen_mask | (std::uint64_t{1} << c));
            std::size_t member = g.index_of(universe_[c]);
            if (contains_copy_including(*f.pattern, g, member)) return false;
        }
        // committed: update trackers and the running target count
        long long delta = 0;
        switch (target_.type) {
            case TargetKind::Type::Chain: {
                const int k = target_.k;
                auto& ce = lc.chain_end[c];
                ce[1] = 1;
                for (int t = 2; t <= k; ++t) {
                    long long acc = 0;
                    for (std::uint64_t m = subs; m;) {
                        int u = std::countr_zero(m);
                        m &= m - 1;
                        acc += lc.chain_end[static_cast<std::size_t>(u)]
                                            [static_cast<std::size_t>(t - 1)];
                    }
                    ce[static_cast<std::size_t>(t)] = acc;
                }
                delta = ce[static_cast<std::size_t>(k)];
                break;
            }
            case TargetKind::Type::FanDown: {
                delta = binomial(std::popcount(subs), target_.k)
                            .convert_to<long long>();
                break;
            }
            case TargetKind::Type::FanUp: {
                // each subset gains one superset; C(d+1,k) - C(d,k) = C(d,k-1)
                for (std::uint64_t m = subs; m;) {
                    int u = std::countr_zero(m);
                    m &= m - 1;
                    delta += binomial(lc.indeg[static_cast<std::size_t>(u)],
                                      target_.k - 1)
                                 .convert_to<long long>();
                }
                break;
            }
            case TargetKind::Type::Generic: {
                Family g = family_from_mask(lc.chosen_mask | (std::uint64_t{1} << c));
                std::size_t member = g.index_of(universe_[c]);
                delta = count_copies_including(*target_.pattern, g, member)
                            .convert_to<long long>();
                break;
            }
        }
        lc.downlen[c] = down;
        lc.outdeg[c] = std::popcount(subs);
        for (std::uint64_t m = subs; m;) {
            int u = std::countr_zero(m);
            m &= m - 1;
            lc.indeg[static_cast<std::size_t>(u)] += 1;
        }
        lc.chosen.push_back(static_cast<std::uint8_t>(c));
        lc.chosen_mask |= std::uint64_t{1} << c;
        lc.value += delta;
        lc.value_stack.push_back(delta);
        return true;
    }

    void remove_last(Local& lc, std::size_t c) {
        lc.value -= lc.value_stack.back();
        lc.value_stack.pop_back();
        lc.chosen.pop_back();
        lc.chosen_mask &= ~(std::uint64_t{1} << c);
        std::uint64_t subs = usub_[c] & lc.chosen_mask;
        for (std::uint64_t m = subs; m;) {
            int u = std::countr_zero(m);
            m &= m - 1;
            lc.indeg[static_cast<std::size_t>(u)] -= 1;
        }
        lc.outdeg[c] = 0;
        lc.downlen[c] = 0;
        if (target_.type == TargetKind::Type::Chain)
            std::fill(lc.chain_end[c].begin(), lc.chain_end[c].end(), 0);
    }

    SearchProblem prob_;
    bool symmetry_ = false;
    std::vector<SetWord> universe_;
    std::vector<std::uint64_t> usub_, usup_;
    std::vector<ForbidKind> forbids_;
    TargetKind target_;
    std::atomic<long long> best_value_{-1};
    std::atomic<std::uint64_t> nodes_total_{0};
    std::atomic<std::size_t> next_root_{0};
    std::atomic<bool> stop_{false};
};

}  // namespace detail

/// Exact La(n, forbidden, target) with an attaining witness. Deterministic
/// value and witness for any worker count: workers only share a monotone best
/// value, pruning is strict, and the final reduction orders candidates by
/// (value desc, canonical encoding asc).
inline SearchResult la_exact(const SearchProblem& prob) {
    detail::LaSearch search(prob);
    return search.run();
}

}  // namespace subposet
