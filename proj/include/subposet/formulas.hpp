#pragma once

#include <vector>

#include "subposet/bignum.hpp"
#include "subposet/errors.hpp"

namespace subposet {

/// Number of k-chains F_k ⊊ ... ⊊ F_1 in 2^[n] with |F_i| = l_i for a
/// strictly decreasing size list l_1 > ... > l_k, i.e. the product of
/// binomials C(l_{i-1}, l_i) with l_0 = n.
inline BigCount chain_count_levels(int n, const std::vector<int>& sizes_desc) {
    if (n < 0 || n > 64) throw DomainError("n must be in 0..64");
    if (sizes_desc.empty()) throw DomainError("at least one size required");
    int prev = n;
    bool first = true;
    BigCount r = 1;
    for (int s : sizes_desc) {
        if (s < 0 || (first ? s > prev : s >= prev))
            throw DomainError("sizes must be strictly decreasing and at most n");
        r *= binomial(prev, s);
        prev = s;
        first = false;
    }
    return r;
}

/// Sum of the k largest binomial coefficients of order n:
/// Σ_{i=1..k} C(n, ⌊(n-k)/2⌋ + i).
inline BigCount erdos_bound(int n, int k) {
    if (k < 1 || k > n + 1) throw DomainError("need 1 <= k <= n+1");
    BigCount r = 0;
    long long base = floor_div(n - k, 2);
    for (int i = 1; i <= k; ++i) r += binomial(n, base + i);
    return r;
}

struct LaChainfree {
    BigCount value;
    std::vector<int> levels;  // ascending argmax, lexicographically smallest
};

/// Exact maximum of c(P_l, union of k-1 full levels) over all (k-1)-subsets
/// of levels of 2^[n]; the attaining family is P_k-free, and by the level
/// reduction this maximum is La(n, P_k, P_l).
inline LaChainfree la_chainfree(int n, int k, int l) {
    if (l < 1 || l >= k) throw DomainError("need 1 <= l < k");
    if (k - 1 > n + 1) throw DomainError("need k-1 <= n+1");
    std::vector<int> pick(static_cast<std::size_t>(k - 1));
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = static_cast<int>(i);
    LaChainfree best{-1, {}};
    auto value_of = [&]() {
        // l-chains in the level union: sum over descending l-subsets of the
        // picked levels of the binomial product
        BigCount total = 0;
        std::vector<std::size_t> idx(static_cast<std::size_t>(l));
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        while (true) {
            BigCount term = 1;
            int prev = n;
            for (std::size_t i = idx.size(); i-- > 0;) {
                int s = pick[idx[i]];
                term *= binomial(prev, s);
                prev = s;
            }
            total += term;
            std::size_t i = idx.size();
            while (i-- > 0) {
                if (idx[i] != pick.size() - (idx.size() - i)) {
                    ++idx[i];
                    for (std::size_t j = i + 1; j < idx.size(); ++j)
                        idx[j] = idx[j - 1] + 1;
                    break;
                }
                if (i == 0) return total;
            }
        }
    };
    while (true) {
        BigCount v = value_of();
        if (v > best.value || (v == best.value && pick < best.levels))
            best = LaChainfree{v, pick};
        int i = static_cast<int>(pick.size()) - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] ==
                             n - (static_cast<int>(pick.size()) - 1 - i))
            --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (std::size_t j = static_cast<std::size_t>(i) + 1; j < pick.size(); ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return best;
}

struct ConjectureConstant {
    Rational value;  // C(k-1, s) * (l-1) / (k+l-2)
    Rational p1;     // C(k+l-3, k-1) / 2^(k+l-3)
    Rational p2;     // (2^(k+l-3) - C(k+l-3,k-1) - C(k+l-3,k-2)) / 2^(k+l-3)
};

/// The conjectured extremal constant as an exact rational, together with the
/// block probabilities; the closed-form identity p1/(1-p2) = (l-1)/(k+l-2) is
/// recomputed and enforced on every call.
inline ConjectureConstant conjecture_constant(int k, int l, int s) {
    if (l < 2 || k < 2) throw DomainError("k and l must be at least 2");
    if (s < 1 || s > k - 1) throw DomainError("need 1 <= s <= k-1");
    int w = k + l - 3;
    BigCount denom = pow2(static_cast<unsigned>(w));
    ConjectureConstant out;
    out.p1 = Rational(binomial(w, k - 1), denom);
    out.p2 = Rational(denom - binomial(w, k - 1) - binomial(w, k - 2), denom);
    Rational target(l - 1, k + l - 2);
    if (out.p1 / (1 - out.p2) != target)
        throw DomainError("block probabilities violate the closed-form identity");
    out.value = Rational(binomial(k - 1, s)) * target;
    return out;
}

}  // namespace subposet
